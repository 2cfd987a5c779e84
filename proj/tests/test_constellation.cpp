#include <algorithm>
#include <cmath>
#include <deque>
#include <set>

#include <gtest/gtest.h>

#include "cld/constellation.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace cld;

namespace {

LayerSpec walker(int index, int planes, int sigma, double alt_km, double inc_deg = 0.0) {
  LayerSpec s;
  s.index = index;
  s.name = "W" + std::to_string(index);
  s.planes = planes;
  s.sats_per_plane = sigma;
  s.altitude_m = alt_km * 1e3;
  s.inclination_deg = inc_deg;
  return s;
}

Constellation single(int planes, int sigma) {
  return Constellation::assign_global_ids({build_walker(walker(1, planes, sigma, 1000))});
}

}  // namespace

TEST(Walker, PlaneMajorIndexing) {
  const auto c = single(6, 13);
  EXPECT_EQ(c.size(), 78);
  EXPECT_EQ(c.slot_of(1, 14), (WalkerSlot{1, 0}));
  EXPECT_EQ(c.slot_of(1, 13), (WalkerSlot{0, 12}));
  for (int i = 1; i <= 78; ++i) EXPECT_EQ(c.local_index_of(1, c.slot_of(1, i)), i);
}

TEST(Walker, EquatorialRingSpacing) {
  const auto layer = build_walker(walker(1, 1, 20, 8062));
  ASSERT_EQ(layer.elements.size(), 20u);
  for (std::size_t k = 0; k < 20; ++k) {
    const auto a = propagate(layer.elements[k], Epoch{}).v;
    const auto b = propagate(layer.elements[(k + 1) % 20], Epoch{}).v;
    const double angle = std::acos(a.dot(b) / (a.norm() * b.norm())) * kRadToDeg;
    EXPECT_NEAR(angle, 18.0, 1e-9);
    EXPECT_NEAR(a.z(), 0.0, 1e-6);
  }
}

TEST(Walker, RaanStep) {
  const auto layer = build_walker(walker(1, 18, 40, 1200, 87.9));
  ASSERT_EQ(layer.elements.size(), 720u);
  for (int p = 1; p < 18; ++p) {
    const double step = layer.elements[static_cast<std::size_t>(p * 40)].raan -
                        layer.elements[static_cast<std::size_t>((p - 1) * 40)].raan;
    EXPECT_NEAR(step * kRadToDeg, 20.0, 1e-9);
  }
}

TEST(Walker, HalfSpreadAndPhasing) {
  auto spec = walker(1, 6, 13, 1015, 99.5);
  spec.raan_spread_deg = 180.0;
  spec.phasing_offset_deg = 5.0;
  const auto layer = build_walker(spec);
  EXPECT_NEAR((layer.elements[13].raan - layer.elements[0].raan) * kRadToDeg, 30.0, 1e-9);
  EXPECT_NEAR((layer.elements[26].arg_latitude_at_epoch - layer.elements[0].arg_latitude_at_epoch) *
                  kRadToDeg,
              10.0, 1e-9);
}

TEST(Walker, RejectsEmptyShell) {
  EXPECT_THROW(build_walker(walker(1, 0, 13, 1000)), ConstellationError);
  EXPECT_THROW(build_walker(walker(1, 6, 0, 1000)), ConstellationError);
}

TEST(GlobalIds, DefaultScenarioRanges) {
  const auto& c = fixture::default_scenario().constellation;
  ASSERT_EQ(c.layer_count(), 4);
  EXPECT_EQ(c.size(), 821);
  const int first[] = {1, 79, 799, 819}, last[] = {78, 798, 818, 821};
  for (int u = 1; u <= 4; ++u) {
    EXPECT_EQ(c.layer(u).first_global_id, first[u - 1]);
    EXPECT_EQ(c.layer(u).last_global_id(), last[u - 1]);
  }
}

TEST(GlobalIds, LayerOfExamples) {
  const auto& c = fixture::default_scenario().constellation;
  EXPECT_EQ(c.layer_of(33), (SatelliteId{33, 1, 33}));
  EXPECT_EQ(c.layer_of(79), (SatelliteId{79, 2, 1}));
  EXPECT_EQ(c.layer_of(821), (SatelliteId{821, 4, 3}));
  EXPECT_THROW(c.layer_of(0), ConstellationError);
  EXPECT_THROW(c.layer_of(822), ConstellationError);
}

TEST(GlobalIds, Bijection) {
  const auto& c = fixture::default_scenario().constellation;
  std::set<std::pair<int, int>> seen;
  for (GlobalId g = 1; g <= c.size(); ++g) {
    const auto id = c.layer_of(g);
    EXPECT_EQ(c.global_id(id.layer, id.local_index), g);
    seen.emplace(id.layer, id.local_index);
  }
  EXPECT_EQ(seen.size(), 821u);
}

TEST(GlobalIds, SingleLayer) {
  const auto c = single(1, 5);
  EXPECT_EQ(c.size(), 5);
  EXPECT_EQ(c.layer(1).first_global_id, 1);
  EXPECT_EQ(c.layer(1).last_global_id(), 5);
}

TEST(GlobalIds, RejectsBadOrdering) {
  EXPECT_THROW(Constellation::assign_global_ids(
                   {build_walker(walker(1, 3, 3, 2000)), build_walker(walker(2, 3, 3, 1000))}),
               ConstellationError);
  EXPECT_THROW(Constellation::assign_global_ids(
                   {build_walker(walker(1, 3, 3, 1000)), build_walker(walker(1, 3, 3, 2000))}),
               ConstellationError);
}

TEST(Neighbors, Examples) {
  const auto c = single(6, 13);
  auto sorted = [](std::array<int, 4> a) {
    std::sort(a.begin(), a.end());
    return a;
  };
  EXPECT_EQ(sorted(c.intra_layer_neighbors(1, 1)), (std::array<int, 4>{2, 13, 14, 66}));
  EXPECT_EQ(sorted(c.intra_layer_neighbors(1, 13)), (std::array<int, 4>{1, 12, 26, 78}));
}

TEST(Neighbors, SymmetricAndDistinct) {
  const auto c = single(6, 13);
  for (int i = 1; i <= 78; ++i) {
    const auto n = c.intra_layer_neighbors(1, i);
    EXPECT_EQ(std::set<int>(n.begin(), n.end()).size(), 4u);
    for (int j : n) {
      const auto back = c.intra_layer_neighbors(1, j);
      EXPECT_NE(std::find(back.begin(), back.end(), i), back.end());
      EXPECT_TRUE(oracle::torus_adjacent(6, 13, i, j));
    }
  }
}

TEST(Neighbors, GraphIsTheTorus) {
  const auto c = single(4, 5);
  for (int src = 1; src <= 20; ++src) {
    std::vector<int> dist(21, -1);
    std::deque<int> q{src};
    dist[static_cast<std::size_t>(src)] = 0;
    while (!q.empty()) {
      const int v = q.front();
      q.pop_front();
      for (int w : c.intra_layer_neighbors(1, v)) {
        if (dist[static_cast<std::size_t>(w)] < 0) {
          dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
          q.push_back(w);
        }
      }
    }
    const auto expect = oracle::torus_bfs(4, 5, src - 1);
    for (int j = 1; j <= 20; ++j) {
      EXPECT_EQ(dist[static_cast<std::size_t>(j)], expect[static_cast<std::size_t>(j - 1)]);
    }
  }
}

TEST(Neighbors, DegenerateLayerRejected) {
  const auto c = single(2, 5);
  try {
    c.intra_layer_neighbors(1, 1);
    FAIL() << "expected an error";
  } catch (const ConstellationError& e) {
    EXPECT_NE(std::string(e.what()).find("2"), std::string::npos);
  }
}

TEST(TleLayer, DefaultScenarioShells) {
  const auto& c = fixture::default_scenario().constellation;
  EXPECT_EQ(c.layer(3).size(), 20);
  EXPECT_EQ(c.layer(4).size(), 3);
  EXPECT_NEAR(c.layer(3).spec.altitude_m, 8062e3, 1e3);
  EXPECT_NEAR(c.layer(4).spec.altitude_m, 42164e3 - kEarthRadius, 1e3);
}
