#include "support/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>

namespace oracle {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string hop_name(const cld::Hop& h) {
  return std::to_string(h.from) + "->" + std::to_string(h.to);
}

}  // namespace

std::vector<int> torus_bfs(int planes, int sigma, int src) {
  const int n = planes * sigma;
  std::vector<int> dist(static_cast<std::size_t>(n), -1);
  std::deque<int> queue{src};
  dist[static_cast<std::size_t>(src)] = 0;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    const int p = v / sigma, q = v % sigma;
    const int next[4] = {p * sigma + (q + 1) % sigma, p * sigma + (q + sigma - 1) % sigma,
                         ((p + 1) % planes) * sigma + q, ((p + planes - 1) % planes) * sigma + q};
    for (int w : next) {
      if (dist[static_cast<std::size_t>(w)] < 0) {
        dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

bool torus_adjacent(int planes, int sigma, int a, int b) {
  const int pa = (a - 1) / sigma, qa = (a - 1) % sigma;
  const int pb = (b - 1) / sigma, qb = (b - 1) % sigma;
  const int dp = std::abs(pa - pb), dq = std::abs(qa - qb);
  const bool ring_q = dq == 1 || dq == sigma - 1;
  const bool ring_p = dp == 1 || dp == planes - 1;
  return (pa == pb && ring_q) || (qa == qb && ring_p);
}

double elevation_deg(const Eigen::Vector3d& observer, const Eigen::Vector3d& target) {
  const Eigen::Vector3d los = target - observer;
  const double s = los.dot(observer) / (los.norm() * observer.norm());
  return std::asin(std::clamp(s, -1.0, 1.0)) * 180.0 / kPi;
}

double segment_origin_distance(const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
  const Eigen::Vector3d ab = b - a;
  const double t = std::clamp(-a.dot(ab) / ab.squaredNorm(), 0.0, 1.0);
  return (a + t * ab).norm();
}

bool same_side(const Eigen::Vector3d& sc, const Eigen::Vector3d& from,
               const Eigen::Vector3d& cand, const Eigen::Vector3d& dsn) {
  const Eigen::Vector3d x1 = cand - from, x2 = dsn - from, x3 = from - sc;
  return x3.cross(x1).dot(x3.cross(x2)) > 0.0;
}

double latency(const cld::Route& route, const cld::LinkConfig& link) {
  const double bits = 8.0 * link.frame_size_bytes;
  double total = 0.0;
  for (const auto& h : route.hops) {
    const double rate =
        h.link == cld::LinkClass::ground_space ? link.ground_space_rate : link.isl_rate;
    total += h.length_m / 299792458.0 + bits / rate + link.queuing_delay_s +
             link.processing_delay_s;
  }
  return total;
}

std::vector<std::string> validate_route(const cld::Route& route, const cld::StateAtT& state,
                                        const cld::Constellation& c, const cld::Scheme& scheme,
                                        const cld::RoutingParams& params) {
  std::vector<std::string> bad;
  const auto nodes = route.nodes();
  if (nodes.empty()) return {"empty node list"};
  if (nodes.front() != route.ssn) bad.push_back("does not start at SSN");
  if (nodes.back() != route.dsn) bad.push_back("does not end at DSN");
  if (std::set<cld::GlobalId>(nodes.begin(), nodes.end()).size() != nodes.size()) {
    bad.push_back("repeated node");
  }
  if (route.hops.size() != nodes.size()) bad.push_back("hop count != nodes - 1 + uplink");
  if (!bad.empty()) return bad;

  const auto& up = route.hops.front();
  const Eigen::Vector3d sc = state.sc_position.v;
  if (up.from != 0 || up.to != route.ssn || up.link != cld::LinkClass::ground_space) {
    bad.push_back("malformed uplink");
  }
  const int ssn_layer = c.layer_of(route.ssn).layer;
  if (std::find(scheme.access_layers.begin(), scheme.access_layers.end(), ssn_layer) ==
      scheme.access_layers.end()) {
    bad.push_back("uplink to a layer the scheme cannot access");
  }
  if (elevation_deg(sc, state.position(route.ssn).v) < params.sc_min_elevation_deg) {
    bad.push_back("SSN below the SC mask");
  }
  if (std::abs((state.position(route.ssn).v - sc).norm() - up.length_m) > 1e-9 * up.length_m) {
    bad.push_back("uplink length mismatch");
  }

  for (std::size_t k = 1; k < route.hops.size(); ++k) {
    const auto& h = route.hops[k];
    if (h.from != nodes[k - 1] || h.to != nodes[k]) bad.push_back("hop " + hop_name(h) + " out of order");
    if (h.link != cld::LinkClass::isl) bad.push_back("hop " + hop_name(h) + " not an ISL");
    const Eigen::Vector3d a = state.position(h.from).v, b = state.position(h.to).v;
    if (std::abs((b - a).norm() - h.length_m) > 1e-9 * h.length_m) {
      bad.push_back("hop " + hop_name(h) + " length mismatch");
    }
    const auto sa = c.layer_of(h.from), sb = c.layer_of(h.to);
    const auto& used = scheme.layers_used;
    if (std::find(used.begin(), used.end(), sb.layer) == used.end()) {
      bad.push_back("hop " + hop_name(h) + " enters an unused layer");
    }
    if (sa.layer == sb.layer) {
      const auto& spec = c.layer(sa.layer).spec;
      if (spec.kind == cld::LayerKind::walker) {
        if (!torus_adjacent(spec.planes, spec.sats_per_plane, sa.local_index, sb.local_index)) {
          bad.push_back("hop " + hop_name(h) + " not between grid neighbors");
        }
      } else if (scheme.kind != cld::SchemeKind::noncld_geo ||
                 segment_origin_distance(a, b) < cld::kEarthRadius) {
        bad.push_back("hop " + hop_name(h) + " is an unsupported same-layer link");
      }
    } else if (sa.layer < sb.layer) {
      bad.push_back("hop " + hop_name(h) + " climbs");
    } else if (elevation_deg(b, a) < params.omega0_deg) {
      bad.push_back("hop " + hop_name(h) + " violates the cross-layer elevation");
    }
  }
  return bad;
}

std::vector<std::string> check_same_sign(const cld::Route& route, const cld::StateAtT& state) {
  std::vector<std::string> bad;
  if (route.fallback || route.r2.size() < 2) return bad;
  const Eigen::Vector3d sc = state.sc_position.v;
  const Eigen::Vector3d dsn = state.position(route.dsn).v;
  for (std::size_t k = 1; k < route.r2.size(); ++k) {
    const Eigen::Vector3d from = state.position(route.r2[k - 1]).v;
    const Eigen::Vector3d cand = state.position(route.r2[k]).v;
    if (!same_side(sc, from, cand, dsn)) {
      bad.push_back("boundary " + std::to_string(route.r2[k - 1]) + "->" +
                    std::to_string(route.r2[k]) + " picks the far side");
    }
  }
  return bad;
}

}  // namespace oracle
