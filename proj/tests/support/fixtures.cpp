#include "support/fixtures.hpp"

#include <cmath>

namespace fixture {

std::filesystem::path source_dir() { return CLD_SOURCE_DIR; }

std::filesystem::path default_scenario_path() {
  return source_dir() / "scenarios" / "table1.toml";
}

const cld::Scenario& default_scenario() {
  static const cld::Scenario sc = cld::load_scenario(default_scenario_path());
  return sc;
}

Eigen::Vector3d sph(double r, double lat_deg, double lng_deg) {
  const double lat = lat_deg * cld::kDegToRad, lng = lng_deg * cld::kDegToRad;
  return r * Eigen::Vector3d(std::cos(lat) * std::cos(lng), std::cos(lat) * std::sin(lng),
                             std::sin(lat));
}

double radius(int layer) {
  constexpr double altitude_km[] = {1015.0, 1200.0, 8062.0, 35786.0};
  return cld::kEarthRadius + altitude_km[layer - 1] * 1e3;
}

void Geometry::place(cld::GlobalId g, double lat_deg, double lng_deg) {
  state.positions[static_cast<std::size_t>(g - 1)] =
      cld::EcefPosition(sph(radius(c.layer_of(g).layer), lat_deg, lng_deg));
}

Geometry make_geometry(const std::vector<std::pair<int, int>>& grids) {
  std::vector<cld::BuiltLayer> built;
  int u = 1;
  for (auto [planes, sigma] : grids) {
    cld::LayerSpec spec;
    spec.index = u;
    spec.name = "L" + std::to_string(u);
    spec.planes = planes;
    spec.sats_per_plane = sigma;
    spec.altitude_m = radius(u) - cld::kEarthRadius;
    built.push_back(cld::build_walker(spec));
    ++u;
  }
  Geometry geo{cld::Constellation::assign_global_ids(std::move(built)), {}};
  geo.state.sc_position = cld::EcefPosition(sph(cld::kEarthRadius, 0.0, 0.0));
  geo.state.positions.resize(static_cast<std::size_t>(geo.c.size()));
  for (cld::GlobalId g = 1; g <= geo.c.size(); ++g) {
    geo.place(g, -70.0 + 0.5 * g, 180.0);
  }
  return geo;
}

}  // namespace fixture
