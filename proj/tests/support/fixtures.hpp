#pragma once

#include <filesystem>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "cld/access.hpp"
#include "cld/constellation.hpp"
#include "cld/scenario_file.hpp"

namespace fixture {

std::filesystem::path source_dir();
std::filesystem::path default_scenario_path();

/// The shipped scenario, loaded once per process.
const cld::Scenario& default_scenario();

/// Point at radius r [m] above (lat, lng) in degrees.
Eigen::Vector3d sph(double r, double lat_deg, double lng_deg);

/// Layer radius for synthetic fixtures: 1015 km, 1200 km, 8062 km, GEO.
double radius(int layer);

/// Hand-placed geometry over small walker layers. Every satellite starts parked
/// on the far side of Earth from the SC at (0, 0); tests move the ones they need.
struct Geometry {
  cld::Constellation c;
  cld::StateAtT state;

  void place(cld::GlobalId g, double lat_deg, double lng_deg);
  const Eigen::Vector3d& at(cld::GlobalId g) const { return state.position(g).v; }
};

/// One walker layer of planes x sats_per_plane per entry, layer radii from radius().
Geometry make_geometry(const std::vector<std::pair<int, int>>& grids);

}  // namespace fixture
