#include "cld/access.hpp"

#include <algorithm>
#include <cmath>

namespace cld {

namespace {

double angle_between(const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
  return std::atan2(a.cross(b).norm(), a.dot(b));
}

}  // namespace

StateAtT snapshot(const Constellation& c, Epoch t, const EcefPosition& sc) {
  StateAtT s;
  s.t = t;
  s.sc_position = sc;
  s.positions.reserve(static_cast<std::size_t>(c.size()));
  for (const auto& layer : c.layers()) {
    for (const auto& e : layer.elements) {
      s.positions.push_back(eci_to_ecef(propagate(e, t), t));
    }
  }
  return s;
}

double slant_range(const EcefPosition& a, const EcefPosition& b) { return (a.v - b.v).norm(); }

double elevation(const EcefPosition& observer, const EcefPosition& target) {
  const Eigen::Vector3d los = target.v - observer.v;
  const double range = los.norm();
  const double r = observer.norm();
  if (range == 0.0) throw GeometryError("elevation: observer and target coincide");
  if (r == 0.0) throw GeometryError("elevation: observer at the geocenter");
  // asin(los.up / |los|) written as atan2 to stay well conditioned near the zenith
  const Eigen::Vector3d up = observer.v / r;
  return std::atan2(los.dot(up), los.cross(up).norm()) * kRadToDeg;
}

bool is_accessible_by_sc(const EcefPosition& sc, const EcefPosition& sat, double min_elev_deg) {
  return elevation(sc, sat) >= min_elev_deg;
}

bool cross_layer_feasible(const EcefPosition& upper, const EcefPosition& lower,
                          double omega0_deg) {
  return elevation(lower, upper) >= omega0_deg;
}

bool line_of_sight_clear(const EcefPosition& a, const EcefPosition& b, double radius) {
  const Eigen::Vector3d d = b.v - a.v;
  const double len2 = d.squaredNorm();
  double closest = 0.0;
  if (len2 == 0.0) {
    closest = a.norm();
  } else {
    const double s = std::clamp(-a.v.dot(d) / len2, 0.0, 1.0);
    closest = (a.v + s * d).norm();
  }
  return closest > radius;
}

std::vector<GlobalId> cross_layer_candidates(GlobalId upper, int lower_layer, const StateAtT& state,
                                             const Constellation& c, double omega0_deg) {
  const SatelliteId up = c.layer_of(upper);
  if (lower_layer < 1 || lower_layer >= up.layer) {
    throw GeometryError("cross_layer_candidates: layer " + std::to_string(lower_layer) +
                        " is not below layer " + std::to_string(up.layer));
  }
  const Layer& l = c.layer(lower_layer);
  const EcefPosition& up_pos = state.position(upper);
  std::vector<GlobalId> out;
  for (GlobalId g = l.first_global_id; g <= l.last_global_id(); ++g) {
    if (cross_layer_feasible(up_pos, state.position(g), omega0_deg)) out.push_back(g);
  }
  return out;
}

std::vector<GlobalId> cross_layer_candidates(GlobalId upper, const StateAtT& state,
                                             const Constellation& c, double omega0_deg) {
  const SatelliteId up = c.layer_of(upper);
  if (up.layer < 2) {
    throw GeometryError("cross_layer_candidates: satellite " + std::to_string(upper) +
                        " is on the lowest layer");
  }
  return cross_layer_candidates(upper, up.layer - 1, state, c, omega0_deg);
}

DirectionalAngles directional_angles(const EcefPosition& sc, const EcefPosition& ssn,
                                     const EcefPosition& candidate, const EcefPosition& dsn) {
  const Eigen::Vector3d x1 = candidate.v - ssn.v;
  const Eigen::Vector3d x2 = dsn.v - ssn.v;
  const Eigen::Vector3d x3 = ssn.v - sc.v;
  if (x1.norm() == 0.0 || x2.norm() == 0.0 || x3.norm() == 0.0) {
    throw GeometryError("directional_angles: zero-length direction vector");
  }
  DirectionalAngles a;
  a.theta2 = angle_between(x3, x2);
  const double side = x3.cross(x1).dot(x3.cross(x2));
  const double magnitude = angle_between(x3, x1);
  a.theta1 = side > 0.0 ? magnitude : -magnitude;
  return a;
}

std::vector<GlobalId> accessible_set(const StateAtT& state, std::span<const int> layers,
                                     double min_elev_deg, const Constellation& c) {
  std::vector<int> sorted(layers.begin(), layers.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<GlobalId> out;
  for (int u : sorted) {
    const Layer& l = c.layer(u);
    for (GlobalId g = l.first_global_id; g <= l.last_global_id(); ++g) {
      if (is_accessible_by_sc(state.sc_position, state.position(g), min_elev_deg)) {
        out.push_back(g);
      }
    }
  }
  return out;
}

}  // namespace cld
