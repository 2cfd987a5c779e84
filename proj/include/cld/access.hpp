#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "cld/constellation.hpp"
#include "cld/orbit_time.hpp"

namespace cld {

class GeometryError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Positions of every satellite (ECEF) and of the SC at one sample instant.
struct StateAtT {
  Epoch t;
  std::vector<EcefPosition> positions;  // index g - 1
  EcefPosition sc_position;

  const EcefPosition& position(GlobalId g) const {
    return positions[static_cast<std::size_t>(g - 1)];
  }
};

/// Propagates every satellite of c to t.
StateAtT snapshot(const Constellation& c, Epoch t, const EcefPosition& sc);

double slant_range(const EcefPosition& a, const EcefPosition& b);

/// Elevation of target above the observer's local horizontal plane [deg].
double elevation(const EcefPosition& observer, const EcefPosition& target);

/// Inclusive boundary: elevation == min_elev_deg is accessible.
bool is_accessible_by_sc(const EcefPosition& sc, const EcefPosition& sat, double min_elev_deg);

/// Cross-layer link test: the upper satellite must be at least omega0 above the
/// lower satellite's horizon.
bool cross_layer_feasible(const EcefPosition& upper, const EcefPosition& lower, double omega0_deg);

/// True when the segment a-b stays clear of the sphere of the given radius.
bool line_of_sight_clear(const EcefPosition& a, const EcefPosition& b,
                         double radius = kEarthRadius);

/// A' of the given satellite on lower_layer (ascending global id).
std::vector<GlobalId> cross_layer_candidates(GlobalId upper, int lower_layer, const StateAtT& state,
                                             const Constellation& c, double omega0_deg);

/// A' on the layer immediately below upper's layer. Throws GeometryError for layer 1.
std::vector<GlobalId> cross_layer_candidates(GlobalId upper, const StateAtT& state,
                                             const Constellation& c, double omega0_deg);

struct DirectionalAngles {
  double theta1 = 0.0;  // candidate, signed [rad]
  double theta2 = 0.0;  // destination, positive reference [rad]

  bool same_sign() const { return std::signbit(theta1) == std::signbit(theta2); }
};

/// Angles of ssn->candidate and ssn->dsn against the sc->ssn direction. theta1 is
/// negative when the candidate lies on the other side of the (sc, ssn, dsn) plane.
DirectionalAngles directional_angles(const EcefPosition& sc, const EcefPosition& ssn,
                                     const EcefPosition& candidate, const EcefPosition& dsn);

/// G(t) restricted to the given layers (ascending global id).
std::vector<GlobalId> accessible_set(const StateAtT& state, std::span<const int> layers,
                                     double min_elev_deg, const Constellation& c);

}  // namespace cld
