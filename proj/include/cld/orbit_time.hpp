#pragma once

#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace cld {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr double kDegToRad = kPi / 180.0;
inline constexpr double kRadToDeg = 180.0 / kPi;

/// Earth gravitational parameter [m^3/s^2].
inline constexpr double kMuEarth = 3.986004418e14;
/// Spherical Earth radius used for all geometry [m].
inline constexpr double kEarthRadius = 6371.0e3;
inline constexpr double kSecondsPerDay = 86400.0;

/// Raised for invalid orbital inputs (unsupported element sets, bad ranges).
class OrbitError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Seconds since J2000 (2000-01-01T12:00:00 UTC). UTC is treated as uniform.
struct Epoch {
  double utc_seconds = 0.0;

  friend auto operator<=>(const Epoch&, const Epoch&) = default;
  friend double operator-(Epoch a, Epoch b) { return a.utc_seconds - b.utc_seconds; }
  friend Epoch operator+(Epoch a, double seconds) { return Epoch{a.utc_seconds + seconds}; }

  double days_since_j2000() const { return utc_seconds / kSecondsPerDay; }
};

/// Parses "YYYY-MM-DD HH:MM:SS" (a 'T' separator is also accepted) as UTC.
Epoch parse_utc(std::string_view text);

/// Epoch from a calendar date and time of day (UTC).
Epoch epoch_from_civil(int year, unsigned month, unsigned day, double seconds_of_day);

/// ISO-8601 UTC with millisecond precision, e.g. "2022-09-01T01:02:52.800Z".
std::string format_iso8601(Epoch t);

/// Position tagged with its reference frame so ECI and ECEF vectors cannot be mixed.
template <typename Frame>
struct Position {
  Eigen::Vector3d v = Eigen::Vector3d::Zero();

  Position() = default;
  explicit Position(const Eigen::Vector3d& vec) : v(vec) {}
  Position(double x, double y, double z) : v(x, y, z) {}

  double norm() const { return v.norm(); }
  friend bool operator==(const Position& a, const Position& b) { return a.v == b.v; }
};

struct EciFrame {};
struct EcefFrame {};
using EciPosition = Position<EciFrame>;
using EcefPosition = Position<EcefFrame>;

/// Mean elements of a two-body orbit. arg_latitude_at_epoch is the mean argument
/// of latitude (argument of perigee + mean anomaly); for circular orbits it is
/// the true argument of latitude.
struct OrbitalElements {
  double semi_major_axis = 0.0;  // m
  double inclination = 0.0;      // rad
  double raan = 0.0;             // rad
  double arg_latitude_at_epoch = 0.0;
  double eccentricity = 0.0;
  double arg_perigee = 0.0;  // rad, ignored when eccentricity == 0
  Epoch epoch{};

  double mean_motion() const;  // rad/s
  double period() const;       // s
};

/// Wraps an angle into [0, 2*pi).
double wrap_two_pi(double angle);

/// Checks the element invariants; throws OrbitError on violation.
void validate(const OrbitalElements& e);

EciPosition propagate_circular(const OrbitalElements& e, Epoch t);

/// Two-body Keplerian propagation for 0 <= e < 1 (Kepler's equation by Newton iteration).
EciPosition propagate_kepler(const OrbitalElements& e, Epoch t);

/// Dispatches on eccentricity.
EciPosition propagate(const OrbitalElements& e, Epoch t);

/// Greenwich mean sidereal angle [rad], linear model.
double gmst(Epoch t);

EcefPosition eci_to_ecef(const EciPosition& p, Epoch t);
EciPosition ecef_to_eci(const EcefPosition& p, Epoch t);

/// Spherical-Earth geodetic conversion; lat/lng in degrees, alt in meters.
EcefPosition geodetic_to_ecef(double lat_deg, double lng_deg, double alt_m);

struct NedFrame {
  EcefPosition origin;
  Eigen::Vector3d north;
  Eigen::Vector3d east;
  Eigen::Vector3d down;
};

/// Local North-East-Down basis at origin. Throws OrbitError on the polar axis.
NedFrame ned_basis(const EcefPosition& origin);

}  // namespace cld
