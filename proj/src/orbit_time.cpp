#include "cld/orbit_time.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>

namespace cld {

namespace {

// 2000-01-01T12:00:00 as days since the Unix epoch.
constexpr double kJ2000UnixDays = 10957.5;

int parse_field(std::string_view text, std::size_t pos, std::size_t len) {
  if (pos + len > text.size()) {
    throw std::invalid_argument("timestamp too short: '" + std::string(text) + "'");
  }
  int value = 0;
  auto first = text.data() + pos;
  auto [ptr, ec] = std::from_chars(first, first + len, value);
  if (ec != std::errc() || ptr != first + len) {
    throw std::invalid_argument("bad timestamp field in '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

Epoch epoch_from_civil(int year, unsigned month, unsigned day, double seconds_of_day) {
  using namespace std::chrono;
  const year_month_day ymd{std::chrono::year{year}, std::chrono::month{month},
                           std::chrono::day{day}};
  if (!ymd.ok()) {
    throw std::invalid_argument("invalid calendar date");
  }
  const double unix_days = static_cast<double>(sys_days{ymd}.time_since_epoch().count());
  return Epoch{(unix_days - kJ2000UnixDays) * kSecondsPerDay + seconds_of_day};
}

Epoch parse_utc(std::string_view text) {
  // YYYY-MM-DD HH:MM:SS
  if (text.size() != 19 || text[4] != '-' || text[7] != '-' ||
      (text[10] != ' ' && text[10] != 'T') || text[13] != ':' || text[16] != ':') {
    throw std::invalid_argument("expected 'YYYY-MM-DD HH:MM:SS', got '" +
                                std::string(text) + "'");
  }
  const int y = parse_field(text, 0, 4);
  const int mo = parse_field(text, 5, 2);
  const int d = parse_field(text, 8, 2);
  const int h = parse_field(text, 11, 2);
  const int mi = parse_field(text, 14, 2);
  const int s = parse_field(text, 17, 2);
  if (h > 23 || mi > 59 || s > 59) {
    throw std::invalid_argument("time of day out of range in '" + std::string(text) + "'");
  }
  return epoch_from_civil(y, static_cast<unsigned>(mo), static_cast<unsigned>(d),
                          h * 3600.0 + mi * 60.0 + s);
}

std::string format_iso8601(Epoch t) {
  using namespace std::chrono;
  // Round to whole milliseconds first so 59.9996 s does not print as 60.000.
  const auto total_ms = static_cast<long long>(
      std::llround((t.utc_seconds + kJ2000UnixDays * kSecondsPerDay) * 1000.0));
  auto day_count = total_ms / 86'400'000LL;
  auto ms_of_day = total_ms % 86'400'000LL;
  if (ms_of_day < 0) {
    ms_of_day += 86'400'000LL;
    --day_count;
  }
  const year_month_day ymd{sys_days{days{day_count}}};
  const long long h = ms_of_day / 3'600'000LL;
  const long long mi = (ms_of_day / 60'000LL) % 60;
  const long long s = (ms_of_day / 1000LL) % 60;
  const long long ms = ms_of_day % 1000LL;
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02lld:%02lld:%02lld.%03lldZ",
                static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()), h, mi, s, ms);
  return buf;
}

double OrbitalElements::mean_motion() const {
  return std::sqrt(kMuEarth / (semi_major_axis * semi_major_axis * semi_major_axis));
}

double OrbitalElements::period() const { return kTwoPi / mean_motion(); }

double wrap_two_pi(double angle) {
  double w = std::fmod(angle, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  // fmod of tiny negatives can round up to exactly 2*pi
  if (w >= kTwoPi) w = 0.0;
  return w;
}

void validate(const OrbitalElements& e) {
  if (!(e.semi_major_axis > kEarthRadius)) {
    throw OrbitError("semi-major axis must exceed the Earth radius");
  }
  if (!(e.eccentricity >= 0.0 && e.eccentricity < 1.0)) {
    throw OrbitError("eccentricity must be in [0, 1)");
  }
  if (!std::isfinite(e.inclination) || !std::isfinite(e.raan) ||
      !std::isfinite(e.arg_latitude_at_epoch) || !std::isfinite(e.arg_perigee)) {
    throw OrbitError("non-finite orbital angle");
  }
}

namespace {

EciPosition position_from_angles(double radius, double raan, double incl, double arg_lat) {
  const double cu = std::cos(arg_lat), su = std::sin(arg_lat);
  const double co = std::cos(raan), so = std::sin(raan);
  const double ci = std::cos(incl), si = std::sin(incl);
  return EciPosition{radius * (co * cu - so * su * ci), radius * (so * cu + co * su * ci),
                     radius * (su * si)};
}

}  // namespace

EciPosition propagate_circular(const OrbitalElements& e, Epoch t) {
  if (e.eccentricity != 0.0) {
    throw OrbitError("propagate_circular: element set is not circular (e != 0)");
  }
  const double u = wrap_two_pi(e.arg_latitude_at_epoch + e.mean_motion() * (t - e.epoch));
  return position_from_angles(e.semi_major_axis, e.raan, e.inclination, u);
}

EciPosition propagate_kepler(const OrbitalElements& e, Epoch t) {
  if (e.eccentricity == 0.0) return propagate_circular(e, t);
  if (!(e.eccentricity > 0.0 && e.eccentricity < 1.0)) {
    throw OrbitError("propagate_kepler: eccentricity must be in [0, 1)");
  }
  const double ecc = e.eccentricity;
  const double mean_anomaly =
      wrap_two_pi(e.arg_latitude_at_epoch - e.arg_perigee + e.mean_motion() * (t - e.epoch));
  double ecc_anomaly = ecc < 0.8 ? mean_anomaly : kPi;
  for (int iter = 0; iter < 50; ++iter) {
    const double f = ecc_anomaly - ecc * std::sin(ecc_anomaly) - mean_anomaly;
    const double step = f / (1.0 - ecc * std::cos(ecc_anomaly));
    ecc_anomaly -= step;
    if (std::abs(step) < 1e-14) break;
  }
  const double true_anomaly =
      2.0 * std::atan2(std::sqrt(1.0 + ecc) * std::sin(ecc_anomaly / 2.0),
                       std::sqrt(1.0 - ecc) * std::cos(ecc_anomaly / 2.0));
  const double radius = e.semi_major_axis * (1.0 - ecc * std::cos(ecc_anomaly));
  return position_from_angles(radius, e.raan, e.inclination, e.arg_perigee + true_anomaly);
}

EciPosition propagate(const OrbitalElements& e, Epoch t) {
  return e.eccentricity == 0.0 ? propagate_circular(e, t) : propagate_kepler(e, t);
}

double gmst(Epoch t) {
  const double deg = std::fmod(280.46061837 + 360.98564736629 * t.days_since_j2000(), 360.0);
  return wrap_two_pi(deg * kDegToRad);
}

EcefPosition eci_to_ecef(const EciPosition& p, Epoch t) {
  const double g = gmst(t);
  const double c = std::cos(g), s = std::sin(g);
  return EcefPosition{c * p.v.x() + s * p.v.y(), -s * p.v.x() + c * p.v.y(), p.v.z()};
}

EciPosition ecef_to_eci(const EcefPosition& p, Epoch t) {
  const double g = gmst(t);
  const double c = std::cos(g), s = std::sin(g);
  return EciPosition{c * p.v.x() - s * p.v.y(), s * p.v.x() + c * p.v.y(), p.v.z()};
}

EcefPosition geodetic_to_ecef(double lat_deg, double lng_deg, double alt_m) {
  if (!(lat_deg >= -90.0 && lat_deg <= 90.0)) {
    throw OrbitError("latitude out of range [-90, 90]");
  }
  if (!(lng_deg >= -180.0 && lng_deg <= 180.0)) {
    throw OrbitError("longitude out of range [-180, 180]");
  }
  const double lat = lat_deg * kDegToRad, lng = lng_deg * kDegToRad;
  const double r = kEarthRadius + alt_m;
  return EcefPosition{r * std::cos(lat) * std::cos(lng), r * std::cos(lat) * std::sin(lng),
                      r * std::sin(lat)};
}

NedFrame ned_basis(const EcefPosition& origin) {
  const double r = origin.norm();
  if (!(r > 0.0)) throw OrbitError("ned_basis: origin at the geocenter");
  const Eigen::Vector3d up = origin.v / r;
  const Eigen::Vector3d east_raw = Eigen::Vector3d::UnitZ().cross(up);
  if (east_raw.norm() == 0.0) {
    throw OrbitError("ned_basis: origin on the polar axis, east direction undefined");
  }
  NedFrame f;
  f.origin = origin;
  f.down = -up;
  f.east = east_raw.normalized();
  f.north = f.east.cross(f.down);
  return f;
}

}  // namespace cld
