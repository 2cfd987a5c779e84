#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cld/constellation.hpp"
#include "cld/metrics.hpp"
#include "cld/routing.hpp"

namespace cld {

class MissionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GroundSite {
  double lat_deg = 0.0;
  double lng_deg = 0.0;
  double alt_m = 0.0;
  double min_elevation_deg = 25.0;

  EcefPosition ecef() const { return geodetic_to_ecef(lat_deg, lng_deg, alt_m); }
};

struct MissionSpec {
  Epoch t_start;
  Epoch t_stop;
  int sample_count = 1;
  /// When set, samples are taken every interval instead of sample_count uniform ticks.
  std::optional<double> sample_interval_s;
  GroundSite sc;
  double omega0_deg = 10.0;
  std::vector<SchemeKind> schemes;
  std::vector<LinkConfig> configurations;
  std::vector<GlobalId> targets;

  RoutingParams routing() const { return {sc.min_elevation_deg, omega0_deg}; }
};

/// Throws MissionError when spec is inconsistent with c.
void validate(const MissionSpec& spec, const Constellation& c);

/// T instants over [t_start, t_stop): first at t_start, uniform step.
std::vector<Epoch> sample_times(const MissionSpec& spec);

/// {1, 1 + stride, ...} up to layer_size.
std::vector<GlobalId> default_targets(int layer_size = 78, int stride = 4);

struct RunOptions {
  int threads = 1;
  /// Evaluate samples in a shuffled order (output is unaffected).
  std::optional<std::uint64_t> shuffle_seed;
  bool keep_routes = false;
};

/// Route emitted for one (scheme, destination, sample); shared by all configurations.
struct RouteRecord {
  SchemeKind scheme = SchemeKind::cld_i;
  GlobalId dsn = 0;
  int sample = 0;
  std::optional<Route> route;
  int q_indicator = 0;  // accessible-set indicator at that sample
};

struct MissionRun {
  std::vector<Epoch> times;
  std::vector<MissionResult> results;   // canonical order, summarized
  std::vector<OverallSummary> overall;  // canonical order
  std::vector<RouteRecord> routes;      // filled when keep_routes
};

/// Runs every (scheme, configuration, target, sample) cell. One snapshot per sample
/// is shared by all schemes and targets. Output does not depend on thread count or order.
MissionRun run_mission(const Constellation& c, const MissionSpec& spec,
                       const RunOptions& options = {});

}  // namespace cld
