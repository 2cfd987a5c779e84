#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cld/routing.hpp"

namespace cld {

inline constexpr double kSpeedOfLight = 299792458.0;

/// Link-rate preset for one configuration.
struct LinkConfig {
  std::string name;                  // "I", "II", "III"
  double ground_space_rate = 0.0;    // bit/s
  double isl_rate = 0.0;             // bit/s
  double frame_size_bytes = 1024.0;  // TC frame size
  double processing_delay_s = 100e-6;
  double queuing_delay_s = 100e-6;

  double rate(LinkClass link) const {
    return link == LinkClass::ground_space ? ground_space_rate : isl_rate;
  }
};

/// Presets "I" (RF everywhere), "II" (FSO), "III" (hybrid ground link, FSO ISLs).
LinkConfig link_preset(const std::string& name);
const std::vector<std::string>& preset_names();

/// Throws std::invalid_argument when a rate or delay is non-positive / negative.
void validate(const LinkConfig& link);

struct PathLength {
  double total_m = 0.0;        // sum over hops
  double segment_sum_m = 0.0;  // sum over (segment, layer) groups
  std::map<std::pair<Segment, int>, double> by_segment_layer;
};

/// Hop-sum and segment decomposition; throws std::logic_error if they disagree
/// beyond 1e-6 relative.
PathLength path_length(const Route& route, const Constellation& c);

/// Sum over hops of propagation, transmission, queuing and processing delay.
double latency(const Route& route, const LinkConfig& link);

/// 1 when any satellite on the scheme's access layers is above the SC mask.
int q_indicator(const Scheme& scheme, const StateAtT& state, const Constellation& c,
                const RoutingParams& params);

/// sum(Q) / (mean_hops * T); 0 when no sample was reachable (mean_hops unset).
double resilience(std::span<const int> per_sample_q, std::optional<double> mean_hops);

struct SampleRecord {
  Epoch t;
  bool reachable = false;
  int hops = 0;
  double path_m = 0.0;
  double latency_s = 0.0;
};

/// One (scheme, configuration, destination) series with its aggregates.
struct MissionResult {
  SchemeKind scheme = SchemeKind::cld_i;
  std::string configuration;
  GlobalId dsn = 0;
  std::vector<SampleRecord> samples;

  std::optional<double> mean_latency_s;
  std::optional<double> mean_path_m;
  std::optional<double> mean_hops;
  double resilience = 0.0;
  int reachable_count = 0;
};

/// Fills the aggregate fields of r from its samples (reachable samples only).
void summarize(MissionResult& r);

/// Mean over destinations of the per-destination values.
struct OverallSummary {
  SchemeKind scheme = SchemeKind::cld_i;
  std::string configuration;
  int target_count = 0;
  std::optional<double> mean_latency_s;
  std::optional<double> mean_path_m;
  std::optional<double> mean_hops;
  double mean_resilience = 0.0;
  double reachable_fraction = 0.0;
};

/// Canonical ordering: scheme (declaration order), configuration, destination.
bool result_order(const MissionResult& a, const MissionResult& b);

/// Sorts results canonically, summarizes each, and returns per (scheme, configuration)
/// overall means in the same order.
std::vector<OverallSummary> aggregate(std::vector<MissionResult>& results);

}  // namespace cld
