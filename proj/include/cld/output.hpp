#pragma once

#include <filesystem>
#include <ostream>
#include <stdexcept>
#include <string>

#include "cld/scenario.hpp"
#include "cld/scenario_file.hpp"

namespace cld {

class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kPerTargetHeader =
    "scheme,configuration,dsn_id,mean_latency_s,mean_path_m,mean_hops,resilience";
inline constexpr const char* kPerSampleHeader =
    "scheme,configuration,dsn_id,t_iso8601,reachable,hops,path_m,latency_s";

/// %.9g rendering used for every number in the outputs.
std::string format_number(double value);

/// "ratio_<a>_over_<b>" with scheme names lower-cased and '-' mapped to '_'.
std::string ratio_key(SchemeKind numerator, SchemeKind denominator);

void write_per_target_csv(const MissionRun& run, std::ostream& out);
void write_per_sample_csv(const MissionRun& run, std::ostream& out);
void write_summary_json(const MissionRun& run, const Scenario& scenario, std::ostream& out);

/// Writes per_target_latency.csv, per_sample.csv and summary.json into out_dir
/// (created if needed). Throws OutputError when the directory is unusable.
void emit_results(const MissionRun& run, const Scenario& scenario,
                  const std::filesystem::path& out_dir);

/// One CSV row per sample: time and the number of SC-accessible satellites per layer.
void write_access_report(const Scenario& scenario, std::ostream& out);

}  // namespace cld
