#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "cld/constellation.hpp"
#include "cld/metrics.hpp"
#include "cld/scenario.hpp"

namespace cld {

/// Raised for unreadable, malformed or semantically invalid scenario files. The
/// message carries either "file:line:column" or the offending field path.
class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Scenario {
  std::filesystem::path source;
  std::vector<LayerSpec> layer_specs;
  Constellation constellation;
  MissionSpec mission;
  /// Every known configuration after overrides; mission.configurations is the selected subset.
  std::vector<LinkConfig> link_configs;
  std::filesystem::path output_dir;
  int target_stride = 0;  // 0 when targets were listed explicitly
};

/// Reads a strict TOML scenario. Relative TLE and output paths resolve against
/// the scenario file's directory.
Scenario load_scenario(const std::filesystem::path& path);

/// Same, from text; base_dir resolves relative paths.
Scenario load_scenario_string(const std::string& text, const std::filesystem::path& base_dir,
                              const std::string& source_name = "<string>");

/// Re-checks the mission against the constellation, mapping failures to ScenarioError.
void revalidate(Scenario& scenario);

}  // namespace cld
