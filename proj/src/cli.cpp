#include "cld/cli.hpp"

#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cld/output.hpp"
#include "cld/scenario_file.hpp"

namespace cld {

namespace {

struct RunFlags {
  std::string scenario;
  std::string out;
  std::vector<std::string> schemes;
  std::vector<std::string> configs;
  std::vector<int> targets;
  std::optional<int> samples;
  int threads = 1;
  std::optional<std::uint64_t> shuffle_seed;
};

// Flags override file values; any semantic problem is a scenario error.
void apply_overrides(Scenario& sc, const RunFlags& f) {
  MissionSpec& m = sc.mission;
  if (!f.schemes.empty()) {
    m.schemes.clear();
    for (const auto& s : f.schemes) {
      try {
        m.schemes.push_back(parse_scheme(s));
      } catch (const std::invalid_argument& e) {
        throw ScenarioError(std::string("--schemes: ") + e.what());
      }
    }
  }
  if (!f.configs.empty()) {
    m.configurations.clear();
    for (const auto& name : f.configs) {
      const auto it = std::find_if(sc.link_configs.begin(), sc.link_configs.end(),
                                   [&](const LinkConfig& c) { return c.name == name; });
      if (it == sc.link_configs.end()) {
        throw ScenarioError("--configs: unknown configuration '" + name + "'");
      }
      m.configurations.push_back(*it);
    }
  }
  if (!f.targets.empty()) {
    m.targets.assign(f.targets.begin(), f.targets.end());
    sc.target_stride = 0;
  }
  if (f.samples) {
    if (*f.samples < 1) throw ScenarioError("--samples: must be at least 1");
    m.sample_count = *f.samples;
    m.sample_interval_s.reset();
  }
  revalidate(sc);
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multi-layer satellite telecommand routing simulator", "cldsim"};
  app.require_subcommand(1);

  RunFlags run_flags;
  auto* run = app.add_subcommand("run", "Run the mission and write CSV/JSON results");
  run->add_option("--scenario", run_flags.scenario, "Scenario TOML file")->required();
  run->add_option("--out", run_flags.out, "Output directory (overrides the file)");
  run->add_option("--schemes", run_flags.schemes, "Comma-separated scheme names")
      ->delimiter(',');
  run->add_option("--configs", run_flags.configs, "Comma-separated configurations (I,II,III)")
      ->delimiter(',');
  run->add_option("--targets", run_flags.targets, "Comma-separated destination global ids")
      ->delimiter(',');
  run->add_option("--samples", run_flags.samples, "Number of uniform time samples");
  run->add_option("--threads", run_flags.threads, "Worker threads")->check(CLI::PositiveNumber);
  run->add_option("--shuffle-seed", run_flags.shuffle_seed,
                  "Evaluate samples in a seeded random order");

  std::string validate_path;
  auto* validate_cmd = app.add_subcommand("validate", "Parse and check a scenario file");
  validate_cmd->add_option("--scenario", validate_path, "Scenario TOML file")->required();

  std::string report_path;
  auto* report = app.add_subcommand("access-report",
                                    "Print SC-accessible satellite counts per layer and sample");
  report->add_option("--scenario", report_path, "Scenario TOML file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*validate_cmd) {
      const Scenario sc = load_scenario(validate_path);
      out << "ok: " << sc.constellation.layer_count() << " layers, "
          << sc.constellation.size() << " satellites, " << sc.mission.targets.size()
          << " targets, " << sample_times(sc.mission).size() << " samples\n";
      return kExitOk;
    }
    if (*report) {
      const Scenario sc = load_scenario(report_path);
      write_access_report(sc, out);
      return kExitOk;
    }
    Scenario sc = load_scenario(run_flags.scenario);
    apply_overrides(sc, run_flags);
    RunOptions opts;
    opts.threads = run_flags.threads;
    opts.shuffle_seed = run_flags.shuffle_seed;
    const MissionRun result = run_mission(sc.constellation, sc.mission, opts);
    const std::filesystem::path dir =
        run_flags.out.empty() ? sc.output_dir : std::filesystem::path(run_flags.out);
    emit_results(result, sc, dir);
    out << "wrote " << result.results.size() << " series to " << dir.string() << "\n";
    return kExitOk;
  } catch (const ScenarioError& e) {
    err << "scenario error: " << e.what() << '\n';
    return kExitScenario;
  } catch (const std::exception& e) {
    err << "runtime error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

}  // namespace cld
