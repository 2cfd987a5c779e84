#include "cld/output.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <map>

#include <json.hpp>

namespace cld {

namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

std::string optional_number(const std::optional<double>& v) {
  return v ? format_number(*v) : std::string();
}

// Round-trips through the 9-digit text so JSON shows the same digits as the CSVs.
ordered_json json_number(double v) { return std::stod(format_number(v)); }

ordered_json json_number(const std::optional<double>& v) {
  return v ? json_number(*v) : ordered_json(nullptr);
}

std::string scheme_key(SchemeKind k) {
  std::string s(to_string(k));
  for (auto& ch : s) {
    ch = ch == '-' ? '_' : static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  }
  return s;
}

ordered_json effective_spec(const Scenario& sc) {
  const MissionSpec& m = sc.mission;
  ordered_json j;
  ordered_json mission;
  mission["t_start"] = format_iso8601(m.t_start);
  mission["t_stop"] = format_iso8601(m.t_stop);
  if (m.sample_interval_s) {
    mission["sample_interval_s"] = json_number(*m.sample_interval_s);
  } else {
    mission["samples"] = m.sample_count;
  }
  mission["targets"] = m.targets;
  ordered_json schemes = ordered_json::array();
  for (SchemeKind k : m.schemes) schemes.push_back(std::string(to_string(k)));
  mission["schemes"] = schemes;
  ordered_json configs = ordered_json::array();
  for (const auto& c : m.configurations) configs.push_back(c.name);
  mission["configurations"] = configs;
  j["mission"] = mission;

  j["sc"] = {{"lat_deg", json_number(m.sc.lat_deg)},
             {"lng_deg", json_number(m.sc.lng_deg)},
             {"alt_m", json_number(m.sc.alt_m)},
             {"min_elevation_deg", json_number(m.sc.min_elevation_deg)}};
  j["cross_layer_min_elevation_deg"] = json_number(m.omega0_deg);

  ordered_json links = ordered_json::object();
  for (const auto& c : m.configurations) {
    links[c.name] = {{"ground_space_rate_bps", json_number(c.ground_space_rate)},
                     {"isl_rate_bps", json_number(c.isl_rate)},
                     {"frame_size_bytes", json_number(c.frame_size_bytes)},
                     {"processing_delay_s", json_number(c.processing_delay_s)},
                     {"queuing_delay_s", json_number(c.queuing_delay_s)}};
  }
  j["links"] = links;

  ordered_json layers = ordered_json::array();
  for (const auto& l : sc.constellation.layers()) {
    ordered_json e;
    e["index"] = l.spec.index;
    e["name"] = l.spec.name;
    e["kind"] = l.spec.kind == LayerKind::walker ? "walker" : "tle";
    e["satellites"] = l.size();
    e["first_global_id"] = l.first_global_id;
    e["altitude_km"] = json_number(l.spec.altitude_m / 1e3);
    if (l.spec.kind == LayerKind::walker) {
      e["planes"] = l.spec.planes;
      e["sats_per_plane"] = l.spec.sats_per_plane;
      e["inclination_deg"] = json_number(l.spec.inclination_deg);
      e["raan_spread_deg"] = json_number(l.spec.raan_spread_deg);
      e["phasing_offset_deg"] = json_number(l.spec.phasing_offset_deg);
    } else if (l.spec.tle_path) {
      e["tle_file"] = l.spec.tle_path->filename().string();
    }
    layers.push_back(e);
  }
  j["layers"] = layers;
  return j;
}

}  // namespace

std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", value);
  return buf;
}

std::string ratio_key(SchemeKind numerator, SchemeKind denominator) {
  return "ratio_" + scheme_key(numerator) + "_over_" + scheme_key(denominator);
}

void write_per_target_csv(const MissionRun& run, std::ostream& out) {
  out << kPerTargetHeader << '\n';
  for (const auto& r : run.results) {
    out << to_string(r.scheme) << ',' << r.configuration << ',' << r.dsn << ','
        << optional_number(r.mean_latency_s) << ',' << optional_number(r.mean_path_m) << ','
        << optional_number(r.mean_hops) << ',' << format_number(r.resilience) << '\n';
  }
}

void write_per_sample_csv(const MissionRun& run, std::ostream& out) {
  out << kPerSampleHeader << '\n';
  std::vector<std::string> stamps;
  stamps.reserve(run.times.size());
  for (Epoch t : run.times) stamps.push_back(format_iso8601(t));
  for (const auto& r : run.results) {
    const std::string prefix =
        std::string(to_string(r.scheme)) + ',' + r.configuration + ',' + std::to_string(r.dsn) + ',';
    for (std::size_t i = 0; i < r.samples.size(); ++i) {
      const SampleRecord& s = r.samples[i];
      out << prefix << stamps[i] << ',' << (s.reachable ? 1 : 0) << ',';
      if (s.reachable) {
        out << s.hops << ',' << format_number(s.path_m) << ',' << format_number(s.latency_s);
      } else {
        out << ",,";
      }
      out << '\n';
    }
  }
}

void write_summary_json(const MissionRun& run, const Scenario& scenario, std::ostream& out) {
  ordered_json root;
  root["effective_spec"] = effective_spec(scenario);
  ordered_json configs = ordered_json::object();
  std::map<std::string, std::vector<const OverallSummary*>> by_config;
  std::vector<std::string> config_order;
  for (const auto& s : run.overall) {
    if (!by_config.count(s.configuration)) config_order.push_back(s.configuration);
    by_config[s.configuration].push_back(&s);
  }
  for (const auto& name : config_order) {
    const auto& rows = by_config[name];
    ordered_json cfg;
    ordered_json schemes = ordered_json::object();
    for (const OverallSummary* s : rows) {
      schemes[std::string(to_string(s->scheme))] = {
          {"targets", s->target_count},
          {"mean_latency_s", json_number(s->mean_latency_s)},
          {"mean_path_m", json_number(s->mean_path_m)},
          {"mean_hops", json_number(s->mean_hops)},
          {"mean_resilience", json_number(s->mean_resilience)},
          {"reachable_fraction", json_number(s->reachable_fraction)}};
    }
    cfg["schemes"] = schemes;
    for (const OverallSummary* a : rows) {
      for (const OverallSummary* b : rows) {
        if (a == b) continue;
        const bool defined = a->mean_latency_s && b->mean_latency_s && *b->mean_latency_s > 0.0;
        cfg[ratio_key(a->scheme, b->scheme)] =
            defined ? json_number(*a->mean_latency_s / *b->mean_latency_s) : ordered_json(nullptr);
      }
    }
    for (const OverallSummary* a : rows) {
      for (const OverallSummary* b : rows) {
        if (a == b) continue;
        const bool defined = a->mean_path_m && b->mean_path_m && *b->mean_path_m > 0.0;
        cfg["path_" + ratio_key(a->scheme, b->scheme)] =
            defined ? json_number(*a->mean_path_m / *b->mean_path_m) : ordered_json(nullptr);
      }
    }
    configs[name] = cfg;
  }
  root["configurations"] = configs;
  out << root.dump(2) << '\n';
}

void emit_results(const MissionRun& run, const Scenario& scenario, const fs::path& out_dir) {
  if (run.results.empty()) throw OutputError("no results to write");
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec || !fs::is_directory(out_dir)) {
    throw OutputError("cannot create output directory '" + out_dir.string() + "'");
  }
  auto open = [&](const char* name) {
    std::ofstream f(out_dir / name, std::ios::binary | std::ios::trunc);
    if (!f) throw OutputError("cannot write '" + (out_dir / name).string() + "'");
    return f;
  };
  {
    auto f = open("per_target_latency.csv");
    write_per_target_csv(run, f);
  }
  {
    auto f = open("per_sample.csv");
    write_per_sample_csv(run, f);
  }
  {
    auto f = open("summary.json");
    write_summary_json(run, scenario, f);
  }
}

void write_access_report(const Scenario& scenario, std::ostream& out) {
  const Constellation& c = scenario.constellation;
  const MissionSpec& m = scenario.mission;
  out << "t_iso8601";
  for (const auto& l : c.layers()) out << ",layer_" << l.spec.index;
  out << ",total\n";
  const EcefPosition sc = m.sc.ecef();
  for (Epoch t : sample_times(m)) {
    const StateAtT state = snapshot(c, t, sc);
    out << format_iso8601(t);
    std::size_t total = 0;
    for (const auto& l : c.layers()) {
      const int u[] = {l.spec.index};
      const auto n = accessible_set(state, u, m.sc.min_elevation_deg, c).size();
      total += n;
      out << ',' << n;
    }
    out << ',' << total << '\n';
  }
}

}  // namespace cld
