#include "cld/scenario_file.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

#include <toml.hpp>

namespace cld {

namespace {

namespace fs = std::filesystem;

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw ScenarioError(path + ": " + message);
}

// Reads keys of one table and rejects anything it was not asked about.
class TableReader {
 public:
  TableReader(const toml::table& table, std::string path) : table_(table), path_(std::move(path)) {}

  std::string field(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  const toml::node* node(const std::string& key) {
    seen_.insert(key);
    return table_.get(key);
  }

  bool has(const std::string& key) const { return table_.contains(key); }

  std::optional<double> opt_number(const std::string& key) {
    const toml::node* n = node(key);
    if (!n) return std::nullopt;
    if (!n->is_number()) fail(field(key), "expected a number");
    return n->value<double>();
  }

  double number(const std::string& key) {
    auto v = opt_number(key);
    if (!v) fail(field(key), "missing required key");
    return *v;
  }

  double number_or(const std::string& key, double fallback) {
    return opt_number(key).value_or(fallback);
  }

  std::optional<long long> opt_integer(const std::string& key) {
    const toml::node* n = node(key);
    if (!n) return std::nullopt;
    if (!n->is_integer()) fail(field(key), "expected an integer");
    return n->value<long long>();
  }

  long long integer(const std::string& key) {
    auto v = opt_integer(key);
    if (!v) fail(field(key), "missing required key");
    return *v;
  }

  std::optional<std::string> opt_string(const std::string& key) {
    const toml::node* n = node(key);
    if (!n) return std::nullopt;
    if (!n->is_string()) fail(field(key), "expected a string");
    return n->value<std::string>();
  }

  std::string string(const std::string& key) {
    auto v = opt_string(key);
    if (!v) fail(field(key), "missing required key");
    return *v;
  }

  std::optional<std::vector<std::string>> opt_strings(const std::string& key) {
    const toml::node* n = node(key);
    if (!n) return std::nullopt;
    const toml::array* arr = n->as_array();
    if (!arr) fail(field(key), "expected an array of strings");
    std::vector<std::string> out;
    for (std::size_t k = 0; k < arr->size(); ++k) {
      const auto s = (*arr)[k].value<std::string>();
      if (!s || !(*arr)[k].is_string()) {
        fail(field(key) + "[" + std::to_string(k) + "]", "expected a string");
      }
      out.push_back(*s);
    }
    return out;
  }

  std::optional<std::vector<long long>> opt_integers(const std::string& key) {
    const toml::node* n = node(key);
    if (!n) return std::nullopt;
    const toml::array* arr = n->as_array();
    if (!arr) fail(field(key), "expected an array of integers");
    std::vector<long long> out;
    for (std::size_t k = 0; k < arr->size(); ++k) {
      if (!(*arr)[k].is_integer()) {
        fail(field(key) + "[" + std::to_string(k) + "]", "expected an integer");
      }
      out.push_back(*(*arr)[k].value<long long>());
    }
    return out;
  }

  const toml::table* opt_table(const std::string& key) {
    const toml::node* n = node(key);
    if (!n) return nullptr;
    const toml::table* t = n->as_table();
    if (!t) fail(field(key), "expected a table");
    return t;
  }

  const toml::table& table(const std::string& key) {
    const toml::table* t = opt_table(key);
    if (!t) fail(field(key), "missing required block [" + field(key) + "]");
    return *t;
  }

  void finish() const {
    for (auto&& [k, v] : table_) {
      const std::string key(k.str());
      if (!seen_.count(key)) fail(field(key), "unknown key");
    }
  }

 private:
  const toml::table& table_;
  std::string path_;
  std::set<std::string> seen_;
};

BuiltLayer read_layer(const toml::table& t, const std::string& path, const fs::path& base_dir,
                      Epoch anchor, LayerSpec& spec_out) {
  TableReader r(t, path);
  LayerSpec spec;
  spec.index = static_cast<int>(r.integer("index"));
  spec.name = r.opt_string("name").value_or("");
  const std::string kind = r.string("kind");
  spec.min_elevation_deg = r.number_or("min_elevation_deg", 10.0);
  BuiltLayer built;
  if (kind == "walker") {
    spec.kind = LayerKind::walker;
    spec.planes = static_cast<int>(r.integer("planes"));
    spec.sats_per_plane = static_cast<int>(r.integer("sats_per_plane"));
    spec.altitude_m = r.number("altitude_km") * 1e3;
    spec.inclination_deg = r.number("inclination_deg");
    spec.raan_spread_deg = r.number_or("raan_spread_deg", 360.0);
    spec.phasing_offset_deg = r.number_or("phasing_offset_deg", 0.0);
    r.finish();
    if (spec.planes <= 0 || spec.sats_per_plane <= 0) {
      fail(path, "planes and sats_per_plane must be positive");
    }
    if (!(spec.altitude_m > 0.0)) fail(r.field("altitude_km"), "must be positive");
    try {
      built = build_walker(spec, anchor);
    } catch (const std::invalid_argument& e) {
      fail(path, e.what());
    }
  } else if (kind == "tle") {
    spec.kind = LayerKind::tle;
    fs::path tle = r.string("tle_path");
    r.finish();
    if (tle.is_relative()) tle = base_dir / tle;
    spec.tle_path = tle;
    std::ifstream in(tle);
    if (!in) fail(r.field("tle_path"), "cannot open '" + tle.string() + "'");
    const TleParseResult parsed = parse_tle(in);
    if (parsed.partial()) {
      fail(r.field("tle_path"), tle.string() + ":" + std::to_string(parsed.error->line) + ": " +
                                    parsed.error->message);
    }
    try {
      built = build_tle_layer(spec, parsed.records);
    } catch (const std::invalid_argument& e) {
      fail(path, e.what());
    }
  } else {
    fail(r.field("kind"), "expected \"walker\" or \"tle\", got \"" + kind + "\"");
  }
  spec_out = built.spec;
  return built;
}

Scenario build(const toml::table& root, const fs::path& base_dir, const std::string& source) {
  Scenario sc;
  sc.source = source;
  TableReader top(root, "");

  // [mission]
  const toml::table& mission_t = top.table("mission");
  TableReader m(mission_t, "mission");
  MissionSpec& spec = sc.mission;
  try {
    spec.t_start = parse_utc(m.string("t_start"));
  } catch (const std::invalid_argument& e) {
    fail("mission.t_start", e.what());
  }
  try {
    spec.t_stop = parse_utc(m.string("t_stop"));
  } catch (const std::invalid_argument& e) {
    fail("mission.t_stop", e.what());
  }
  const auto samples = m.opt_integer("samples");
  const auto interval = m.opt_number("sample_interval_s");
  if (samples && interval) fail("mission", "give either samples or sample_interval_s, not both");
  if (!samples && !interval) fail("mission.samples", "missing required key");
  if (samples) {
    if (*samples < 1) fail("mission.samples", "must be at least 1");
    spec.sample_count = static_cast<int>(*samples);
  } else {
    if (!(*interval > 0.0)) fail("mission.sample_interval_s", "must be positive");
    spec.sample_interval_s = *interval;
  }
  const auto targets = m.opt_integers("targets");
  const auto stride = m.opt_integer("target_stride");
  if (targets && stride) fail("mission", "give either targets or target_stride, not both");
  const auto schemes = m.opt_strings("schemes");
  const auto configs = m.opt_strings("configurations");
  m.finish();
  if (!(spec.t_stop > spec.t_start)) fail("mission.t_stop", "must be after t_start");

  if (schemes) {
    for (std::size_t k = 0; k < schemes->size(); ++k) {
      try {
        spec.schemes.push_back(parse_scheme((*schemes)[k]));
      } catch (const std::invalid_argument& e) {
        fail("mission.schemes[" + std::to_string(k) + "]", e.what());
      }
    }
  } else {
    spec.schemes = all_scheme_kinds();
  }

  // [sc]
  {
    TableReader s(top.table("sc"), "sc");
    spec.sc.lat_deg = s.number("lat_deg");
    spec.sc.lng_deg = s.number("lng_deg");
    spec.sc.alt_m = s.number_or("alt_m", 0.0);
    spec.sc.min_elevation_deg = s.number("min_elevation_deg");
    s.finish();
    if (!(spec.sc.lat_deg >= -90.0 && spec.sc.lat_deg <= 90.0)) {
      fail("sc.lat_deg", "out of range [-90, 90]");
    }
    if (!(spec.sc.lng_deg >= -180.0 && spec.sc.lng_deg <= 180.0)) {
      fail("sc.lng_deg", "out of range [-180, 180]");
    }
  }

  // [links]
  for (const auto& name : preset_names()) sc.link_configs.push_back(link_preset(name));
  if (const toml::table* links_t = top.opt_table("links")) {
    TableReader l(*links_t, "links");
    spec.omega0_deg = l.number_or("cross_layer_min_elevation_deg", spec.omega0_deg);
    const auto frame = l.opt_number("frame_size_bytes");
    const auto proc = l.opt_number("processing_delay_s");
    const auto queue = l.opt_number("queuing_delay_s");
    for (auto& cfg : sc.link_configs) {
      if (frame) cfg.frame_size_bytes = *frame;
      if (proc) cfg.processing_delay_s = *proc;
      if (queue) cfg.queuing_delay_s = *queue;
      if (const toml::table* o = l.opt_table(cfg.name)) {
        TableReader ov(*o, "links." + cfg.name);
        cfg.ground_space_rate = ov.number_or("ground_space_rate_bps", cfg.ground_space_rate);
        cfg.isl_rate = ov.number_or("isl_rate_bps", cfg.isl_rate);
        ov.finish();
      }
      try {
        validate(cfg);
      } catch (const std::invalid_argument& e) {
        fail("links", e.what());
      }
    }
    l.finish();
  }
  if (configs) {
    for (std::size_t k = 0; k < configs->size(); ++k) {
      const auto it = std::find_if(sc.link_configs.begin(), sc.link_configs.end(),
                                   [&](const LinkConfig& c) { return c.name == (*configs)[k]; });
      if (it == sc.link_configs.end()) {
        fail("mission.configurations[" + std::to_string(k) + "]",
             "unknown configuration '" + (*configs)[k] + "'");
      }
      spec.configurations.push_back(*it);
    }
  } else {
    spec.configurations = sc.link_configs;
  }

  // [[layers]]
  const toml::node* layers_n = top.node("layers");
  if (!layers_n) fail("layers", "missing required block [[layers]]");
  const toml::array* layers_a = layers_n->as_array();
  if (!layers_a || layers_a->empty()) fail("layers", "expected a non-empty array of tables");
  std::vector<BuiltLayer> built;
  for (std::size_t k = 0; k < layers_a->size(); ++k) {
    const std::string path = "layers[" + std::to_string(k) + "]";
    const toml::table* t = (*layers_a)[k].as_table();
    if (!t) fail(path, "expected a table");
    LayerSpec spec_out;
    built.push_back(read_layer(*t, path, base_dir, spec.t_start, spec_out));
    sc.layer_specs.push_back(spec_out);
  }
  try {
    sc.constellation = Constellation::assign_global_ids(std::move(built));
  } catch (const ConstellationError& e) {
    fail("layers", e.what());
  }

  // [output]
  sc.output_dir = base_dir / "results";
  if (const toml::table* out_t = top.opt_table("output")) {
    TableReader o(*out_t, "output");
    if (auto dir = o.opt_string("dir")) {
      fs::path p = *dir;
      sc.output_dir = p.is_relative() ? base_dir / p : p;
    }
    o.finish();
  }
  top.finish();

  // Targets need the constellation for the stride default.
  if (targets) {
    for (std::size_t k = 0; k < targets->size(); ++k) {
      const long long g = (*targets)[k];
      if (g < 1 || g > sc.constellation.size() ||
          sc.constellation.layer_of(static_cast<GlobalId>(g)).layer != kTargetLayer) {
        fail("mission.targets[" + std::to_string(k) + "]",
             "target " + std::to_string(g) + " not on layer 1");
      }
      spec.targets.push_back(static_cast<GlobalId>(g));
    }
  } else {
    const long long s = stride.value_or(4);
    if (s < 1) fail("mission.target_stride", "must be at least 1");
    sc.target_stride = static_cast<int>(s);
    spec.targets = default_targets(sc.constellation.layer(kTargetLayer).size(), sc.target_stride);
  }
  revalidate(sc);
  return sc;
}

}  // namespace

void revalidate(Scenario& scenario) {
  try {
    validate(scenario.mission, scenario.constellation);
  } catch (const MissionError& e) {
    throw ScenarioError(e.what());
  }
}

Scenario load_scenario_string(const std::string& text, const fs::path& base_dir,
                              const std::string& source_name) {
  toml::table root;
  try {
    root = toml::parse(text, source_name);
  } catch (const toml::parse_error& e) {
    const auto& where = e.source().begin;
    throw ScenarioError(source_name + ":" + std::to_string(where.line) + ":" +
                        std::to_string(where.column) + ": " + std::string(e.description()));
  }
  return build(root, base_dir, source_name);
}

Scenario load_scenario(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScenarioError(path.string() + ": cannot open scenario file");
  std::ostringstream buf;
  buf << in.rdbuf();
  const fs::path base = path.has_parent_path() ? path.parent_path() : fs::path(".");
  Scenario s = load_scenario_string(buf.str(), base, path.string());
  s.source = path;
  return s;
}

}  // namespace cld
