#include "cld/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cld {

namespace {

int config_rank(const std::string& name) {
  const auto& names = preset_names();
  const auto it = std::find(names.begin(), names.end(), name);
  return it == names.end() ? static_cast<int>(names.size()) : static_cast<int>(it - names.begin());
}

std::optional<double> mean_of(const std::vector<double>& v) {
  if (v.empty()) return std::nullopt;
  double sum = 0.0;
  for (double x : v) sum += x;
  return sum / static_cast<double>(v.size());
}

}  // namespace

LinkConfig link_preset(const std::string& name) {
  if (name == "I") return LinkConfig{"I", 324e6, 324e6};
  if (name == "II") return LinkConfig{"II", 1.8e9, 10e9};
  if (name == "III") return LinkConfig{"III", 619.2e6, 10e9};
  throw std::invalid_argument("unknown link configuration '" + name + "'");
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"I", "II", "III"};
  return names;
}

void validate(const LinkConfig& link) {
  if (!(link.ground_space_rate > 0.0) || !(link.isl_rate > 0.0)) {
    throw std::invalid_argument("configuration " + link.name + ": rates must be positive");
  }
  if (!(link.frame_size_bytes > 0.0)) {
    throw std::invalid_argument("configuration " + link.name + ": frame size must be positive");
  }
  if (!(link.processing_delay_s >= 0.0) || !(link.queuing_delay_s >= 0.0)) {
    throw std::invalid_argument("configuration " + link.name + ": delays must be non-negative");
  }
}

PathLength path_length(const Route& route, const Constellation& c) {
  PathLength p;
  for (const Hop& h : route.hops) {
    p.total_m += h.length_m;
    p.by_segment_layer[{h.segment, c.layer_of(h.to).layer}] += h.length_m;
  }
  for (const auto& [key, len] : p.by_segment_layer) p.segment_sum_m += len;
  if (std::abs(p.total_m - p.segment_sum_m) > 1e-6 * std::max(1.0, p.total_m)) {
    throw std::logic_error("path_length: hop sum and segment sum disagree");
  }
  return p;
}

double latency(const Route& route, const LinkConfig& link) {
  const double frame_bits = link.frame_size_bytes * 8.0;
  double total = 0.0;
  for (const Hop& h : route.hops) {
    total += h.length_m / kSpeedOfLight + frame_bits / link.rate(h.link) + link.queuing_delay_s +
             link.processing_delay_s;
  }
  return total;
}

int q_indicator(const Scheme& scheme, const StateAtT& state, const Constellation& c,
                const RoutingParams& params) {
  return accessible_set(state, scheme.access_layers, params.sc_min_elevation_deg, c).empty() ? 0
                                                                                             : 1;
}

double resilience(std::span<const int> per_sample_q, std::optional<double> mean_hops) {
  if (per_sample_q.empty() || !mean_hops || !(*mean_hops > 0.0)) return 0.0;
  double sum = 0.0;
  for (int q : per_sample_q) sum += q;
  return sum / (*mean_hops * static_cast<double>(per_sample_q.size()));
}

void summarize(MissionResult& r) {
  std::vector<double> lat, path, hops;
  std::vector<int> q;
  q.reserve(r.samples.size());
  for (const auto& s : r.samples) {
    q.push_back(s.reachable ? 1 : 0);
    if (!s.reachable) continue;
    lat.push_back(s.latency_s);
    path.push_back(s.path_m);
    hops.push_back(static_cast<double>(s.hops));
  }
  r.reachable_count = static_cast<int>(lat.size());
  r.mean_latency_s = mean_of(lat);
  r.mean_path_m = mean_of(path);
  r.mean_hops = mean_of(hops);
  r.resilience = resilience(q, r.mean_hops);
}

bool result_order(const MissionResult& a, const MissionResult& b) {
  if (a.scheme != b.scheme) return a.scheme < b.scheme;
  const int ca = config_rank(a.configuration), cb = config_rank(b.configuration);
  if (ca != cb) return ca < cb;
  if (a.configuration != b.configuration) return a.configuration < b.configuration;
  return a.dsn < b.dsn;
}

std::vector<OverallSummary> aggregate(std::vector<MissionResult>& results) {
  std::stable_sort(results.begin(), results.end(), result_order);
  std::vector<OverallSummary> out;
  std::size_t k = 0;
  while (k < results.size()) {
    std::size_t end = k;
    while (end < results.size() && results[end].scheme == results[k].scheme &&
           results[end].configuration == results[k].configuration) {
      ++end;
    }
    OverallSummary s;
    s.scheme = results[k].scheme;
    s.configuration = results[k].configuration;
    std::vector<double> lat, path, hops;
    double res = 0.0, reach = 0.0;
    for (std::size_t j = k; j < end; ++j) {
      MissionResult& r = results[j];
      summarize(r);
      if (r.mean_latency_s) lat.push_back(*r.mean_latency_s);
      if (r.mean_path_m) path.push_back(*r.mean_path_m);
      if (r.mean_hops) hops.push_back(*r.mean_hops);
      res += r.resilience;
      if (!r.samples.empty()) {
        reach += static_cast<double>(r.reachable_count) / static_cast<double>(r.samples.size());
      }
    }
    s.target_count = static_cast<int>(end - k);
    s.mean_latency_s = mean_of(lat);
    s.mean_path_m = mean_of(path);
    s.mean_hops = mean_of(hops);
    s.mean_resilience = res / static_cast<double>(s.target_count);
    s.reachable_fraction = reach / static_cast<double>(s.target_count);
    out.push_back(std::move(s));
    k = end;
  }
  return out;
}

}  // namespace cld
