#include "cld/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <random>
#include <thread>

namespace cld {

void validate(const MissionSpec& spec, const Constellation& c) {
  if (!(spec.t_stop > spec.t_start)) throw MissionError("mission: t_stop must be after t_start");
  if (spec.sample_interval_s) {
    if (!(*spec.sample_interval_s > 0.0)) {
      throw MissionError("mission: sample interval must be positive");
    }
  } else if (spec.sample_count < 1) {
    throw MissionError("mission: sample count must be at least 1");
  }
  if (spec.schemes.empty()) throw MissionError("mission: no schemes selected");
  if (spec.configurations.empty()) throw MissionError("mission: no configurations selected");
  if (spec.targets.empty()) throw MissionError("mission: no targets selected");
  for (const auto& link : spec.configurations) {
    try {
      validate(link);
    } catch (const std::invalid_argument& e) {
      throw MissionError(e.what());
    }
  }
  for (GlobalId g : spec.targets) {
    if (g < 1 || g > c.size() || c.layer_of(g).layer != kTargetLayer) {
      throw MissionError("target " + std::to_string(g) + " not on layer 1");
    }
  }
  for (SchemeKind k : spec.schemes) {
    for (int u : make_scheme(k).layers_used) {
      if (u > c.layer_count()) {
        throw MissionError("scheme " + std::string(to_string(k)) + " needs layer " +
                           std::to_string(u) + " but the constellation has " +
                           std::to_string(c.layer_count()));
      }
    }
  }
}

std::vector<Epoch> sample_times(const MissionSpec& spec) {
  const double span = spec.t_stop - spec.t_start;
  std::vector<Epoch> out;
  if (spec.sample_interval_s) {
    const double step = *spec.sample_interval_s;
    for (int k = 0;; ++k) {
      const double offset = k * step;
      if (!(offset < span)) break;
      out.push_back(spec.t_start + offset);
    }
    return out;
  }
  const double step = span / spec.sample_count;
  out.reserve(static_cast<std::size_t>(spec.sample_count));
  for (int k = 0; k < spec.sample_count; ++k) out.push_back(spec.t_start + k * step);
  return out;
}

std::vector<GlobalId> default_targets(int layer_size, int stride) {
  if (stride < 1) throw std::invalid_argument("target stride must be at least 1");
  std::vector<GlobalId> out;
  for (GlobalId g = 1; g <= layer_size; g += stride) out.push_back(g);
  return out;
}

MissionRun run_mission(const Constellation& c, const MissionSpec& spec,
                       const RunOptions& options) {
  validate(spec, c);
  MissionRun run;
  run.times = sample_times(spec);
  const auto n_samples = run.times.size();
  const auto n_schemes = spec.schemes.size();
  const auto n_targets = spec.targets.size();
  const auto n_configs = spec.configurations.size();
  const RoutingParams params = spec.routing();
  const EcefPosition sc = spec.sc.ecef();

  std::vector<Scheme> schemes;
  for (SchemeKind k : spec.schemes) schemes.push_back(make_scheme(k));

  // Cell layout: [scheme][config][target][sample]
  auto cell = [&](std::size_t s, std::size_t k, std::size_t tg, std::size_t i) {
    return ((s * n_configs + k) * n_targets + tg) * n_samples + i;
  };
  auto route_cell = [&](std::size_t s, std::size_t tg, std::size_t i) {
    return (s * n_targets + tg) * n_samples + i;
  };
  std::vector<SampleRecord> records(n_schemes * n_configs * n_targets * n_samples);
  std::vector<RouteRecord> routes;
  if (options.keep_routes) routes.resize(n_schemes * n_targets * n_samples);

  std::vector<std::size_t> order(n_samples);
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (options.shuffle_seed) {
    std::mt19937_64 rng(*options.shuffle_seed);
    std::shuffle(order.begin(), order.end(), rng);
  }

  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;

  auto evaluate_sample = [&](std::size_t i) {
    const Epoch t = run.times[i];
    const StateAtT state = snapshot(c, t, sc);
    for (std::size_t s = 0; s < n_schemes; ++s) {
      const int q = q_indicator(schemes[s], state, c, params);
      for (std::size_t tg = 0; tg < n_targets; ++tg) {
        const GlobalId dsn = spec.targets[tg];
        RouteResult rr;
        try {
          rr = compute_route(c, state, schemes[s], dsn, params);
        } catch (const std::exception& e) {
          throw MissionError(std::string(to_string(spec.schemes[s])) + ", target " +
                             std::to_string(dsn) + ", t=" + format_iso8601(t) + ": " + e.what());
        }
        std::optional<PathLength> path;
        if (rr.route) path = path_length(*rr.route, c);
        for (std::size_t k = 0; k < n_configs; ++k) {
          SampleRecord& rec = records[cell(s, k, tg, i)];
          rec.t = t;
          rec.reachable = rr.reachable();
          if (rr.route) {
            rec.hops = rr.route->hop_count();
            rec.path_m = path->total_m;
            rec.latency_s = latency(*rr.route, spec.configurations[k]);
          }
        }
        if (options.keep_routes) {
          routes[route_cell(s, tg, i)] =
              RouteRecord{spec.schemes[s], dsn, static_cast<int>(i), std::move(rr.route), q};
        }
      }
    }
  };

  auto worker = [&]() {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= order.size()) return;
      {
        std::lock_guard lock(error_mutex);
        if (first_error) return;
      }
      try {
        evaluate_sample(order[k]);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  const int threads = std::max(1, options.threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int k = 0; k < threads; ++k) pool.emplace_back(worker);
  }
  if (first_error) std::rethrow_exception(first_error);

  run.results.reserve(n_schemes * n_configs * n_targets);
  for (std::size_t s = 0; s < n_schemes; ++s) {
    for (std::size_t k = 0; k < n_configs; ++k) {
      for (std::size_t tg = 0; tg < n_targets; ++tg) {
        MissionResult r;
        r.scheme = spec.schemes[s];
        r.configuration = spec.configurations[k].name;
        r.dsn = spec.targets[tg];
        const auto first = records.begin() + static_cast<std::ptrdiff_t>(cell(s, k, tg, 0));
        r.samples.assign(first, first + static_cast<std::ptrdiff_t>(n_samples));
        run.results.push_back(std::move(r));
      }
    }
  }
  run.overall = aggregate(run.results);
  run.routes = std::move(routes);
  return run;
}

}  // namespace cld
