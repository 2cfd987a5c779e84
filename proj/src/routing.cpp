#include "cld/routing.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

namespace cld {

namespace {

constexpr SchemeKind kAllSchemes[] = {SchemeKind::cld_i, SchemeKind::cld_ii, SchemeKind::cld_iii,
                                      SchemeKind::noncld_meo, SchemeKind::noncld_geo};

std::string upper(std::string_view s) {
  std::string out(s);
  for (auto& ch : out) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  return out;
}

// Nearest to `from` among ids satisfying pred; ties go to the lower id.
template <typename Pred>
std::optional<GlobalId> nearest(std::span<const GlobalId> ids, const EcefPosition& from,
                                const StateAtT& state, Pred pred) {
  std::optional<GlobalId> best;
  double best_range = std::numeric_limits<double>::infinity();
  for (GlobalId g : ids) {
    if (!pred(g)) continue;
    const double r = slant_range(from, state.position(g));
    if (r < best_range || (r == best_range && best && g < *best)) {
      best = g;
      best_range = r;
    }
  }
  return best;
}

void append_hops(Route& route, const std::vector<GlobalId>& chain, Segment seg,
                 const StateAtT& state) {
  for (std::size_t k = 1; k < chain.size(); ++k) {
    route.hops.push_back(Hop{chain[k - 1], chain[k], LinkClass::isl, seg,
                             slant_range(state.position(chain[k - 1]),
                                         state.position(chain[k]))});
  }
}

Route start_route(const StateAtT& state, GlobalId ssn, GlobalId dsn) {
  Route r;
  r.t = state.t;
  r.ssn = ssn;
  r.dsn = dsn;
  r.hops.push_back(Hop{0, ssn, LinkClass::ground_space, Segment::uplink,
                       slant_range(state.sc_position, state.position(ssn))});
  return r;
}

// R2 = chain, R3 = intra-layer tail from its last node unless that node is the DSN.
Route descent_route(const Constellation& c, const StateAtT& state, const Descent& descent,
                    GlobalId dsn) {
  Route r = start_route(state, descent.chain.front(), dsn);
  r.r2 = descent.chain;
  r.tsn = descent.chain.back();
  r.fallback = descent.fallback;
  append_hops(r, r.r2, Segment::r2, state);
  if (*r.tsn != dsn) {
    r.r3 = get_intra_layer_route(*r.tsn, dsn, c);
    append_hops(r, r.r3, Segment::r3, state);
  }
  return r;
}

void require_target_layer(const Constellation& c, GlobalId dsn) {
  if (c.layer_of(dsn).layer != kTargetLayer) {
    throw RoutingError("destination " + std::to_string(dsn) + " is not on the target layer");
  }
}

RouteResult unreachable(std::string why) { return RouteResult{std::nullopt, std::move(why)}; }

}  // namespace

bool Scheme::is_cld() const {
  return kind == SchemeKind::cld_i || kind == SchemeKind::cld_ii || kind == SchemeKind::cld_iii;
}

std::string_view Scheme::name() const { return to_string(kind); }

Scheme make_scheme(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::cld_i:
      return {kind, {1, 2, 3, 4}, {1, 2, 3, 4}};
    case SchemeKind::cld_ii:
      return {kind, {1, kMeoLayer}, {1, kMeoLayer}};
    case SchemeKind::cld_iii:
      return {kind, {1, kGeoLayer}, {1, kGeoLayer}};
    case SchemeKind::noncld_meo:
      return {kind, {1, kMeoLayer}, {kMeoLayer}};
    case SchemeKind::noncld_geo:
      return {kind, {1, kGeoLayer}, {kGeoLayer}};
  }
  throw RoutingError("unknown scheme");
}

std::string_view to_string(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::cld_i: return "CLD-I";
    case SchemeKind::cld_ii: return "CLD-II";
    case SchemeKind::cld_iii: return "CLD-III";
    case SchemeKind::noncld_meo: return "NONCLD-MEO";
    case SchemeKind::noncld_geo: return "NONCLD-GEO";
  }
  return "?";
}

SchemeKind parse_scheme(std::string_view name) {
  const std::string u = upper(name);
  for (SchemeKind k : kAllSchemes) {
    if (u == to_string(k)) return k;
  }
  throw std::invalid_argument("unknown scheme '" + std::string(name) + "'");
}

const std::vector<SchemeKind>& all_scheme_kinds() {
  static const std::vector<SchemeKind> kinds(std::begin(kAllSchemes), std::end(kAllSchemes));
  return kinds;
}

std::vector<GlobalId> Route::nodes() const {
  if (!r1.empty()) return r1;
  std::vector<GlobalId> out = r2;
  if (!r3.empty()) out.insert(out.end(), r3.begin() + 1, r3.end());
  return out;
}

GlobalId get_closest_sat_to_sc(std::span<const GlobalId> candidates, int layer,
                               const StateAtT& state, const Constellation& c) {
  const auto best = nearest(candidates, state.sc_position, state,
                            [&](GlobalId g) { return c.layer_of(g).layer == layer; });
  if (!best) {
    throw RoutingError("get_closest_sat_to_sc: no candidate on layer " + std::to_string(layer));
  }
  return *best;
}

TsnChoice get_best_under_layer_sat(GlobalId from, GlobalId dsn, int lower_layer,
                                   const StateAtT& state, const Constellation& c,
                                   const RoutingParams& params) {
  const auto candidates = cross_layer_candidates(from, lower_layer, state, c, params.omega0_deg);
  if (candidates.empty()) throw DescentBlocked(from, lower_layer);
  if (std::binary_search(candidates.begin(), candidates.end(), dsn)) return {dsn, false};

  const EcefPosition& from_pos = state.position(from);
  const EcefPosition& dsn_pos = state.position(dsn);
  const auto same_side = nearest(candidates, from_pos, state, [&](GlobalId g) {
    return directional_angles(state.sc_position, from_pos, state.position(g), dsn_pos)
        .same_sign();
  });
  if (same_side) return {*same_side, false};
  return {*nearest(candidates, from_pos, state, [](GlobalId) { return true; }), true};
}

TsnChoice get_best_under_layer_sat(GlobalId from, GlobalId dsn, const StateAtT& state,
                                   const Constellation& c, const RoutingParams& params) {
  return get_best_under_layer_sat(from, dsn, c.layer_of(from).layer - 1, state, c, params);
}

std::vector<GlobalId> get_intra_layer_route(GlobalId src, GlobalId dst, const Constellation& c) {
  const SatelliteId s = c.layer_of(src);
  const SatelliteId d = c.layer_of(dst);
  if (s.layer != d.layer) {
    throw RoutingError("get_intra_layer_route: " + std::to_string(src) + " and " +
                       std::to_string(dst) + " are on different layers");
  }
  const Layer& layer = c.layer(s.layer);
  if (layer.spec.kind != LayerKind::walker) {
    throw RoutingError("get_intra_layer_route: layer " + std::to_string(s.layer) +
                       " has no grid topology");
  }
  const int planes = layer.spec.planes, sigma = layer.spec.sats_per_plane;
  WalkerSlot at = c.slot_of(s.layer, s.local_index);
  const WalkerSlot goal = c.slot_of(d.layer, d.local_index);

  auto step_toward = [](int from, int to, int ring) {
    const int forward = ((to - from) % ring + ring) % ring;
    return forward <= ring - forward ? 1 : -1;
  };

  std::vector<GlobalId> route{src};
  if (at.slot != goal.slot) {
    const int dir = step_toward(at.slot, goal.slot, sigma);
    while (at.slot != goal.slot) {
      at.slot = (at.slot + dir + sigma) % sigma;
      route.push_back(c.global_id(s.layer, c.local_index_of(s.layer, at)));
    }
  }
  if (at.plane != goal.plane) {
    const int dir = step_toward(at.plane, goal.plane, planes);
    while (at.plane != goal.plane) {
      at.plane = (at.plane + dir + planes) % planes;
      route.push_back(c.global_id(s.layer, c.local_index_of(s.layer, at)));
    }
  }
  return route;
}

Descent get_cross_layer_route(GlobalId ssn, GlobalId dsn, std::span<const int> layers_used,
                              const StateAtT& state, const Constellation& c,
                              const RoutingParams& params) {
  const int top = c.layer_of(ssn).layer;
  const int bottom = c.layer_of(dsn).layer;
  if (top <= bottom) {
    throw RoutingError("get_cross_layer_route: SSN must be above the destination layer");
  }
  std::vector<int> below;
  for (int u : layers_used) {
    if (u < top && u > bottom) below.push_back(u);
  }
  std::sort(below.begin(), below.end(), std::greater<>());
  below.push_back(bottom);

  Descent d;
  d.chain.push_back(ssn);
  for (int lower : below) {
    const TsnChoice next = get_best_under_layer_sat(d.chain.back(), dsn, lower, state, c, params);
    d.chain.push_back(next.id);
    d.fallback = d.fallback || next.fallback;
  }
  return d;
}

RouteResult cld_prepare(const Constellation& c, const StateAtT& state, const Scheme& scheme,
                        GlobalId dsn, const RoutingParams& params) {
  if (!scheme.is_cld()) throw RoutingError("cld_prepare: not a CLD scheme");
  require_target_layer(c, dsn);
  const int target = c.layer_of(dsn).layer;

  // Scan the scheme's layers upward from the destination's layer.
  std::vector<int> layers;
  for (int u : scheme.access_layers) {
    if (u >= target) layers.push_back(u);
  }
  std::sort(layers.begin(), layers.end());
  const auto accessible = accessible_set(state, layers, params.sc_min_elevation_deg, c);
  if (accessible.empty()) return unreachable("no scheme satellite accessible by the SC");
  const int u_min = c.layer_of(accessible.front()).layer;

  if (u_min == target) {
    const GlobalId ssn = get_closest_sat_to_sc(accessible, u_min, state, c);
    Route r = start_route(state, ssn, dsn);
    r.r1 = get_intra_layer_route(ssn, dsn, c);
    append_hops(r, r.r1, Segment::r1, state);
    return RouteResult{std::move(r), {}};
  }

  // Entry candidates by (layer, SC range, id); the first one whose descent is not
  // blocked becomes the SSN, so the nearest lowest-layer satellite wins when it can.
  std::vector<std::pair<double, GlobalId>> order;
  for (GlobalId g : accessible) {
    order.emplace_back(slant_range(state.sc_position, state.position(g)), g);
  }
  std::sort(order.begin(), order.end(), [&](const auto& a, const auto& b) {
    const int la = c.layer_of(a.second).layer, lb = c.layer_of(b.second).layer;
    if (la != lb) return la < lb;
    return a < b;
  });
  std::string first_block;
  for (const auto& [range, ssn] : order) {
    try {
      const Descent descent =
          get_cross_layer_route(ssn, dsn, scheme.layers_used, state, c, params);
      return RouteResult{descent_route(c, state, descent, dsn), {}};
    } catch (const DescentBlocked& e) {
      if (first_block.empty()) first_block = e.what();
    }
  }
  return unreachable(first_block);
}

RouteResult route_non_cld_meo(const Constellation& c, const StateAtT& state, GlobalId dsn,
                              const RoutingParams& params) {
  require_target_layer(c, dsn);
  const int meo[] = {kMeoLayer};
  const auto accessible = accessible_set(state, meo, params.sc_min_elevation_deg, c);
  if (accessible.empty()) return unreachable("no MEO satellite accessible by the SC");
  const GlobalId ssn = get_closest_sat_to_sc(accessible, kMeoLayer, state, c);
  const auto candidates =
      cross_layer_candidates(ssn, kTargetLayer, state, c, params.omega0_deg);
  if (candidates.empty()) return unreachable(DescentBlocked(ssn, kTargetLayer).what());
  const GlobalId tsn =
      *nearest(candidates, state.position(ssn), state, [](GlobalId) { return true; });
  return RouteResult{descent_route(c, state, Descent{{ssn, tsn}, false}, dsn), {}};
}

RouteResult route_non_cld_geo(const Constellation& c, const StateAtT& state, GlobalId dsn,
                              const RoutingParams& params) {
  require_target_layer(c, dsn);
  const int geo[] = {kGeoLayer};
  const auto accessible = accessible_set(state, geo, params.sc_min_elevation_deg, c);
  if (accessible.empty()) return unreachable("no GEO satellite accessible by the SC");
  const GlobalId ssn = get_closest_sat_to_sc(accessible, kGeoLayer, state, c);
  const EcefPosition& dsn_pos = state.position(dsn);
  const EcefPosition& ssn_pos = state.position(ssn);

  std::vector<GlobalId> chain{ssn};
  if (!cross_layer_feasible(ssn_pos, dsn_pos, params.omega0_deg)) {
    const Layer& layer = c.layer(kGeoLayer);
    std::optional<GlobalId> relay;
    double best = std::numeric_limits<double>::infinity();
    for (GlobalId g = layer.first_global_id; g <= layer.last_global_id(); ++g) {
      if (g == ssn) continue;
      const EcefPosition& p = state.position(g);
      if (!line_of_sight_clear(ssn_pos, p) ||
          !cross_layer_feasible(p, dsn_pos, params.omega0_deg)) {
        continue;
      }
      const double len = slant_range(ssn_pos, p) + slant_range(p, dsn_pos);
      if (len < best) {
        best = len;
        relay = g;
      }
    }
    if (!relay) return unreachable("destination not visible from any reachable GEO satellite");
    chain.push_back(*relay);
  }
  chain.push_back(dsn);
  return RouteResult{descent_route(c, state, Descent{chain, false}, dsn), {}};
}

RouteResult compute_route(const Constellation& c, const StateAtT& state, const Scheme& scheme,
                          GlobalId dsn, const RoutingParams& params) {
  switch (scheme.kind) {
    case SchemeKind::cld_i:
    case SchemeKind::cld_ii:
    case SchemeKind::cld_iii:
      return cld_prepare(c, state, scheme, dsn, params);
    case SchemeKind::noncld_meo:
      return route_non_cld_meo(c, state, dsn, params);
    case SchemeKind::noncld_geo:
      return route_non_cld_geo(c, state, dsn, params);
  }
  throw RoutingError("unknown scheme");
}

}  // namespace cld
