#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cld/access.hpp"
#include "cld/constellation.hpp"

namespace cld {

class RoutingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// No cross-layer candidate exists below some satellite at this instant.
class DescentBlocked : public RoutingError {
 public:
  DescentBlocked(GlobalId from, int lower_layer)
      : RoutingError("descent blocked: no layer-" + std::to_string(lower_layer) +
                     " satellite visible from satellite " + std::to_string(from)),
        from_(from),
        lower_layer_(lower_layer) {}

  GlobalId from() const { return from_; }
  int lower_layer() const { return lower_layer_; }

 private:
  GlobalId from_;
  int lower_layer_;
};

enum class SchemeKind { cld_i, cld_ii, cld_iii, noncld_meo, noncld_geo };

struct Scheme {
  SchemeKind kind = SchemeKind::cld_i;
  std::vector<int> layers_used;    // ascending
  std::vector<int> access_layers;  // layers the SC may uplink to

  bool is_cld() const;
  std::string_view name() const;
};

inline constexpr int kTargetLayer = 1;
inline constexpr int kMeoLayer = 3;
inline constexpr int kGeoLayer = 4;

Scheme make_scheme(SchemeKind kind);
/// Accepts "CLD-I", "CLD-II", "CLD-III", "NONCLD-MEO", "NONCLD-GEO" (case-insensitive).
SchemeKind parse_scheme(std::string_view name);
std::string_view to_string(SchemeKind kind);
const std::vector<SchemeKind>& all_scheme_kinds();

struct RoutingParams {
  double sc_min_elevation_deg = 25.0;
  double omega0_deg = 10.0;
};

enum class LinkClass { ground_space, isl };
enum class Segment { uplink, r1, r2, r3 };

/// One link of a route; from == 0 denotes the SGS.
struct Hop {
  GlobalId from = 0;
  GlobalId to = 0;
  LinkClass link = LinkClass::isl;
  Segment segment = Segment::uplink;
  double length_m = 0.0;
};

struct Route {
  Epoch t;
  std::vector<GlobalId> r1;  // SSN..DSN when the SC reaches the target layer
  std::vector<GlobalId> r2;  // SSN..TSN cross-layer chain
  std::vector<GlobalId> r3;  // TSN..DSN, empty when TSN == DSN
  std::vector<Hop> hops;     // hops[0] is the SGS->SSN uplink
  GlobalId ssn = 0;
  GlobalId dsn = 0;
  std::optional<GlobalId> tsn;
  /// Some descent boundary had no same-sign candidate and used the nearest A' member.
  bool fallback = false;

  /// Concatenated satellite sequence SSN..DSN without duplicates.
  std::vector<GlobalId> nodes() const;
  /// n_h: satellite-to-satellite hops plus the uplink.
  int hop_count() const { return static_cast<int>(hops.size()); }
};

/// Route or the reason the destination is unreachable at this instant.
struct RouteResult {
  std::optional<Route> route;
  std::string unreachable_reason;

  bool reachable() const { return route.has_value(); }
};

/// Minimum SC slant range among the candidates on layer u; ties go to the lower id.
GlobalId get_closest_sat_to_sc(std::span<const GlobalId> candidates, int layer,
                               const StateAtT& state, const Constellation& c);

struct TsnChoice {
  GlobalId id = 0;
  bool fallback = false;
};

/// Picks the satellite on lower_layer to descend to from `from`. Returns the
/// destination itself when it is a candidate; otherwise the nearest candidate on
/// the destination's side of the (SC, from, DSN) plane; otherwise the nearest
/// candidate, flagged. Throws DescentBlocked when there are no candidates.
TsnChoice get_best_under_layer_sat(GlobalId from, GlobalId dsn, int lower_layer,
                                   const StateAtT& state, const Constellation& c,
                                   const RoutingParams& params);
/// Same with lower_layer = layer(from) - 1.
TsnChoice get_best_under_layer_sat(GlobalId from, GlobalId dsn, const StateAtT& state,
                                   const Constellation& c, const RoutingParams& params);

/// Dimension-ordered torus route (in-plane ring first, then across planes),
/// shorter direction on each ring with ties going forward. Global ids, src first.
std::vector<GlobalId> get_intra_layer_route(GlobalId src, GlobalId dst, const Constellation& c);

struct Descent {
  std::vector<GlobalId> chain;  // ssn first, tsn last
  bool fallback = false;
};

/// Descends boundary by boundary through the given layers (those strictly
/// between the SSN's layer and the destination's, plus the destination's layer).
Descent get_cross_layer_route(GlobalId ssn, GlobalId dsn, std::span<const int> layers_used,
                              const StateAtT& state, const Constellation& c,
                              const RoutingParams& params);

/// CLD route for a destination on the target layer (CLD-I/II/III).
RouteResult cld_prepare(const Constellation& c, const StateAtT& state, const Scheme& scheme,
                        GlobalId dsn, const RoutingParams& params);

/// Baseline: uplink through MEO only, nearest visible target-layer satellite, then intra-layer.
RouteResult route_non_cld_meo(const Constellation& c, const StateAtT& state, GlobalId dsn,
                              const RoutingParams& params);

/// Baseline: uplink through GEO only, then straight down to the destination,
/// relaying over one GEO-GEO link when the entry satellite cannot see it.
RouteResult route_non_cld_geo(const Constellation& c, const StateAtT& state, GlobalId dsn,
                              const RoutingParams& params);

/// Dispatches on the scheme kind.
RouteResult compute_route(const Constellation& c, const StateAtT& state, const Scheme& scheme,
                          GlobalId dsn, const RoutingParams& params);

}  // namespace cld
