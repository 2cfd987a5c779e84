#pragma once

// Test-only reference implementations. These deliberately avoid the library's
// own helpers (elevation, neighbors, latency) so they can be used as oracles.

#include <string>
#include <vector>

#include <Eigen/Core>

#include "cld/access.hpp"
#include "cld/constellation.hpp"
#include "cld/metrics.hpp"
#include "cld/routing.hpp"

namespace oracle {

/// BFS hop distances from src (0-based plane-major index) on a planes x sigma torus.
std::vector<int> torus_bfs(int planes, int sigma, int src);

/// True when local indices a and b (1-based, plane-major) are 4-neighbors on the torus.
bool torus_adjacent(int planes, int sigma, int a, int b);

/// Elevation [deg] of target above observer's horizon, from first principles.
double elevation_deg(const Eigen::Vector3d& observer, const Eigen::Vector3d& target);

/// Minimum distance from the origin to segment a-b.
double segment_origin_distance(const Eigen::Vector3d& a, const Eigen::Vector3d& b);

/// dot(x3 x x1, x3 x x2) > 0 with x1 = cand - from, x2 = dsn - from, x3 = from - sc.
bool same_side(const Eigen::Vector3d& sc, const Eigen::Vector3d& from,
               const Eigen::Vector3d& cand, const Eigen::Vector3d& dsn);

/// Latency re-evaluated hop by hop.
double latency(const cld::Route& route, const cld::LinkConfig& link);

/// Every violation of the route invariants found by re-checking each hop
/// against the snapshot; empty when the route is valid.
std::vector<std::string> validate_route(const cld::Route& route, const cld::StateAtT& state,
                                        const cld::Constellation& c, const cld::Scheme& scheme,
                                        const cld::RoutingParams& params);

/// Descent boundaries of a non-fallback route whose chosen node is on the wrong side.
std::vector<std::string> check_same_sign(const cld::Route& route, const cld::StateAtT& state);

}  // namespace oracle
