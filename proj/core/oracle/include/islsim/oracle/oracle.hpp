#pragma once

// Slow reference implementations for small instances. Everything here is computed
// from Cartesian positions and exhaustive enumeration, sharing no arithmetic with
// the fast paths it checks.

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "islsim/geometry.hpp"
#include "islsim/graph.hpp"
#include "islsim/linkbudget.hpp"

namespace islsim::oracle {

std::array<double, 3> cartesian(const ConstellationConfig& cfg, int plane, double phase);
double cartesian_distance(const Constellation& c, int u, int v);

/// Direction of v seen from u: sign of v's projection onto u's orbit normal.
Direction direction(const Constellation& c, int u, int v);

/// Linear path loss; +inf without line of sight, 1 from a satellite to itself.
double path_loss(const Constellation& c, const RadioConfig& cfg, int from, int rx);

/// Every satellite uses each direction at most once and at most Q links overall,
/// and no link has an undefined direction.
bool permissible(const Constellation& c, const std::vector<Edge>& pairs, int transceivers);

/// Interference at rx, maximized over all 3^M activations of the other pairs holding k
/// (each idle, or exactly one endpoint transmitting).
double exhaustive_interference(const Constellation& c, const RadioConfig& cfg, const std::vector<Edge>& pairs,
                               const std::vector<int>& resources, std::size_t pair, int rx);

/// Worst-case rate from `tx` to the other endpoint of pairs[pair], minimizing the SINR
/// over every activation, after the access-scheme adjustment.
double exhaustive_rate(const Constellation& c, const RadioConfig& cfg, const ResourceSet& rs,
                       const std::vector<Edge>& pairs, const std::vector<int>& resources, std::size_t pair, int tx);

/// Sum of both directed worst-case rates over all pairs.
double exhaustive_value(const Constellation& c, const RadioConfig& cfg, const ResourceSet& rs,
                        const std::vector<Edge>& pairs, const std::vector<int>& resources);

struct BestAllocation {
  std::vector<int> resources;
  double value = 0.0;
};

/// Enumerates all K^M assignments.
BestAllocation best_allocation(const Constellation& c, const RadioConfig& cfg, const ResourceSet& rs,
                               const std::vector<Edge>& pairs);

/// Greedy resource choice over `pairs` in the given order: each pair takes the smallest
/// k maximizing exhaustive_value of the pairs placed so far.
std::vector<int> greedy_allocation(const Constellation& c, const RadioConfig& cfg, const ResourceSet& rs,
                                   const std::vector<Edge>& pairs);

/// Maximum-weight permissible matching over the edges reaching min_rate, by
/// branch and bound over include/exclude decisions.
std::vector<Edge> best_matching(const Constellation& c, const FeasibilityGraph& g, int transceivers,
                                double min_rate);

double weight(const std::vector<Edge>& pairs);

/// Largest distance between a satellite of plane p at phase theta and one of plane
/// p+1 at theta + dtheta, with theta over a full turn and dtheta in [0, pi/N_p],
/// over every adjacent plane pair.
double grid_l_adj(const ConstellationConfig& cfg, int theta_steps = 2000, int dtheta_steps = 200);

/// `satellites` satellites on random planes of a `planes`-plane constellation, with
/// phases drawn uniformly from a window of width `spread` [rad] around a random center.
Constellation random_cluster(std::uint64_t seed, int planes, int satellites, double spread);

}  // namespace islsim::oracle
