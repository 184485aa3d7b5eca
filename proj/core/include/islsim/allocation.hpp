#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "islsim/geometry.hpp"
#include "islsim/graph.hpp"
#include "islsim/linkbudget.hpp"

namespace islsim {

/// Generator behind random_alloc. Output metadata records this name so runs can be
/// replayed by other implementations.
inline constexpr std::string_view kRandomAllocationGenerator = "mt19937_64+rejection/v1";

struct GraOptions {
  /// Re-evaluate w(A + {uvk}) from scratch for every candidate k instead of
  /// updating only the co-channel pairs. Slow; used to cross-check the fast path.
  bool full_recompute = false;
};

struct AllocationStats {
  /// Directed-rate evaluations performed while choosing resources.
  std::uint64_t rate_evaluations = 0;
  /// w(A) as accumulated step by step during the greedy loop.
  double incremental_value = 0.0;
};

/// Matched pairs in allocation order: descending weight, ties as in heavier_first.
std::vector<Edge> allocation_order(const Matching& m);

/// Worst-case rates of every pair under the given complete assignment, with the
/// access-scheme adjustment applied.
Allocation assign(const Constellation& c, const RadioConfig& cfg, const ResourceSet& rs, std::vector<Edge> pairs,
                  std::vector<int> resources);

/// Greedy resource allocation: each pair, heaviest first, takes the resource that
/// maximizes the worst-case sum rate of the allocation grown so far (smallest k on ties).
Allocation gra(const Constellation& c, const RadioConfig& cfg, const ResourceSet& rs, const Matching& m,
               const GraOptions& options = {}, AllocationStats* stats = nullptr);

/// Resource pattern 1, 2, ..., K, 1, 2, ... over the given number of pairs.
std::vector<int> round_robin_resources(const ResourceSet& rs, std::size_t pair_count);
Allocation round_robin(const Constellation& c, const RadioConfig& cfg, const ResourceSet& rs, const Matching& m);

/// Independent uniform draws from {1..K}.
std::vector<int> random_resources(const ResourceSet& rs, std::size_t pair_count, std::uint64_t seed);
Allocation random_alloc(const Constellation& c, const RadioConfig& cfg, const ResourceSet& rs, const Matching& m,
                        std::uint64_t seed);

/// w(A) recomputed from the final assignment, ignoring any stored rates.
double allocation_value(const Constellation& c, const RadioConfig& cfg, const ResourceSet& rs,
                        const Allocation& alloc);

}  // namespace islsim
