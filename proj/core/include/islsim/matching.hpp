#pragma once

#include <string_view>

#include "islsim/geometry.hpp"
#include "islsim/graph.hpp"

namespace islsim {

struct MatchingResult {
  Matching matching;
  int realization_index = 0;
  double runtime = 0.0;  // wall-clock seconds spent inside the algorithm body
  int churn = 0;         // pairs not present in the previous realization
};

/// Greedy independent-experiments matching: edges reaching min_rate are scanned in
/// descending weight order and admitted whenever degree_check passes.
MatchingResult giem(const FeasibilityGraph& g, int transceivers, double min_rate);

/// Greedy Markovian matching: pairs of `prev` that are still feasible are kept
/// first (heaviest previous weight first), edges that would reuse a kept pair's
/// direction slot are dropped, and the remaining edges are completed greedily.
MatchingResult gmm(const FeasibilityGraph& g, int transceivers, double min_rate, const Matching& prev);

/// Geographic benchmark: satellites of neighboring planes (p, p+1) that share a
/// logical location of width 2pi/N_p are matched when feasible. Planes are
/// scanned in increasing order, so with one transceiver plane p+1 is served first.
MatchingResult geo(const Constellation& c, const FeasibilityGraph& g, int transceivers, double min_rate);

/// Logical location index floor(phase / (2pi / N_p)).
int logical_location(const Satellite& s, int sats_per_plane);

/// Number of pairs of `current` that are absent from `previous`.
int count_churn(const Matching& current, const Matching& previous);

}  // namespace islsim
