#include "islsim/matching.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace islsim {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void check_transceivers(int transceivers) {
  if (transceivers < 1 || transceivers > 2) throw std::invalid_argument("transceiver count Q must be 1 or 2");
}

bool admissible_rate(const Edge& e, double min_rate) { return e.rate_snr() >= min_rate; }

// Sorts `list` heaviest first and admits every edge that keeps m permissible.
void greedy_fill(std::vector<const Edge*>& list, Matching& m, int transceivers) {
  std::stable_sort(list.begin(), list.end(), [](const Edge* a, const Edge* b) { return heavier_first(*a, *b); });
  for (const Edge* e : list) {
    if (degree_check(m, *e, transceivers)) m.add(*e);
  }
}

}  // namespace

int logical_location(const Satellite& s, int sats_per_plane) {
  const double width = constants::kTwoPi / static_cast<double>(sats_per_plane);
  const int loc = static_cast<int>(std::floor(s.phase / width));
  return std::clamp(loc, 0, sats_per_plane - 1);
}

int count_churn(const Matching& current, const Matching& previous) {
  int churn = 0;
  for (const Edge& e : current.pairs()) {
    if (!previous.contains(e.u, e.v)) ++churn;
  }
  return churn;
}

MatchingResult giem(const FeasibilityGraph& g, int transceivers, double min_rate) {
  check_transceivers(transceivers);
  const auto start = Clock::now();
  MatchingResult result{Matching(g.vertex_count())};

  std::vector<const Edge*> list;
  list.reserve(g.edges().size());
  for (const Edge& e : g.edges()) {
    if (admissible_rate(e, min_rate)) list.push_back(&e);
  }
  greedy_fill(list, result.matching, transceivers);

  result.runtime = seconds_since(start);
  return result;
}

MatchingResult gmm(const FeasibilityGraph& g, int transceivers, double min_rate, const Matching& prev) {
  check_transceivers(transceivers);
  const auto start = Clock::now();
  MatchingResult result{Matching(g.vertex_count())};
  Matching& m = result.matching;

  std::vector<Edge> history = prev.pairs();
  std::stable_sort(history.begin(), history.end(), heavier_first);
  for (const Edge& old : history) {
    const Edge* e = g.find(old.u, old.v);
    if (e != nullptr && admissible_rate(*e, min_rate) && degree_check(m, *e, transceivers)) m.add(*e);
  }

  // Drop edges that would reuse a kept pair's direction slot, or that touch a
  // satellite whose transceivers are already all in use.
  const auto blocked = [&](const Edge& e) {
    for (const int s : {e.u, e.v}) {
      if (m.degree(s) >= transceivers || m.directional_degree(s, e.direction_at(s)) > 0) return true;
    }
    return false;
  };
  std::vector<const Edge*> list;
  for (const Edge& e : g.edges()) {
    if (admissible_rate(e, min_rate) && !m.contains(e.u, e.v) && !blocked(e)) list.push_back(&e);
  }
  greedy_fill(list, m, transceivers);

  result.runtime = seconds_since(start);
  result.churn = count_churn(m, prev);
  return result;
}

MatchingResult geo(const Constellation& c, const FeasibilityGraph& g, int transceivers, double min_rate) {
  check_transceivers(transceivers);
  const auto start = Clock::now();
  MatchingResult result{Matching(g.vertex_count())};
  Matching& m = result.matching;

  const int planes = c.config().planes;
  const int n_p = c.config().sats_per_plane;
  std::vector<std::vector<std::vector<int>>> bins(static_cast<std::size_t>(planes),
                                                  std::vector<std::vector<int>>(static_cast<std::size_t>(n_p)));
  for (const Satellite& s : c.satellites()) {
    bins[static_cast<std::size_t>(s.plane - 1)][static_cast<std::size_t>(logical_location(s, n_p))].push_back(s.id);
  }

  for (int p = 1; p < planes; ++p) {
    const int q = p + 1;
    if (q - p == planes - 1) continue;  // cross-seam
    for (int loc = 0; loc < n_p; ++loc) {
      for (const int a : bins[static_cast<std::size_t>(p - 1)][static_cast<std::size_t>(loc)]) {
        for (const int b : bins[static_cast<std::size_t>(q - 1)][static_cast<std::size_t>(loc)]) {
          const Edge* e = g.find(a, b);
          if (e != nullptr && admissible_rate(*e, min_rate) && degree_check(m, *e, transceivers)) m.add(*e);
        }
      }
    }
  }

  result.runtime = seconds_since(start);
  return result;
}

}  // namespace islsim
