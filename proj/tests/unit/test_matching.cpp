#include <stdexcept>
#include <algorithm>
#include <random>

#include "doctest.h"
#include "islsim/matching.hpp"
#include "islsim/oracle/checks.hpp"
#include "islsim/oracle/oracle.hpp"

using namespace islsim;

namespace {

bool maximal(const FeasibilityGraph& g, const Matching& m, int q, double min_rate) {
  for (const Edge& e : g.edges()) {
    if (e.rate_snr() >= min_rate && !m.contains(e.u, e.v) && degree_check(m, e, q)) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("matching") {

TEST_CASE("greedy reaches half the optimum with one transceiver") {
  const auto s = oracle::check_greedy_bound(99, 600);
  CHECK(s.instances == 600);
  CHECK(s.violations == 0);
  CHECK(s.worst_ratio >= 0.5);
}

TEST_CASE("greedy equals the optimum on a path with a unique heavy edge") {
  // a - b - c with w(ab) > w(bc): greedy takes ab, optimum too.
  const Constellation c(ConstellationConfig{}, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.02}});
  const RadioConfig radio;
  const FeasibilityGraph g = build_feasibility_graph(c, radio);
  const auto r = giem(g, 1, radio.min_rate);
  CHECK(r.matching.weight() == doctest::Approx(oracle::weight(oracle::best_matching(c, g, 1, radio.min_rate))));
}

TEST_CASE("all algorithms return maximal permissible matchings") {
  for (int planes : {5, 7}) {
    ConstellationConfig cfg;
    cfg.planes = planes;
    Constellation c(cfg);
    const RadioConfig radio;
    Matching prev(c.size());
    for (int n = 0; n < 20; ++n) {
      c = c.propagate(30.0);
      const FeasibilityGraph g = build_feasibility_graph(c, radio);
      for (int q : {1, 2}) {
        const auto a = giem(g, q, radio.min_rate);
        const auto b = gmm(g, q, radio.min_rate, prev);
        const auto d = geo(c, g, q, radio.min_rate);
        for (const auto* r : {&a, &b, &d}) {
          CHECK(r->matching.is_permissible(q));
          CHECK(oracle::permissible(c, r->matching.pairs(), q));
          for (const Edge& e : r->matching.pairs()) CHECK(e.rate_snr() >= radio.min_rate);
        }
        CHECK(maximal(g, a.matching, q, radio.min_rate));
        CHECK(maximal(g, b.matching, q, radio.min_rate));
      }
      prev = giem(g, 2, radio.min_rate).matching;
    }
  }
}

TEST_CASE("GIEM prefers heavier edges") {
  const Constellation c = Constellation(ConstellationConfig{}).propagate(900.0);
  const RadioConfig radio;
  const FeasibilityGraph g = build_feasibility_graph(c, radio);
  const Matching m = giem(g, 2, radio.min_rate).matching;
  std::vector<Edge> sorted = g.edges();
  std::stable_sort(sorted.begin(), sorted.end(), heavier_first);
  REQUIRE(m.size() > 0);
  CHECK(m.pairs().front().u == sorted.front().u);
  CHECK(m.pairs().front().v == sorted.front().v);
  for (std::size_t i = 1; i < m.size(); ++i) CHECK_FALSE(heavier_first(m.pairs()[i], m.pairs()[i - 1]));
}

TEST_CASE("GMM keeps every previous pair that is still usable") {
  ConstellationConfig cfg;
  cfg.planes = 6;
  Constellation c(cfg);
  const RadioConfig radio;
  Matching prev = giem(build_feasibility_graph(c, radio), 2, radio.min_rate).matching;
  for (int n = 0; n < 40; ++n) {
    c = c.propagate(30.0);
    const FeasibilityGraph g = build_feasibility_graph(c, radio);
    const auto r = gmm(g, 2, radio.min_rate, prev);
    // Replaying the retention phase must admit exactly the kept pairs.
    Matching kept(c.size());
    std::vector<Edge> history = prev.pairs();
    std::stable_sort(history.begin(), history.end(), heavier_first);
    for (const Edge& old : history) {
      const Edge* e = g.find(old.u, old.v);
      if (e && e->rate_snr() >= radio.min_rate && degree_check(kept, *e, 2)) kept.add(*e);
    }
    for (const Edge& e : kept.pairs()) CHECK(r.matching.contains(e.u, e.v));
    CHECK(r.churn == count_churn(r.matching, prev));
    CHECK(r.churn == static_cast<int>(r.matching.size()) - static_cast<int>(kept.size()));
    prev = r.matching;
  }
}

TEST_CASE("GMM with an empty history equals GIEM") {
  const Constellation c = Constellation(ConstellationConfig{}).propagate(300.0);
  const RadioConfig radio;
  const FeasibilityGraph g = build_feasibility_graph(c, radio);
  for (int q : {1, 2}) {
    const auto a = giem(g, q, radio.min_rate).matching;
    const auto b = gmm(g, q, radio.min_rate, Matching(c.size())).matching;
    CHECK(a.size() == b.size());
    CHECK(a.weight() == doctest::Approx(b.weight()));
  }
}

TEST_CASE("GEO pairs neighbors sharing a logical location") {
  ConstellationConfig cfg;
  cfg.planes = 8;
  Constellation c(cfg);
  const RadioConfig radio;
  for (int n = 0; n < 10; ++n) {
    c = c.propagate(30.0);
    const FeasibilityGraph g = build_feasibility_graph(c, radio);
    const Matching m = geo(c, g, 2, radio.min_rate).matching;
    CHECK(m.size() == 2 * 7 * 40 / 2);
    for (const Edge& e : m.pairs()) {
      CHECK(e.plane_v - e.plane_u == 1);
      CHECK(logical_location(c[e.u], 40) == logical_location(c[e.v], 40));
    }
  }
}

TEST_CASE("logical locations") {
  CHECK(logical_location({0, 1, 0.0}, 40) == 0);
  CHECK(logical_location({0, 1, 2.0 * 3.141592653589793 / 40 * 1.5}, 40) == 1);
  CHECK(logical_location({0, 1, 6.283185307179585}, 40) == 39);
}

TEST_CASE("transceiver count is checked") {
  const FeasibilityGraph g(0);
  CHECK_THROWS(giem(g, 0, 1.0));
  CHECK_THROWS(giem(g, 3, 1.0));
  CHECK_THROWS(gmm(g, 3, 1.0, Matching(0)));
}

TEST_CASE("churn counts new pairs") {
  Matching a(4), b(4);
  a.add({0, 1, 1, 2, 1.0});
  a.add({2, 3, 1, 2, 1.0});
  b.add({0, 1, 1, 2, 1.0});
  CHECK(count_churn(a, b) == 1);
  CHECK(count_churn(b, a) == 0);
}

}
