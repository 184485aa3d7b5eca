#include "islsim/oracle/checks.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "islsim/allocation.hpp"
#include "islsim/interference.hpp"
#include "islsim/matching.hpp"
#include "islsim/oracle/oracle.hpp"

namespace islsim::oracle {

namespace {

double rel_error(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

RadioConfig small_instance_radio(AntennaScenario antenna) {
  RadioConfig r;
  r.antenna = antenna;
  r.min_rate = 1.0;
  return r;
}

Matching first_pairs(const Matching& m, std::size_t count) {
  Matching out(m.vertex_count());
  for (std::size_t i = 0; i < std::min(count, m.size()); ++i) out.add(m.pairs()[i]);
  return out;
}

}  // namespace

CheckSummary check_greedy_bound(std::uint64_t seed, int instances) {
  CheckSummary s;
  s.worst_ratio = 1.0;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> planes(3, 4);
  std::uniform_int_distribution<int> sats(4, 8);
  std::uniform_real_distribution<double> spread(0.05, 0.6);
  for (int i = 0; i < instances; ++i) {
    const Constellation c = random_cluster(rng(), planes(rng), sats(rng), spread(rng));
    RadioConfig radio;
    const FeasibilityGraph g = build_feasibility_graph(c, radio);
    const double greedy = giem(g, 1, radio.min_rate).matching.weight();
    const double best = weight(best_matching(c, g, 1, radio.min_rate));
    ++s.instances;
    if (best <= 0.0) continue;
    if (greedy < best * (1.0 - 1e-12)) ++s.nontrivial;
    s.worst_ratio = std::min(s.worst_ratio, greedy / best);
    if (greedy < 0.5 * best * (1.0 - 1e-12)) ++s.violations;
  }
  return s;
}

CheckSummary check_interference(std::uint64_t seed, int instances) {
  CheckSummary s;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> sats(6, 10);
  std::uniform_int_distribution<int> kdist(1, 2);
  std::uniform_real_distribution<double> spread(0.05, 0.5);
  const RadioConfig radio = small_instance_radio(AntennaScenario::isotropic);
  while (s.instances < instances) {
    const Constellation c = random_cluster(rng(), 4, sats(rng), spread(rng));
    const FeasibilityGraph g = build_feasibility_graph(c, radio);
    const Matching m = first_pairs(giem(g, 2, radio.min_rate).matching, 5);
    if (m.size() < 2) continue;
    const ResourceSet rs{kdist(rng), AccessScheme::ofdma};
    const auto resources = random_resources(rs, m.size(), rng());
    const Allocation a = assign(c, radio, rs, m.pairs(), resources);
    ++s.instances;
    bool shared = false;
    for (std::size_t p = 0; p < a.size(); ++p) {
      for (int rx : {a.pairs[p].u, a.pairs[p].v}) {
        const double closed = worst_case_interference(c, radio, a, rx, p, a.resource[p]);
        const double brute = exhaustive_interference(c, radio, a.pairs, a.resource, p, rx);
        shared = shared || brute > 0.0;
        s.max_rel_error = std::max(s.max_rel_error, rel_error(closed, brute));
      }
      s.max_rel_error = std::max(s.max_rel_error,
                                 rel_error(a.rates[p].to_v, exhaustive_rate(c, radio, rs, a.pairs, a.resource, p, a.pairs[p].u)));
      s.max_rel_error = std::max(s.max_rel_error,
                                 rel_error(a.rates[p].to_u, exhaustive_rate(c, radio, rs, a.pairs, a.resource, p, a.pairs[p].v)));
    }
    if (shared) ++s.nontrivial;
  }
  s.violations = s.max_rel_error < 1e-9 ? 0 : 1;
  return s;
}

AllocationCheck check_allocation_orderings(std::uint64_t seed, int instances) {
  AllocationCheck s;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> sats(6, 10);
  std::uniform_int_distribution<int> kdist(2, 3);
  std::uniform_int_distribution<int> mdist(2, 5);
  std::uniform_real_distribution<double> spread(0.05, 0.5);
  const RadioConfig radio = small_instance_radio(AntennaScenario::isotropic);
  constexpr double kSlack = 1e-9;
  while (s.instances < instances) {
    const Constellation c = random_cluster(rng(), 4, sats(rng), spread(rng));
    const FeasibilityGraph g = build_feasibility_graph(c, radio);
    const Matching m = first_pairs(giem(g, 2, radio.min_rate).matching, static_cast<std::size_t>(mdist(rng)));
    if (m.size() < 2) continue;
    const ResourceSet rs{kdist(rng), rng() % 2 ? AccessScheme::cdma : AccessScheme::ofdma};
    ++s.instances;

    const double greedy = gra(c, radio, rs, m).value();
    const double rr = round_robin(c, radio, rs, m).value();
    double best_random = 0.0;
    for (int t = 0; t < 100; ++t) best_random = std::max(best_random, random_alloc(c, radio, rs, m, rng()).value());
    const BestAllocation best = best_allocation(c, radio, rs, m.pairs());

    if (greedy < rr * (1.0 - kSlack)) ++s.below_round_robin;
    if (greedy < best_random * (1.0 - kSlack)) ++s.below_best_random;
    if (best.value < greedy * (1.0 - kSlack)) ++s.above_optimum;
    if (best.value > 0.0) s.worst_ratio = std::min(s.worst_ratio, greedy / best.value);
  }
  return s;
}

CheckSummary check_allocation(std::uint64_t seed, int instances) {
  std::mt19937_64 rng(seed);
  CheckSummary s;
  s.worst_ratio = 1.0;
  for (int i = 0; i < instances; ++i) {
    const AllocationCheck one = check_allocation_orderings(rng(), 1);
    ++s.instances;
    if (one.below_round_robin + one.below_best_random + one.above_optimum > 0) ++s.violations;
    if (one.worst_ratio < 1.0 - 1e-9) ++s.nontrivial;
    s.worst_ratio = std::min(s.worst_ratio, one.worst_ratio);
  }
  return s;
}

std::string describe(const CheckSummary& s) {
  std::ostringstream os;
  os << "instances=" << s.instances << " nontrivial=" << s.nontrivial << " violations=" << s.violations
     << " max_rel_error=" << s.max_rel_error << " worst_ratio=" << s.worst_ratio;
  return os.str();
}

std::string describe(const AllocationCheck& s) {
  std::ostringstream os;
  os << "instances=" << s.instances << " below_round_robin=" << s.below_round_robin
     << " below_best_random=" << s.below_best_random << " above_optimum=" << s.above_optimum
     << " worst_ratio=" << s.worst_ratio;
  return os.str();
}

}  // namespace islsim::oracle
