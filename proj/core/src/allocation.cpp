#include "islsim/allocation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace islsim {

namespace {

// Signal losses and pairwise interference between the pairs of one allocation problem.
class LinkTable {
 public:
  LinkTable(const Constellation& c, const RadioConfig& cfg, const std::vector<Edge>& pairs)
      : c_(c), cfg_(cfg), pairs_(pairs) {
    signal_.reserve(pairs.size());
    for (const Edge& e : pairs) {
      const double dist = norm(c.position(c[e.u]), c.position(c[e.v]));
      const bool los = dist <= max_slant_range(c.config(), c[e.u].plane, c[e.v].plane);
      signal_.push_back(fspl(cfg, dist, los));
    }
    isotropic_ = cfg.antenna == AntennaScenario::isotropic;
  }

  PathLoss signal(std::size_t a) const { return signal_[a]; }

  // Worst-case interference at satellite rx caused by pair `from`.
  double interference(std::size_t from, int rx) const {
    if (!isotropic_) return 0.0;
    const Edge& e = pairs_[from];
    return pair_interference(cfg_, loss(e.u, rx), loss(e.v, rx));
  }

 private:
  static double norm(const Vec3& a, const Vec3& b) {
    const double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
    return std::sqrt(dx * dx + dy * dy + dz * dz);
  }

  PathLoss loss(int from, int rx) const {
    if (from == rx) return PathLoss::unit();
    const Satellite& a = c_[from];
    const Satellite& b = c_[rx];
    const double dist = norm(c_.position(a), c_.position(b));
    return fspl(cfg_, dist, dist <= max_slant_range(c_.config(), a.plane, b.plane));
  }

  const Constellation& c_;
  const RadioConfig& cfg_;
  const std::vector<Edge>& pairs_;
  std::vector<PathLoss> signal_;
  bool isotropic_ = false;
};

void check_resources(const ResourceSet& rs, const std::vector<int>& resources) {
  for (const int k : resources) {
    if (k < 1 || k > rs.count) throw std::invalid_argument("resource index outside [1, K]");
  }
}

std::uint64_t uniform_below(std::mt19937_64& gen, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              (std::numeric_limits<std::uint64_t>::max() % bound + 1) % bound;
  std::uint64_t r = gen();
  while (r > limit) r = gen();
  return r % bound;
}

}  // namespace

std::vector<Edge> allocation_order(const Matching& m) {
  std::vector<Edge> order = m.pairs();
  std::stable_sort(order.begin(), order.end(), heavier_first);
  return order;
}

Allocation assign(const Constellation& c, const RadioConfig& cfg, const ResourceSet& rs, std::vector<Edge> pairs,
                  std::vector<int> resources) {
  rs.validate();
  if (pairs.size() != resources.size()) throw std::invalid_argument("one resource per pair is required");
  check_resources(rs, resources);

  const LinkTable table(c, cfg, pairs);
  Allocation alloc;
  alloc.rates.resize(pairs.size());
  for (std::size_t a = 0; a < pairs.size(); ++a) {
    double at_v = 0.0;
    double at_u = 0.0;
    for (std::size_t b = 0; b < pairs.size(); ++b) {
      if (b == a || resources[b] != resources[a]) continue;
      at_v += table.interference(b, pairs[a].v);
      at_u += table.interference(b, pairs[a].u);
    }
    alloc.rates[a] = {effective_rate(cfg, rs, table.signal(a), at_v), effective_rate(cfg, rs, table.signal(a), at_u)};
  }
  alloc.pairs = std::move(pairs);
  alloc.resource = std::move(resources);
  return alloc;
}

Allocation gra(const Constellation& c, const RadioConfig& cfg, const ResourceSet& rs, const Matching& m,
               const GraOptions& options, AllocationStats* stats) {
  rs.validate();
  std::vector<Edge> order = allocation_order(m);
  const std::size_t count = order.size();
  const auto K = static_cast<std::size_t>(rs.count);

  std::vector<int> resources(count, 0);
  AllocationStats local;
  AllocationStats& counters = stats ? *stats : local;

  if (options.full_recompute) {
    for (std::size_t x = 0; x < count; ++x) {
      std::vector<Edge> prefix(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(x + 1));
      double best = -std::numeric_limits<double>::infinity();
      int best_k = 1;
      for (int k = 1; k <= rs.count; ++k) {
        std::vector<int> trial(resources.begin(), resources.begin() + static_cast<std::ptrdiff_t>(x + 1));
        trial[x] = k;
        const double value = assign(c, cfg, rs, prefix, std::move(trial)).value();
        counters.rate_evaluations += 2 * (x + 1);
        if (value > best) {
          best = value;
          best_k = k;
        }
      }
      resources[x] = best_k;
    }
    Allocation result = assign(c, cfg, rs, std::move(order), std::move(resources));
    counters.incremental_value = result.value();
    return result;
  }

  const LinkTable table(c, cfg, order);
  std::vector<double> interference_v(count, 0.0), interference_u(count, 0.0);
  std::vector<double> rate_v(count, 0.0), rate_u(count, 0.0);
  std::vector<std::vector<std::size_t>> members(K);
  double running = 0.0;

  struct Update {
    double add_v, add_u, new_v, new_u;
  };
  std::vector<Update> scratch, best_scratch;

  for (std::size_t x = 0; x < count; ++x) {
    const PathLoss own = table.signal(x);
    double best_delta = -std::numeric_limits<double>::infinity();
    std::size_t best_k = 0;
    double best_own_v = 0.0, best_own_u = 0.0;

    for (std::size_t k = 0; k < K; ++k) {
      scratch.clear();
      double delta = 0.0;
      double own_v = 0.0, own_u = 0.0;
      for (const std::size_t a : members[k]) {
        Update up{};
        up.add_v = table.interference(x, order[a].v);
        up.add_u = table.interference(x, order[a].u);
        up.new_v = effective_rate(cfg, rs, table.signal(a), interference_v[a] + up.add_v);
        up.new_u = effective_rate(cfg, rs, table.signal(a), interference_u[a] + up.add_u);
        delta += (up.new_v - rate_v[a]) + (up.new_u - rate_u[a]);
        own_v += table.interference(a, order[x].v);
        own_u += table.interference(a, order[x].u);
        scratch.push_back(up);
      }
      const double rv = effective_rate(cfg, rs, own, own_v);
      const double ru = effective_rate(cfg, rs, own, own_u);
      delta += rv + ru;
      counters.rate_evaluations += 2 * members[k].size() + 2;
      if (delta > best_delta) {
        best_delta = delta;
        best_k = k;
        best_own_v = own_v;
        best_own_u = own_u;
        best_scratch.swap(scratch);
      }
    }

    auto& group = members[best_k];
    for (std::size_t i = 0; i < group.size(); ++i) {
      const std::size_t a = group[i];
      interference_v[a] += best_scratch[i].add_v;
      interference_u[a] += best_scratch[i].add_u;
      rate_v[a] = best_scratch[i].new_v;
      rate_u[a] = best_scratch[i].new_u;
    }
    interference_v[x] = best_own_v;
    interference_u[x] = best_own_u;
    rate_v[x] = effective_rate(cfg, rs, own, best_own_v);
    rate_u[x] = effective_rate(cfg, rs, own, best_own_u);
    group.push_back(x);
    resources[x] = static_cast<int>(best_k) + 1;
    running += best_delta;
  }

  counters.incremental_value = running;
  return assign(c, cfg, rs, std::move(order), std::move(resources));
}

std::vector<int> round_robin_resources(const ResourceSet& rs, std::size_t pair_count) {
  rs.validate();
  std::vector<int> resources(pair_count);
  for (std::size_t i = 0; i < pair_count; ++i) resources[i] = static_cast<int>(i % static_cast<std::size_t>(rs.count)) + 1;
  return resources;
}

Allocation round_robin(const Constellation& c, const RadioConfig& cfg, const ResourceSet& rs, const Matching& m) {
  std::vector<Edge> order = allocation_order(m);
  std::vector<int> resources = round_robin_resources(rs, order.size());
  return assign(c, cfg, rs, std::move(order), std::move(resources));
}

std::vector<int> random_resources(const ResourceSet& rs, std::size_t pair_count, std::uint64_t seed) {
  rs.validate();
  std::mt19937_64 gen(seed);
  std::vector<int> resources(pair_count);
  for (int& k : resources) k = static_cast<int>(uniform_below(gen, static_cast<std::uint64_t>(rs.count))) + 1;
  return resources;
}

Allocation random_alloc(const Constellation& c, const RadioConfig& cfg, const ResourceSet& rs, const Matching& m,
                        std::uint64_t seed) {
  std::vector<Edge> order = allocation_order(m);
  std::vector<int> resources = random_resources(rs, order.size(), seed);
  return assign(c, cfg, rs, std::move(order), std::move(resources));
}

double allocation_value(const Constellation& c, const RadioConfig& cfg, const ResourceSet& rs,
                        const Allocation& alloc) {
  return assign(c, cfg, rs, alloc.pairs, alloc.resource).value();
}

}  // namespace islsim
