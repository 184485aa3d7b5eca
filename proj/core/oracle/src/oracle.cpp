#include "islsim/oracle/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <stdexcept>

namespace islsim::oracle {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEarth = 6371.0e3;

double norm(const std::array<double, 3>& a) { return std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]); }

std::array<double, 3> position(const Constellation& c, int id) {
  const Satellite& s = c[id];
  return cartesian(c.config(), s.plane, s.phase);
}

double horizon(double altitude) { return std::sqrt(altitude * (altitude + 2.0 * kEarth)); }

bool line_of_sight(const Constellation& c, int u, int v) {
  const auto& cfg = c.config();
  const double limit = horizon(cfg.altitude(c[u].plane)) + horizon(cfg.altitude(c[v].plane));
  return cartesian_distance(c, u, v) <= limit;
}

double received(const Constellation& c, const RadioConfig& cfg, int tx, int rx) {
  const double l = path_loss(c, cfg, tx, rx);
  return std::isinf(l) ? 0.0 : cfg.eirpg / l;
}

// Indices of pairs other than `self` holding resource k.
std::vector<std::size_t> co_channel(const std::vector<int>& resources, std::size_t self) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < resources.size(); ++i) {
    if (i != self && resources[i] == resources[self]) out.push_back(i);
  }
  return out;
}

}  // namespace

std::array<double, 3> cartesian(const ConstellationConfig& cfg, int plane, double phase) {
  const double r = kEarth + cfg.base_altitude + cfg.delta_altitude * (plane - 1);
  const double eps = cfg.longitudes.empty() ? std::numbers::pi * (plane - 1) / cfg.planes
                                            : cfg.longitudes[static_cast<std::size_t>(plane - 1)];
  return {r * std::sin(phase) * std::cos(eps), r * std::sin(phase) * std::sin(eps), r * std::cos(phase)};
}

double cartesian_distance(const Constellation& c, int u, int v) {
  const auto a = position(c, u);
  const auto b = position(c, v);
  return norm({a[0] - b[0], a[1] - b[1], a[2] - b[2]});
}

Direction direction(const Constellation& c, int u, int v) {
  const auto& cfg = c.config();
  const int pu = c[u].plane;
  if (pu == c[v].plane) return Direction::zero;
  const double eps = cfg.longitudes.empty() ? std::numbers::pi * (pu - 1) / cfg.planes
                                            : cfg.longitudes[static_cast<std::size_t>(pu - 1)];
  const auto b = position(c, v);
  const double proj = -std::sin(eps) * b[0] + std::cos(eps) * b[1];
  if (proj > 0.0) return Direction::minus;
  if (proj < 0.0) return Direction::plus;
  return Direction::zero;
}

double path_loss(const Constellation& c, const RadioConfig& cfg, int from, int rx) {
  if (from == rx) return 1.0;
  if (!line_of_sight(c, from, rx)) return kInf;
  const double x = 4.0 * std::numbers::pi * cartesian_distance(c, from, rx) * cfg.frequency / cfg.speed_of_light;
  return x * x;
}

bool permissible(const Constellation& c, const std::vector<Edge>& pairs, int transceivers) {
  std::map<int, std::vector<Direction>> used;
  for (const auto& e : pairs) {
    for (auto [a, b] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
      const Direction d = direction(c, a, b);
      if (d == Direction::zero) return false;
      auto& list = used[a];
      if (std::count(list.begin(), list.end(), d) > 0) return false;
      list.push_back(d);
      if (static_cast<int>(list.size()) > transceivers) return false;
    }
  }
  return true;
}

double exhaustive_interference(const Constellation& c, const RadioConfig& cfg, const std::vector<Edge>& pairs,
                               const std::vector<int>& resources, std::size_t pair, int rx) {
  if (cfg.antenna == AntennaScenario::narrow_beam) return 0.0;
  const auto others = co_channel(resources, pair);
  std::size_t patterns = 1;
  for (std::size_t i = 0; i < others.size(); ++i) patterns *= 3;
  double worst = 0.0;
  for (std::size_t code = 0; code < patterns; ++code) {
    double total = 0.0;
    std::size_t rest = code;
    for (std::size_t idx : others) {
      const int state = static_cast<int>(rest % 3);
      rest /= 3;
      if (state == 1) total += received(c, cfg, pairs[idx].u, rx);
      if (state == 2) total += received(c, cfg, pairs[idx].v, rx);
    }
    worst = std::max(worst, total);
  }
  return worst;
}

double exhaustive_rate(const Constellation& c, const RadioConfig& cfg, const ResourceSet& rs,
                       const std::vector<Edge>& pairs, const std::vector<int>& resources, std::size_t pair, int tx) {
  const Edge& e = pairs[pair];
  const int rx = tx == e.u ? e.v : e.u;
  const double k = rs.count;
  const double band = rs.scheme == AccessScheme::ofdma ? cfg.bandwidth / k : cfg.bandwidth;
  const double noise = cfg.boltzmann * cfg.noise_temperature * band;
  const double loss = path_loss(c, cfg, tx, rx);
  if (std::isinf(loss)) return 0.0;
  const double interference = exhaustive_interference(c, cfg, pairs, resources, pair, rx);
  const double rate = band * std::log2(1.0 + cfg.eirpg / (loss * (noise + interference)));
  return rs.scheme == AccessScheme::ofdma ? rate : rate / (1.0 + std::log2(k));
}

double exhaustive_value(const Constellation& c, const RadioConfig& cfg, const ResourceSet& rs,
                        const std::vector<Edge>& pairs, const std::vector<int>& resources) {
  double total = 0.0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    total += exhaustive_rate(c, cfg, rs, pairs, resources, i, pairs[i].u);
    total += exhaustive_rate(c, cfg, rs, pairs, resources, i, pairs[i].v);
  }
  return total;
}

BestAllocation best_allocation(const Constellation& c, const RadioConfig& cfg, const ResourceSet& rs,
                               const std::vector<Edge>& pairs) {
  BestAllocation best;
  best.value = -1.0;
  std::vector<int> current(pairs.size(), 1);
  while (true) {
    const double v = exhaustive_value(c, cfg, rs, pairs, current);
    if (v > best.value) {
      best.value = v;
      best.resources = current;
    }
    std::size_t i = 0;
    while (i < current.size() && current[i] == rs.count) current[i++] = 1;
    if (i == current.size()) break;
    ++current[i];
  }
  return best;
}

std::vector<int> greedy_allocation(const Constellation& c, const RadioConfig& cfg, const ResourceSet& rs,
                                   const std::vector<Edge>& pairs) {
  std::vector<int> chosen;
  std::vector<Edge> placed;
  for (const Edge& e : pairs) {
    placed.push_back(e);
    chosen.push_back(1);
    double best = -1.0;
    int best_k = 1;
    for (int k = 1; k <= rs.count; ++k) {
      chosen.back() = k;
      const double v = exhaustive_value(c, cfg, rs, placed, chosen);
      if (v > best) {
        best = v;
        best_k = k;
      }
    }
    chosen.back() = best_k;
  }
  return chosen;
}

std::vector<Edge> best_matching(const Constellation& c, const FeasibilityGraph& g, int transceivers,
                                double min_rate) {
  std::vector<Edge> edges;
  for (const auto& e : g.edges()) {
    if (e.rate_snr() >= min_rate) edges.push_back(e);
  }
  std::vector<double> suffix(edges.size() + 1, 0.0);
  for (std::size_t i = edges.size(); i-- > 0;) suffix[i] = suffix[i + 1] + edges[i].weight_snr;

  std::vector<Edge> chosen;
  std::vector<Edge> best;
  double best_weight = -1.0;
  auto search = [&](auto&& self, std::size_t i, double w) -> void {
    if (w + suffix[i] <= best_weight) return;
    if (i == edges.size()) {
      best_weight = w;
      best = chosen;
      return;
    }
    chosen.push_back(edges[i]);
    if (permissible(c, chosen, transceivers)) self(self, i + 1, w + edges[i].weight_snr);
    chosen.pop_back();
    self(self, i + 1, w);
  };
  search(search, 0, 0.0);
  return best;
}

double weight(const std::vector<Edge>& pairs) {
  double w = 0.0;
  for (const auto& e : pairs) w += e.weight_snr;
  return w;
}

double grid_l_adj(const ConstellationConfig& cfg, int theta_steps, int dtheta_steps) {
  if (theta_steps < 1 || dtheta_steps < 1) throw std::invalid_argument("grid sizes must be positive");
  const double max_dtheta = std::numbers::pi / cfg.sats_per_plane;
  double best = 0.0;
  for (int p = 1; p < cfg.planes; ++p) {
    for (int i = 0; i < theta_steps; ++i) {
      const double theta = 2.0 * std::numbers::pi * i / theta_steps;
      const auto a = cartesian(cfg, p, theta);
      for (int j = 0; j <= dtheta_steps; ++j) {
        const auto b = cartesian(cfg, p + 1, theta + max_dtheta * j / dtheta_steps);
        best = std::max(best, norm({a[0] - b[0], a[1] - b[1], a[2] - b[2]}));
      }
    }
  }
  return best;
}

Constellation random_cluster(std::uint64_t seed, int planes, int satellites, double spread) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> plane(1, planes);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double center = 2.0 * std::numbers::pi * unit(rng);
  ConstellationConfig cfg;
  cfg.planes = planes;
  cfg.sats_per_plane = satellites;
  std::vector<Satellite> sats;
  for (int i = 0; i < satellites; ++i) {
    double phase = std::fmod(center + spread * (unit(rng) - 0.5) + 4.0 * std::numbers::pi, 2.0 * std::numbers::pi);
    if (phase >= 2.0 * std::numbers::pi) phase = 0.0;
    sats.push_back({i, plane(rng), phase});
  }
  return Constellation(cfg, std::move(sats));
}

}  // namespace islsim::oracle
