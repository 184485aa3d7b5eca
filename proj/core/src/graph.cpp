#include "islsim/graph.hpp"

#include <algorithm>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <tuple>

#include "islsim/csv.hpp"

namespace islsim {

bool heavier_first(const Edge& a, const Edge& b) {
  if (a.weight_snr != b.weight_snr) return a.weight_snr > b.weight_snr;
  return std::tie(a.plane_u, a.u, a.plane_v, a.v) < std::tie(b.plane_u, b.u, b.plane_v, b.v);
}

void FeasibilityGraph::add_edge(Edge e) {
  if (e.u == e.v) throw std::invalid_argument("self-loops are not feasible edges");
  if (e.u > e.v) {
    std::swap(e.u, e.v);
    std::swap(e.plane_u, e.plane_v);
    std::swap(e.dir_u, e.dir_v);
  }
  if (e.u < 0 || e.v >= vertex_count_) throw std::out_of_range("edge endpoint outside the vertex set");
  const auto [it, inserted] = index_.emplace(edge_key(e.u, e.v), edges_.size());
  if (!inserted) throw std::invalid_argument("duplicate edge");
  edges_.push_back(e);
}

const Edge* FeasibilityGraph::find(int a, int b) const {
  const auto it = index_.find(edge_key(a, b));
  return it == index_.end() ? nullptr : &edges_[it->second];
}

std::vector<int> FeasibilityGraph::degrees(bool above_threshold_only) const {
  std::vector<int> deg(static_cast<std::size_t>(vertex_count_), 0);
  for (const Edge& e : edges_) {
    if (above_threshold_only && e.below_threshold) continue;
    ++deg[static_cast<std::size_t>(e.u)];
    ++deg[static_cast<std::size_t>(e.v)];
  }
  return deg;
}

int FeasibilityGraph::min_degree(bool above_threshold_only) const {
  const auto deg = degrees(above_threshold_only);
  if (deg.empty()) return 0;
  return *std::min_element(deg.begin(), deg.end());
}

FeasibilityGraph build_feasibility_graph(const Constellation& c, const RadioConfig& cfg) {
  const int planes = c.config().planes;
  FeasibilityGraph g(c.size());
  const auto sats = c.satellites();
  for (std::size_t i = 0; i < sats.size(); ++i) {
    const Satellite& a = sats[i];
    for (std::size_t j = i + 1; j < sats.size(); ++j) {
      const Satellite& b = sats[j];
      const int gap = std::abs(a.plane - b.plane);
      if (gap == 0 || gap == planes - 1) continue;
      const double dist = distance(c, a, b);
      if (dist > max_slant_range(c.config(), a.plane, b.plane)) continue;
      const double rate = rate_snr(cfg, snr(cfg, fspl(cfg, dist, true)));
      Edge e;
      e.u = a.id;
      e.v = b.id;
      e.plane_u = a.plane;
      e.plane_v = b.plane;
      e.weight_snr = 2.0 * rate;
      e.dist = dist;
      e.dir_u = relative_direction(c, a, b);
      e.dir_v = relative_direction(c, b, a);
      e.below_threshold = rate < cfg.min_rate;
      g.add_edge(e);
    }
  }
  return g;
}

Matching::Matching(int vertex_count)
    : degree_(static_cast<std::size_t>(vertex_count), 0),
      dir_degree_(static_cast<std::size_t>(vertex_count), {0, 0}) {}

int Matching::directional_degree(int sat, Direction d) const {
  if (d == Direction::zero) return 0;
  return dir_degree_[static_cast<std::size_t>(sat)][static_cast<std::size_t>(direction_slot(d))];
}

void Matching::add(const Edge& e) {
  if (!keys_.emplace(edge_key(e.u, e.v), pairs_.size()).second) {
    throw std::invalid_argument("pair already matched");
  }
  pairs_.push_back(e);
  for (const int s : {e.u, e.v}) {
    const auto i = static_cast<std::size_t>(s);
    ++degree_[i];
    const Direction d = e.direction_at(s);
    if (d != Direction::zero) ++dir_degree_[i][static_cast<std::size_t>(direction_slot(d))];
  }
}

double Matching::weight() const {
  double w = 0.0;
  for (const Edge& e : pairs_) w += e.weight_snr;
  return w;
}

bool Matching::is_permissible(int transceivers) const {
  for (std::size_t i = 0; i < degree_.size(); ++i) {
    if (degree_[i] > transceivers) return false;
    if (dir_degree_[i][0] > 1 || dir_degree_[i][1] > 1) return false;
  }
  // Every matched edge must occupy a direction slot at both ends.
  return std::all_of(pairs_.begin(), pairs_.end(),
                     [](const Edge& e) { return e.dir_u != Direction::zero && e.dir_v != Direction::zero; });
}

bool degree_check(const Matching& m, const Edge& e, int transceivers) {
  if (e.dir_u == Direction::zero || e.dir_v == Direction::zero) return false;
  if (m.contains(e.u, e.v)) return false;
  return m.directional_degree(e.u, e.dir_u) + m.directional_degree(e.v, e.dir_v) == 0 &&
         m.degree(e.u) < transceivers && m.degree(e.v) < transceivers;
}

double Allocation::value() const {
  double w = 0.0;
  for (const DirectedRates& r : rates) w += r.sum();
  return w;
}

void write_edges_csv(std::ostream& out, const FeasibilityGraph& g, bool header) {
  CsvWriter csv(out);
  if (header) csv.row("u", "v", "plane_u", "plane_v", "dist_m", "rate_snr_bps");
  for (const Edge& e : g.edges()) csv.row(e.u, e.v, e.plane_u, e.plane_v, e.dist, e.rate_snr());
}

}  // namespace islsim
