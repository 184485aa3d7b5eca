#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "islsim/geometry.hpp"
#include "islsim/linkbudget.hpp"

namespace islsim {

/// Feasible inter-plane ISL. Identity is the unordered id pair, stored with u < v.
struct Edge {
  int u = 0;
  int v = 0;
  int plane_u = 1;
  int plane_v = 1;
  double weight_snr = 0.0;  // 2 * R*_SNR(uv) [bit/s]
  double dist = 0.0;        // [m]
  Direction dir_u = Direction::zero;  // direction of v w.r.t. u
  Direction dir_v = Direction::zero;  // direction of u w.r.t. v
  bool below_threshold = false;       // R*_SNR < R_min

  double rate_snr() const { return 0.5 * weight_snr; }
  Direction direction_at(int sat) const { return sat == u ? dir_u : dir_v; }
  int other(int sat) const { return sat == u ? v : u; }
};

/// Strict weak order used wherever edges are ranked: descending weight, then
/// lexicographic on (plane_u, u, plane_v, v).
bool heavier_first(const Edge& a, const Edge& b);

inline std::uint64_t edge_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) | static_cast<std::uint32_t>(b);
}

class FeasibilityGraph {
 public:
  FeasibilityGraph() = default;
  explicit FeasibilityGraph(int vertex_count) : vertex_count_(vertex_count) {}

  /// Adds an edge; endpoints are normalized so that u < v. Duplicates and
  /// self-loops are rejected with std::invalid_argument.
  void add_edge(Edge e);

  int vertex_count() const { return vertex_count_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge* find(int a, int b) const;

  /// deg_G(u) counting only edges that reach min_rate.
  std::vector<int> degrees(bool above_threshold_only = true) const;
  /// delta(G); zero for a graph without vertices.
  int min_degree(bool above_threshold_only = true) const;

 private:
  int vertex_count_ = 0;
  std::vector<Edge> edges_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
};

/// Feasible edge set at the constellation's epoch: inter-plane pairs that are not
/// cross-seam and have line of sight, weighted by 2 * B log2(1 + SNR).
FeasibilityGraph build_feasibility_graph(const Constellation& c, const RadioConfig& cfg);

/// Satellite matching with per-satellite directional degree bookkeeping.
class Matching {
 public:
  Matching() = default;
  explicit Matching(int vertex_count);

  int vertex_count() const { return static_cast<int>(degree_.size()); }
  const std::vector<Edge>& pairs() const { return pairs_; }
  std::size_t size() const { return pairs_.size(); }
  bool empty() const { return pairs_.empty(); }

  int degree(int sat) const { return degree_[static_cast<std::size_t>(sat)]; }
  int directional_degree(int sat, Direction d) const;
  bool contains(int a, int b) const { return keys_.contains(edge_key(a, b)); }

  /// Appends without checking permissibility.
  void add(const Edge& e);
  /// Sum of matching weights w(M) = 2 * sum R*_SNR [bit/s].
  double weight() const;
  /// Definition-2 check over every satellite.
  bool is_permissible(int transceivers) const;

 private:
  std::vector<Edge> pairs_;
  std::vector<std::uint8_t> degree_;
  std::vector<std::array<std::uint8_t, 2>> dir_degree_;
  std::unordered_map<std::uint64_t, std::size_t> keys_;
};

/// True iff adding e keeps both endpoint neighborhoods permissible: the edge's
/// direction slot is free at both endpoints and both total degrees stay below Q.
/// Edges with a zero direction at either endpoint are never admissible.
bool degree_check(const Matching& m, const Edge& e, int transceivers);

struct DirectedRates {
  double to_v = 0.0;  // R*_SINR(u, v, k)
  double to_u = 0.0;  // R*_SINR(v, u, k)
  double sum() const { return to_v + to_u; }
};

/// Resource assignment over a matching. Resources are 1-based.
struct Allocation {
  std::vector<Edge> pairs;
  std::vector<int> resource;
  std::vector<DirectedRates> rates;

  std::size_t size() const { return pairs.size(); }
  double value() const;
};

/// CSV edge list: u,v,plane_u,plane_v,dist_m,rate_snr_bps.
void write_edges_csv(std::ostream& out, const FeasibilityGraph& g, bool header = true);

}  // namespace islsim
