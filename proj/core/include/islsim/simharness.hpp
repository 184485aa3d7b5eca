#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "islsim/allocation.hpp"
#include "islsim/geometry.hpp"
#include "islsim/graph.hpp"
#include "islsim/linkbudget.hpp"
#include "islsim/matching.hpp"

namespace islsim {

enum class MatchingAlgorithm { giem, gmm, geo };
enum class AllocationAlgorithm { none, gra, round_robin, random };

std::string_view to_string(MatchingAlgorithm a);
std::string_view to_string(AllocationAlgorithm a);
/// Accept the CLI spellings (giem|gmm|geo, none|gra|rr|random); throw std::invalid_argument otherwise.
MatchingAlgorithm parse_matching_algorithm(std::string_view s);
AllocationAlgorithm parse_allocation_algorithm(std::string_view s);
AccessScheme parse_access_scheme(std::string_view s);
AntennaScenario parse_antenna_scenario(std::string_view s);

struct ExperimentSpec {
  std::string label;  // empty: derived from the parameters
  ConstellationConfig constellation;
  RadioConfig radio;
  int transceivers = 2;
  MatchingAlgorithm matching = MatchingAlgorithm::giem;
  AllocationAlgorithm allocation = AllocationAlgorithm::none;
  ResourceSet resources;
  double period = 30.0;  // [s]
  int realizations = 1000;
  std::uint64_t seed = 1;

  /// Throws std::invalid_argument on inconsistent parameters.
  void validate() const;
  std::string effective_label() const;

  friend bool operator==(const ExperimentSpec&, const ExperimentSpec&) = default;
};

struct SatelliteDegree {
  int id = 0;
  int plane = 1;
  double phase = 0.0;
  int degree = 0;
};

struct MetricsReport {
  ExperimentSpec spec;
  double mu_M_hat = 0.0;             // mean established ISLs per satellite
  double mu_M_hat_from_degrees = 0.0;  // same estimator via the degree sum
  double mu_M_hat_normalized = 0.0;  // mu_M_hat / (Q / 2)
  double mu_R_snr = 0.0;             // mean w(M) [bit/s]
  std::optional<double> mu_R_sinr;      // mean w(A) [bit/s]
  std::optional<double> mu_R_sinr_hat;  // sum w(A) / sum w(M)
  int permissibility_violations = 0;

  std::vector<double> rate_cdf;   // sorted per-ISL R*_SNR [bit/s]
  std::vector<double> delay_cdf;  // sorted per-ISL propagation delay [s]
  std::vector<double> runtime_cdf;             // sorted matching runtimes [s]
  std::vector<double> allocation_runtime_cdf;  // sorted allocation runtimes [s]
  std::vector<double> total_runtime_cdf;       // sorted matching + allocation runtimes [s]

  std::vector<int> churn_series;       // per realization
  std::vector<int> isl_series;         // |M(n)|
  std::vector<int> min_degree_series;  // delta(G) over edges reaching min_rate
  std::vector<double> matching_weight_series;    // w(M(n))
  std::vector<double> allocation_weight_series;  // w(A(n)), empty without allocation
  std::vector<SatelliteDegree> degree_map;       // after the first realization

  double mean_churn() const;
  int min_degree() const;
};

/// Per-realization callbacks, used for CSV dumps.
struct RunHooks {
  std::function<void(int n, const Constellation&, const FeasibilityGraph&)> on_graph;
  std::function<void(int n, const MatchingResult&, const Matching& previous)> on_matching;
  std::function<void(int n, const Allocation&)> on_allocation;
};

/// Runs N_sim matching periods: propagate by T, build G, match, optionally allocate.
MetricsReport run_experiment(const ExperimentSpec& spec, const RunHooks* hooks = nullptr);

struct SweepOutcome {
  std::optional<MetricsReport> report;
  std::string error;
};

/// Runs every spec on up to `jobs` worker threads; output order follows input order.
/// Failures are reported per spec without aborting the sweep.
std::vector<SweepOutcome> sweep(const std::vector<ExperimentSpec>& specs, int jobs = 1);

/// Seed handed to the random allocator for realization n.
std::uint64_t realization_seed(std::uint64_t seed, int n);

/// Writes the CSV result families into `dir`:
///   metrics_summary.csv, rate_cdf.csv, delay_cdf.csv, k_sweep.csv, churn.csv,
///   degree_map.csv, runtime_cdf.csv.
/// Only runtime_cdf.csv carries wall-clock data.
void write_report_csvs(const std::filesystem::path& dir, const std::vector<MetricsReport>& reports);

}  // namespace islsim
