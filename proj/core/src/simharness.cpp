#include "islsim/simharness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "islsim/csv.hpp"

namespace islsim {

namespace {

using Clock = std::chrono::steady_clock;

std::ofstream open_csv(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

std::string_view to_string(MatchingAlgorithm a) {
  switch (a) {
    case MatchingAlgorithm::gmm:
      return "gmm";
    case MatchingAlgorithm::geo:
      return "geo";
    case MatchingAlgorithm::giem:
      break;
  }
  return "giem";
}

std::string_view to_string(AllocationAlgorithm a) {
  switch (a) {
    case AllocationAlgorithm::gra:
      return "gra";
    case AllocationAlgorithm::round_robin:
      return "rr";
    case AllocationAlgorithm::random:
      return "random";
    case AllocationAlgorithm::none:
      break;
  }
  return "none";
}

MatchingAlgorithm parse_matching_algorithm(std::string_view s) {
  if (s == "giem") return MatchingAlgorithm::giem;
  if (s == "gmm") return MatchingAlgorithm::gmm;
  if (s == "geo") return MatchingAlgorithm::geo;
  throw std::invalid_argument("unknown matching algorithm '" + std::string(s) + "' (expected giem|gmm|geo)");
}

AllocationAlgorithm parse_allocation_algorithm(std::string_view s) {
  if (s == "none") return AllocationAlgorithm::none;
  if (s == "gra") return AllocationAlgorithm::gra;
  if (s == "rr" || s == "round_robin") return AllocationAlgorithm::round_robin;
  if (s == "random") return AllocationAlgorithm::random;
  throw std::invalid_argument("unknown allocation algorithm '" + std::string(s) + "' (expected gra|rr|random|none)");
}

AccessScheme parse_access_scheme(std::string_view s) {
  if (s == "ofdma") return AccessScheme::ofdma;
  if (s == "cdma") return AccessScheme::cdma;
  throw std::invalid_argument("unknown access scheme '" + std::string(s) + "' (expected ofdma|cdma)");
}

AntennaScenario parse_antenna_scenario(std::string_view s) {
  if (s == "narrow" || s == "narrow_beam") return AntennaScenario::narrow_beam;
  if (s == "isotropic") return AntennaScenario::isotropic;
  throw std::invalid_argument("unknown antenna scenario '" + std::string(s) + "' (expected narrow|isotropic)");
}

void ExperimentSpec::validate() const {
  constellation.validate();
  radio.validate();
  if (transceivers < 1 || transceivers > 2) throw std::invalid_argument("transceivers Q must be 1 or 2");
  if (!(period > 0.0)) throw std::invalid_argument("matching period T must be positive");
  if (realizations < 1) throw std::invalid_argument("realization count N_sim must be at least 1");
  if (allocation != AllocationAlgorithm::none) resources.validate();
  if (label.find_first_of(",\n\"") != std::string::npos) {
    throw std::invalid_argument("experiment label must not contain commas, quotes or newlines");
  }
}

std::string ExperimentSpec::effective_label() const {
  if (!label.empty()) return label;
  std::string s = "P" + std::to_string(constellation.planes) + "_Np" + std::to_string(constellation.sats_per_plane) +
                  "_Q" + std::to_string(transceivers) + "_" + std::string(to_string(matching));
  if (allocation != AllocationAlgorithm::none) {
    s += "_" + std::string(to_string(allocation)) + "_K" + std::to_string(resources.count) + "_" +
         std::string(to_string(resources.scheme));
  }
  s += "_" + std::string(to_string(radio.antenna));
  return s;
}

double MetricsReport::mean_churn() const {
  if (churn_series.empty()) return 0.0;
  return static_cast<double>(std::accumulate(churn_series.begin(), churn_series.end(), 0LL)) /
         static_cast<double>(churn_series.size());
}

int MetricsReport::min_degree() const {
  if (min_degree_series.empty()) return 0;
  return *std::min_element(min_degree_series.begin(), min_degree_series.end());
}

std::uint64_t realization_seed(std::uint64_t seed, int n) {
  return splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(n)));
}

MetricsReport run_experiment(const ExperimentSpec& spec, const RunHooks* hooks) {
  spec.validate();
  MetricsReport report;
  report.spec = spec;

  Constellation c(spec.constellation);
  const int n_sats = c.size();
  Matching previous(n_sats);
  long long pair_total = 0;
  long long degree_total = 0;
  double matching_weight_total = 0.0;
  double allocation_weight_total = 0.0;
  const bool allocate = spec.allocation != AllocationAlgorithm::none;

  for (int n = 1; n <= spec.realizations; ++n) {
    c = c.propagate(spec.period);
    const FeasibilityGraph g = build_feasibility_graph(c, spec.radio);
    report.min_degree_series.push_back(g.min_degree(true));
    if (hooks && hooks->on_graph) hooks->on_graph(n, c, g);

    MatchingResult result;
    switch (spec.matching) {
      case MatchingAlgorithm::giem:
        result = giem(g, spec.transceivers, spec.radio.min_rate);
        break;
      case MatchingAlgorithm::gmm:
        result = gmm(g, spec.transceivers, spec.radio.min_rate, previous);
        break;
      case MatchingAlgorithm::geo:
        result = geo(c, g, spec.transceivers, spec.radio.min_rate);
        break;
    }
    result.realization_index = n;
    result.churn = count_churn(result.matching, previous);
    const Matching& m = result.matching;

    if (!m.is_permissible(spec.transceivers)) ++report.permissibility_violations;
    pair_total += static_cast<long long>(m.size());
    for (int s = 0; s < n_sats; ++s) degree_total += m.degree(s);
    matching_weight_total += m.weight();
    report.matching_weight_series.push_back(m.weight());
    report.churn_series.push_back(result.churn);
    report.isl_series.push_back(static_cast<int>(m.size()));
    report.runtime_cdf.push_back(result.runtime);
    for (const Edge& e : m.pairs()) {
      report.rate_cdf.push_back(e.rate_snr());
      report.delay_cdf.push_back(e.dist / spec.radio.speed_of_light);
    }
    if (n == 1) {
      for (const Satellite& s : c.satellites()) report.degree_map.push_back({s.id, s.plane, s.phase, m.degree(s.id)});
    }
    if (hooks && hooks->on_matching) hooks->on_matching(n, result, previous);

    double allocation_runtime = 0.0;
    if (allocate) {
      const auto start = Clock::now();
      Allocation a;
      switch (spec.allocation) {
        case AllocationAlgorithm::gra:
          a = gra(c, spec.radio, spec.resources, m);
          break;
        case AllocationAlgorithm::round_robin:
          a = round_robin(c, spec.radio, spec.resources, m);
          break;
        case AllocationAlgorithm::random:
          a = random_alloc(c, spec.radio, spec.resources, m, realization_seed(spec.seed, n));
          break;
        case AllocationAlgorithm::none:
          break;
      }
      allocation_runtime = std::chrono::duration<double>(Clock::now() - start).count();
      const double w = a.value();
      allocation_weight_total += w;
      report.allocation_weight_series.push_back(w);
      if (hooks && hooks->on_allocation) hooks->on_allocation(n, a);
    }
    report.allocation_runtime_cdf.push_back(allocation_runtime);
    report.total_runtime_cdf.push_back(result.runtime + allocation_runtime);

    previous = std::move(result.matching);
  }

  const double sims = static_cast<double>(spec.realizations);
  report.mu_M_hat = static_cast<double>(pair_total) / (sims * n_sats);
  report.mu_M_hat_from_degrees = static_cast<double>(degree_total) / (2.0 * sims * n_sats);
  report.mu_M_hat_normalized = report.mu_M_hat / (0.5 * spec.transceivers);
  report.mu_R_snr = matching_weight_total / sims;
  if (allocate) {
    report.mu_R_sinr = allocation_weight_total / sims;
    report.mu_R_sinr_hat = matching_weight_total > 0.0 ? allocation_weight_total / matching_weight_total : 0.0;
  }
  for (auto* samples : {&report.rate_cdf, &report.delay_cdf, &report.runtime_cdf, &report.allocation_runtime_cdf,
                        &report.total_runtime_cdf}) {
    std::sort(samples->begin(), samples->end());
  }
  return report;
}

std::vector<SweepOutcome> sweep(const std::vector<ExperimentSpec>& specs, int jobs) {
  if (specs.empty()) throw std::invalid_argument("sweep needs at least one experiment");
  std::vector<SweepOutcome> outcomes(specs.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < specs.size(); i = next++) {
      try {
        outcomes[i].report = run_experiment(specs[i]);
      } catch (const std::exception& e) {
        outcomes[i].error = e.what();
      }
    }
  };
  const auto threads = static_cast<std::size_t>(std::clamp<int>(jobs, 1, static_cast<int>(specs.size())));
  if (threads == 1) {
    worker();
    return outcomes;
  }
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  pool.clear();
  return outcomes;
}

void write_report_csvs(const std::filesystem::path& dir, const std::vector<MetricsReport>& reports) {
  std::filesystem::create_directories(dir);

  {
    auto out = open_csv(dir / "metrics_summary.csv");
    CsvWriter csv(out);
    csv.row("label", "planes", "sats_per_plane", "transceivers", "matching", "allocation", "resources", "scheme",
            "antenna", "realizations", "seed", "mu_M_hat", "mu_M_hat_normalized", "mu_R_snr_bps", "mu_R_sinr_bps",
            "mu_R_sinr_hat", "min_degree", "mean_churn", "permissibility_violations");
    for (const MetricsReport& r : reports) {
      const ExperimentSpec& s = r.spec;
      const auto opt = [](const std::optional<double>& v) {
        if (!v) return std::string();
        std::ostringstream os;
        CsvWriter(os).row(*v);
        std::string text = os.str();
        text.pop_back();
        return text;
      };
      csv.row(s.effective_label(), s.constellation.planes, s.constellation.sats_per_plane, s.transceivers,
              to_string(s.matching), to_string(s.allocation), s.resources.count, to_string(s.resources.scheme),
              to_string(s.radio.antenna), s.realizations, s.seed, r.mu_M_hat, r.mu_M_hat_normalized, r.mu_R_snr,
              opt(r.mu_R_sinr), opt(r.mu_R_sinr_hat), r.min_degree(), r.mean_churn(), r.permissibility_violations);
    }
  }
  {
    auto out = open_csv(dir / "rate_cdf.csv");
    CsvWriter csv(out);
    csv.row("label", "index", "rate_bps");
    for (const MetricsReport& r : reports) {
      const std::string label = r.spec.effective_label();
      for (std::size_t i = 0; i < r.rate_cdf.size(); ++i) csv.row(label, i, r.rate_cdf[i]);
    }
  }
  {
    auto out = open_csv(dir / "delay_cdf.csv");
    CsvWriter csv(out);
    csv.row("label", "index", "delay_s");
    for (const MetricsReport& r : reports) {
      const std::string label = r.spec.effective_label();
      for (std::size_t i = 0; i < r.delay_cdf.size(); ++i) csv.row(label, i, r.delay_cdf[i]);
    }
  }
  {
    auto out = open_csv(dir / "k_sweep.csv");
    CsvWriter csv(out);
    csv.row("label", "planes", "transceivers", "matching", "allocation", "scheme", "antenna", "K", "mu_R_snr_bps",
            "mu_R_sinr_bps", "mu_R_sinr_hat");
    for (const MetricsReport& r : reports) {
      if (!r.mu_R_sinr_hat) continue;
      const ExperimentSpec& s = r.spec;
      csv.row(s.effective_label(), s.constellation.planes, s.transceivers, to_string(s.matching),
              to_string(s.allocation), to_string(s.resources.scheme), to_string(s.radio.antenna), s.resources.count,
              r.mu_R_snr, *r.mu_R_sinr, *r.mu_R_sinr_hat);
    }
  }
  {
    auto out = open_csv(dir / "churn.csv");
    CsvWriter csv(out);
    csv.row("label", "n", "churn", "isl_count", "min_degree", "matching_weight_bps");
    for (const MetricsReport& r : reports) {
      const std::string label = r.spec.effective_label();
      for (std::size_t i = 0; i < r.churn_series.size(); ++i) {
        csv.row(label, i + 1, r.churn_series[i], r.isl_series[i], r.min_degree_series[i],
                r.matching_weight_series[i]);
      }
    }
  }
  {
    auto out = open_csv(dir / "degree_map.csv");
    CsvWriter csv(out);
    csv.row("label", "satellite", "plane", "phase_rad", "degree");
    for (const MetricsReport& r : reports) {
      const std::string label = r.spec.effective_label();
      for (const SatelliteDegree& d : r.degree_map) csv.row(label, d.id, d.plane, d.phase, d.degree);
    }
  }
  {
    auto out = open_csv(dir / "runtime_cdf.csv");
    CsvWriter csv(out);
    csv.row("label", "index", "matching_runtime_s", "allocation_runtime_s", "total_runtime_s");
    for (const MetricsReport& r : reports) {
      const std::string label = r.spec.effective_label();
      for (std::size_t i = 0; i < r.runtime_cdf.size(); ++i) {
        csv.row(label, i, r.runtime_cdf[i], r.allocation_runtime_cdf[i], r.total_runtime_cdf[i]);
      }
    }
  }
}

}  // namespace islsim
