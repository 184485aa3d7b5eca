#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "islsim/allocation.hpp"
#include "islsim/config.hpp"
#include "islsim/csv.hpp"
#include "islsim/design.hpp"
#include "islsim/oracle/checks.hpp"
#include "islsim/oracle/oracle.hpp"
#include "islsim/simharness.hpp"

#ifndef ISLSIM_VERSION
#define ISLSIM_VERSION "0.0.0"
#endif
#ifndef ISLSIM_GIT_HASH
#define ISLSIM_GIT_HASH "unknown"
#endif

namespace fs = std::filesystem;
using namespace islsim;

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

// Every spec field that can be overridden from the command line.
struct SpecFlags {
  std::optional<std::string> config;
  std::optional<int> planes, sats_per_plane, transceivers, resources, nsim;
  std::optional<double> base_altitude_km, delta_altitude_km, freq_ghz, bandwidth_mhz, noise_temp_k, eirpg_w,
      rmin_kbps, period_s;
  std::optional<std::string> matching, allocation, scheme, antenna, label;
  std::optional<std::uint64_t> seed;

  void add(CLI::App* app, bool with_config = true) {
    if (with_config) app->add_option("--config", config, "JSON experiment spec; flags override its values");
    app->add_option("--planes", planes, "orbital planes P");
    app->add_option("--sats-per-plane", sats_per_plane, "satellites per plane N_p");
    app->add_option("--base-altitude-km", base_altitude_km, "altitude of plane 1");
    app->add_option("--delta-altitude-km", delta_altitude_km, "altitude step between planes");
    app->add_option("--freq-ghz", freq_ghz, "carrier frequency");
    app->add_option("--bandwidth-mhz", bandwidth_mhz, "bandwidth");
    app->add_option("--noise-temp-k", noise_temp_k, "noise temperature");
    app->add_option("--eirpg-w", eirpg_w, "EIRP times receive gain");
    app->add_option("--rmin-kbps", rmin_kbps, "minimum rate");
    app->add_option("--transceivers", transceivers, "transceivers per satellite Q (1 or 2)");
    app->add_option("--matching", matching, "giem|gmm|geo");
    app->add_option("--allocation", allocation, "gra|rr|random|none");
    app->add_option("--resources", resources, "orthogonal resources K");
    app->add_option("--scheme", scheme, "ofdma|cdma");
    app->add_option("--antenna", antenna, "narrow|isotropic");
    app->add_option("--period-s", period_s, "matching period T");
    app->add_option("--nsim", nsim, "realizations N_sim");
    app->add_option("--seed", seed, "random allocation seed");
    app->add_option("--label", label, "experiment label used in CSV output");
  }

  ExperimentSpec base() const {
    if (!config) return {};
    return spec_from_json(read_text_file(*config));
  }

  ExperimentSpec apply(ExperimentSpec s) const {
    try {
      if (planes) s.constellation.planes = *planes;
      if (sats_per_plane) s.constellation.sats_per_plane = *sats_per_plane;
      if (base_altitude_km) s.constellation.base_altitude = *base_altitude_km * 1e3;
      if (delta_altitude_km) s.constellation.delta_altitude = *delta_altitude_km * 1e3;
      if (freq_ghz) s.radio.frequency = *freq_ghz * 1e9;
      if (bandwidth_mhz) s.radio.bandwidth = *bandwidth_mhz * 1e6;
      if (noise_temp_k) s.radio.noise_temperature = *noise_temp_k;
      if (eirpg_w) s.radio.eirpg = *eirpg_w;
      if (rmin_kbps) s.radio.min_rate = *rmin_kbps * 1e3;
      if (antenna) s.radio.antenna = parse_antenna_scenario(*antenna);
      if (transceivers) s.transceivers = *transceivers;
      if (matching) s.matching = parse_matching_algorithm(*matching);
      if (allocation) s.allocation = parse_allocation_algorithm(*allocation);
      if (resources) s.resources.count = *resources;
      if (scheme) s.resources.scheme = parse_access_scheme(*scheme);
      if (period_s) s.period = *period_s;
      if (nsim) s.realizations = *nsim;
      if (seed) s.seed = *seed;
      if (label) s.label = *label;
      s.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    return s;
  }

  ExperimentSpec resolve() const { return apply(base()); }
};

struct DumpFlags {
  bool edges = false, matching = false, allocation = false;

  void add(CLI::App* app) {
    app->add_flag("--dump-edges", edges, "write edges.csv for every realization");
    app->add_flag("--dump-matching", matching, "write matching.csv for every realization");
    app->add_flag("--dump-allocation", allocation, "write allocation.csv for every realization");
  }
};

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

void write_text(const fs::path& path, const std::string& text) {
  auto out = open_out(path);
  out << text << '\n';
}

nlohmann::ordered_json manifest(const std::vector<ExperimentSpec>& specs) {
  nlohmann::ordered_json m;
  m["tool"] = "islsim";
  m["version"] = ISLSIM_VERSION;
  m["git_hash"] = ISLSIM_GIT_HASH;
  m["random_allocation_generator"] = std::string(kRandomAllocationGenerator);
  m["specs"] = nlohmann::ordered_json::array();
  for (const auto& s : specs) {
    auto j = nlohmann::ordered_json::parse(spec_to_json(s));
    j["effective_label"] = s.effective_label();
    m["specs"].push_back(std::move(j));
  }
  return m;
}

// Opens the requested per-realization dump files and returns hooks feeding them.
struct Dumps {
  std::optional<std::ofstream> edges, matching, allocation;
  std::optional<CsvWriter> edges_csv, matching_csv, allocation_csv;
  RunHooks hooks;

  Dumps(const fs::path& dir, const DumpFlags& flags) {
    if (flags.edges) {
      edges.emplace(open_out(dir / "edges.csv"));
      edges_csv.emplace(*edges);
      edges_csv->row("n", "u", "v", "plane_u", "plane_v", "dist_m", "rate_snr_bps");
      hooks.on_graph = [this](int n, const Constellation&, const FeasibilityGraph& g) {
        for (const Edge& e : g.edges()) edges_csv->row(n, e.u, e.v, e.plane_u, e.plane_v, e.dist, e.rate_snr());
      };
    }
    if (flags.matching) {
      matching.emplace(open_out(dir / "matching.csv"));
      matching_csv.emplace(*matching);
      matching_csv->row("n", "u", "v", "rate_snr_bps", "dist_m", "retained_flag");
      hooks.on_matching = [this](int n, const MatchingResult& r, const Matching& previous) {
        for (const Edge& e : r.matching.pairs()) {
          matching_csv->row(n, e.u, e.v, e.rate_snr(), e.dist, previous.contains(e.u, e.v) ? 1 : 0);
        }
      };
    }
    if (flags.allocation) {
      allocation.emplace(open_out(dir / "allocation.csv"));
      allocation_csv.emplace(*allocation);
      allocation_csv->row("n", "u", "v", "k", "rate_uv_bps", "rate_vu_bps");
      hooks.on_allocation = [this](int n, const Allocation& a) {
        for (std::size_t i = 0; i < a.size(); ++i) {
          allocation_csv->row(n, a.pairs[i].u, a.pairs[i].v, a.resource[i], a.rates[i].to_v, a.rates[i].to_u);
        }
      };
    }
  }

  Dumps(const Dumps&) = delete;
  Dumps& operator=(const Dumps&) = delete;
};

void print_summary(const MetricsReport& r) {
  std::printf("%s: mu_M=%.6g mu_M_norm=%.6g mu_R_snr=%.6g bit/s", r.spec.effective_label().c_str(), r.mu_M_hat,
              r.mu_M_hat_normalized, r.mu_R_snr);
  if (r.mu_R_sinr_hat) std::printf(" mu_R_sinr_hat=%.6g", *r.mu_R_sinr_hat);
  std::printf(" min_degree=%d violations=%d\n", r.min_degree(), r.permissibility_violations);
}

int cmd_design(const SpecFlags& flags, int doppler_grid) {
  const ExperimentSpec s = flags.resolve();
  const DesignReport d = design_report(s.constellation, s.radio);
  std::printf("l_adj_star_km      %.3f\n", d.l_adj_star / 1e3);
  std::printf("max_path_loss_db   %.3f\n", d.mpl_db);
  std::printf("required_eirpg_w   %.4f\n", d.eirpg);
  std::printf("max_delay_ms       %.4f\n", d.max_delay * 1e3);
  const int planes = s.constellation.planes;
  std::printf("doppler_seam_khz   %.3f\n", max_doppler(s.constellation, 1, planes, s.radio.frequency, doppler_grid) / 1e3);
  std::printf("doppler_adj_khz    %.3f\n", max_doppler(s.constellation, 1, 2, s.radio.frequency, doppler_grid) / 1e3);
  return 0;
}

int cmd_graph(const SpecFlags& flags, double epoch, const std::optional<std::string>& out) {
  const ExperimentSpec s = flags.resolve();
  const Constellation c = Constellation(s.constellation).propagate(epoch);
  const FeasibilityGraph g = build_feasibility_graph(c, s.radio);
  if (out) {
    auto f = open_out(*out);
    write_edges_csv(f, g);
  } else {
    write_edges_csv(std::cout, g);
  }
  std::fprintf(stderr, "%zu edges, min degree %d\n", g.edges().size(), g.min_degree());
  return 0;
}

int cmd_run(const ExperimentSpec& spec, const std::optional<std::string>& out, const DumpFlags& dumps) {
  std::optional<Dumps> files;
  if (out) {
    fs::create_directories(*out);
    write_text(fs::path(*out) / "config.json", spec_to_json(spec));
    write_text(fs::path(*out) / "manifest.json", manifest({spec}).dump(2));
    files.emplace(*out, dumps);
  } else if (dumps.edges || dumps.matching || dumps.allocation) {
    throw ConfigError("--dump-* options need --out");
  }
  const MetricsReport r = run_experiment(spec, files ? &files->hooks : nullptr);
  print_summary(r);
  if (out) write_report_csvs(*out, {r});
  return 0;
}

int cmd_sweep(const SpecFlags& flags, const std::string& out, int jobs) {
  if (!flags.config) throw ConfigError("sweep needs --config");
  const auto base = flags.apply(ExperimentSpec{});
  std::vector<ExperimentSpec> specs = sweep_from_json(read_text_file(*flags.config), base);
  for (auto& s : specs) s = flags.apply(s);

  fs::create_directories(out);
  nlohmann::ordered_json echo;
  echo["specs"] = nlohmann::ordered_json::array();
  for (const auto& s : specs) echo["specs"].push_back(nlohmann::ordered_json::parse(spec_to_json(s)));
  write_text(fs::path(out) / "config.json", echo.dump(2));
  write_text(fs::path(out) / "manifest.json", manifest(specs).dump(2));

  const auto outcomes = sweep(specs, jobs);
  std::vector<MetricsReport> reports;
  int failures = 0;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    if (outcomes[i].report) {
      print_summary(*outcomes[i].report);
      reports.push_back(*outcomes[i].report);
    } else {
      ++failures;
      std::fprintf(stderr, "%s: %s\n", specs[i].effective_label().c_str(), outcomes[i].error.c_str());
    }
  }
  write_report_csvs(out, reports);
  return failures == 0 ? 0 : kExitRuntime;
}

int cmd_oracle(std::uint64_t seed, int instances) {
  const auto greedy = oracle::check_greedy_bound(seed, instances);
  const auto interference = oracle::check_interference(seed + 1, instances);
  const auto allocation = oracle::check_allocation_orderings(seed + 2, instances);
  std::printf("greedy_half_bound   %s\n", oracle::describe(greedy).c_str());
  std::printf("interference        %s\n", oracle::describe(interference).c_str());
  std::printf("allocation_ordering %s\n", oracle::describe(allocation).c_str());
  const double grid = oracle::grid_l_adj(ConstellationConfig{});
  const double closed = l_adj_star(ConstellationConfig{});
  std::printf("l_adj grid_km=%.3f closed_form_km=%.3f\n", grid / 1e3, closed / 1e3);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Inter-plane ISL establishment simulator for Walker-star constellations"};
  app.set_version_flag("--version", std::string(ISLSIM_VERSION) + " (" + ISLSIM_GIT_HASH + ")");
  app.require_subcommand(1);

  SpecFlags design_flags, graph_flags, match_flags, run_flags, sweep_flags;
  DumpFlags match_dumps, run_dumps;
  std::optional<std::string> graph_out, match_out, run_out;
  std::string sweep_out = "results";
  double epoch = 0.0;
  int doppler_grid = 720;
  int jobs = 1;
  std::uint64_t oracle_seed = 1;
  int oracle_instances = 200;

  auto* design = app.add_subcommand("design", "maximum adjacent-plane range, path loss and required EIRPG");
  design_flags.add(design);
  design->add_option("--doppler-grid", doppler_grid, "phase samples per plane for the Doppler search")
      ->check(CLI::PositiveNumber);

  auto* graph = app.add_subcommand("graph", "dump the feasibility graph at one epoch");
  graph_flags.add(graph);
  graph->add_option("--epoch-s", epoch, "seconds after the initial geometry")->check(CLI::NonNegativeNumber);
  graph->add_option("--out", graph_out, "CSV file (stdout when absent)");

  auto* match = app.add_subcommand("match", "single matching realization");
  match_flags.add(match);
  match->add_option("--out", match_out, "output directory");
  match_dumps.add(match);

  auto* run = app.add_subcommand("run", "full experiment");
  run_flags.add(run);
  run->add_option("--out", run_out, "output directory");
  run->add_option("--jobs", jobs, "worker threads (a single run uses one)")->check(CLI::PositiveNumber);
  run_dumps.add(run);

  auto* sweep_cmd = app.add_subcommand("sweep", "run every spec of a sweep config");
  sweep_flags.add(sweep_cmd);
  sweep_cmd->add_option("--out", sweep_out, "output directory");
  sweep_cmd->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);

  auto* oracle_cmd = app.add_subcommand("oracle", "small-instance comparisons against brute force");
  oracle_cmd->add_option("--seed", oracle_seed, "instance generator seed");
  oracle_cmd->add_option("--instances", oracle_instances, "instances per check")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*design) return cmd_design(design_flags, doppler_grid);
    if (*graph) return cmd_graph(graph_flags, epoch, graph_out);
    if (*match) {
      ExperimentSpec spec = match_flags.base();
      spec.realizations = 1;
      return cmd_run(match_flags.apply(spec), match_out, match_dumps);
    }
    if (*run) return cmd_run(run_flags.resolve(), run_out, run_dumps);
    if (*sweep_cmd) return cmd_sweep(sweep_flags, sweep_out, jobs);
    if (*oracle_cmd) return cmd_oracle(oracle_seed, oracle_instances);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitRuntime;
  }
  return 0;
}
