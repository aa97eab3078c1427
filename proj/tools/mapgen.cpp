// mapgen: generate binary maps with tree-search or optimization algorithms,
// sweep whole experiment protocols, and aggregate the results.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "mapgen/analysis.hpp"
#include "mapgen/harness.hpp"
#include "mapgen/oracle.hpp"
#include "mapgen/version.hpp"

namespace {

using nlohmann::json;

constexpr int kExitSolved = 0;
constexpr int kExitUsage = 1;
constexpr int kExitUnsolved = 2;

struct GenerateFlags {
  std::string algorithm;
  std::string representation;
  std::string objective = "empty";
  int width = 10;
  int height = 10;
  double init_pct = 0.5;
  std::uint64_t seed = 0;
  std::int64_t max_ms = 60'000;
  std::int64_t max_evals = std::numeric_limits<std::int64_t>::max();
  int r1 = 45, r2 = 65, goal_length = 26;
  mapgen::AlgorithmParams params;
  bool quiet_map = false;
};

int run_generate(const GenerateFlags& f) {
  mapgen::RunConfig cfg;
  const auto alg = mapgen::algorithm_from_name(f.algorithm);
  if (!alg) {
    std::cerr << "unknown algorithm: " << f.algorithm << "\n";
    return kExitUsage;
  }
  cfg.algorithm = *alg;
  if (!f.representation.empty()) {
    const auto repr = mapgen::repr_from_name(f.representation);
    if (!repr) {
      std::cerr << "unknown representation: " << f.representation << "\n";
      return kExitUsage;
    }
    cfg.representation = repr;
  }
  const auto obj = mapgen::objective_from_name(f.objective);
  if (!obj) {
    std::cerr << "unknown objective: " << f.objective << "\n";
    return kExitUsage;
  }
  cfg.objective.kind = *obj;
  cfg.objective.r1 = f.r1;
  cfg.objective.r2 = f.r2;
  cfg.objective.goal_length = f.goal_length;
  cfg.width = f.width;
  cfg.height = f.height;
  cfg.init_empty_pct = f.init_pct;
  cfg.seed = f.seed;
  cfg.budget = {f.max_ms, f.max_evals};
  cfg.params = f.params;

  const std::string err = cfg.validate();
  if (!err.empty()) {
    std::cerr << "invalid configuration: " << err << "\n";
    return kExitUsage;
  }

  const mapgen::RunRecord rec = mapgen::run_one(cfg);

  if (!f.quiet_map) {
    std::string parse_err;
    const mapgen::Grid map =
        mapgen::Grid::from_row_string(rec.map, cfg.width, cfg.height, &parse_err);
    std::cout << map.to_text();
  }

  json out;
  out["solved"] = rec.solved;
  out["best_score"] = rec.final_score;
  out["evaluations"] = rec.evaluations;
  out["iterations"] = rec.iterations;
  out["wall_ms"] = rec.wall_ms;
  out["seed"] = rec.seed;
  out["empty_count"] = rec.empty_count;
  out["path_length"] = rec.path_length;
  out["region_count"] = rec.region_count;
  if (rec.max_depth) out["max_depth"] = *rec.max_depth;
  if (rec.solution_depth) out["solution_depth"] = *rec.solution_depth;
  std::cout << out.dump() << "\n";

  return rec.solved ? kExitSolved : kExitUnsolved;
}

int run_sweep(const std::string& config_path, const std::string& out_path, int jobs,
              bool quiet) {
  std::ifstream in(config_path);
  if (!in) {
    std::cerr << "cannot read config file: " << config_path << "\n";
    return kExitUsage;
  }
  std::stringstream buffer;
  buffer << in.rdbuf();

  std::string err;
  const auto spec = mapgen::parse_experiment_json(buffer.str(), &err);
  if (!spec) {
    std::cerr << "config error: " << err << "\n";
    return kExitUsage;
  }

  const int parallelism = mapgen::effective_parallelism(jobs);
  const std::size_t total = mapgen::plan_runs(*spec).size();
  if (!quiet)
    std::cerr << "sweep: " << mapgen::enumerate_configs(*spec).size() << " configs, "
              << total << " runs, " << parallelism << " worker(s)\n";

  std::int64_t done = 0;
  auto progress = [&](const mapgen::RunRecord&) {
    ++done;
    if (!quiet && done % 200 == 0)
      std::cerr << "  " << done << "/" << total << " runs\n";
  };
  auto on_error = [](const std::string& msg) { std::cerr << "run error: " << msg << "\n"; };

  const auto records = mapgen::run_experiment(*spec, parallelism, progress, on_error);

  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "cannot write results: " << out_path << "\n";
    return kExitUsage;
  }
  mapgen::write_results_csv(out, records);
  out.close();

  json manifest;
  manifest["version"] = mapgen::kVersion;
  manifest["base_seed"] = spec->base_seed;
  manifest["jobs"] = parallelism;
  manifest["config"] = json::parse(mapgen::experiment_to_json(*spec));
  const std::string manifest_path = out_path + ".manifest.json";
  std::ofstream mf(manifest_path, std::ios::binary);
  mf << manifest.dump(2) << "\n";

  if (!quiet)
    std::cerr << "wrote " << records.size() << " records to " << out_path << " (manifest "
              << manifest_path << ")\n";
  return 0;
}

int run_analyze(const std::string& results_path, const std::string& out_dir, int bins,
                bool include_unsolved) {
  std::ifstream in(results_path);
  if (!in) {
    std::cerr << "cannot read results file: " << results_path << "\n";
    return kExitUsage;
  }

  mapgen::CsvReadStats stats;
  const auto records = mapgen::read_results_csv(in, &stats);
  for (const std::string& w : stats.warnings) std::cerr << "warning: " << w << "\n";
  if (stats.skipped > 0)
    std::cerr << stats.skipped << " row(s) skipped, " << stats.rows << " parsed\n";

  std::string err;
  const auto written = mapgen::write_analysis_outputs(records, out_dir, bins,
                                                      !include_unsolved, &err);
  if (!err.empty()) {
    std::cerr << err << "\n";
    return kExitUsage;
  }
  for (const std::string& path : written) std::cout << path << "\n";
  return 0;
}

int run_oracle_check(int sample, std::uint64_t seed) {
  if (const auto failure = mapgen::oracle::check_grid_metrics_exhaustive()) {
    std::cerr << "FAIL: " << *failure << "\n";
    return 1;
  }
  std::cout << "grid metrics match oracles on all 512 3x3 grids\n";

  if (sample > 0) {
    if (const auto failure = mapgen::oracle::check_bfs_optimality(sample, seed)) {
      std::cerr << "FAIL: " << *failure << "\n";
      return 1;
    }
    std::cout << "bfs solution depth optimal on " << sample
              << " sampled instances per representation\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"binary map generation via tree search and optimization"};
  app.require_subcommand(1);

  GenerateFlags gen;
  CLI::App* generate = app.add_subcommand("generate", "run one generation attempt");
  generate->add_option("--algorithm", gen.algorithm,
                       "bfs | dfs | bestfs | mcts | hc | sa | es | ga")->required();
  generate->add_option("--representation", gen.representation,
                       "narrow | turtle | wide (tree-search algorithms only)");
  generate->add_option("--objective", gen.objective, "empty | path | connectivity");
  generate->add_option("--width", gen.width);
  generate->add_option("--height", gen.height);
  generate->add_option("--init-pct", gen.init_pct, "probability a start tile is empty");
  generate->add_option("--seed", gen.seed);
  generate->add_option("--max-ms", gen.max_ms, "wall-clock budget");
  generate->add_option("--max-evals", gen.max_evals, "evaluation budget");
  generate->add_option("--r1", gen.r1, "empty-tiles lower bound");
  generate->add_option("--r2", gen.r2, "empty-tiles upper bound");
  generate->add_option("--goal-length", gen.goal_length, "path-length goal");
  generate->add_option("--rollout-depth", gen.params.mcts.rollout_depth);
  generate->add_option("--epsilon-c", gen.params.mcts.epsilon_c);
  generate->add_option("--t0", gen.params.sa.initial_temperature);
  generate->add_option("--cooling", gen.params.sa.cooling);
  generate->add_option("--mu", gen.params.es.mu);
  generate->add_option("--lambda", gen.params.es.lambda);
  generate->add_option("--rho", gen.params.es.rho);
  generate->add_option("--es-mutation-rate", gen.params.es.mutation_rate);
  generate->add_option("--population", gen.params.ga.population);
  generate->add_option("--crossover-rate", gen.params.ga.crossover_rate);
  generate->add_option("--mutation-rate", gen.params.ga.mutation_rate);
  generate->add_option("--elites", gen.params.ga.elites);
  generate->add_flag("--hc-restarts", gen.params.hc_restarts,
                     "restart hill climbing from a fresh map at local optima");
  generate->add_flag("--no-map", gen.quiet_map, "print only the JSON outcome");

  std::string sweep_config, sweep_out = "results.csv";
  int sweep_jobs = 1;
  bool sweep_quiet = false;
  CLI::App* sweep = app.add_subcommand("sweep", "run an experiment protocol");
  sweep->add_option("--config", sweep_config, "experiment JSON file")->required();
  sweep->add_option("--out", sweep_out, "results CSV path");
  sweep->add_option("--jobs", sweep_jobs, "worker threads (MAPGEN_JOBS overrides)");
  sweep->add_flag("--quiet", sweep_quiet);

  std::string an_results, an_out = "analysis";
  int an_bins = 20;
  bool an_unsolved = false;
  CLI::App* analyze = app.add_subcommand("analyze", "summarize a results CSV");
  analyze->add_option("--results", an_results, "results CSV")->required();
  analyze->add_option("--out", an_out, "output directory");
  analyze->add_option("--bins", an_bins, "histogram bins per axis");
  analyze->add_flag("--include-unsolved", an_unsolved,
                    "include unsolved runs in the expressive range");

  int oc_sample = 200;
  std::uint64_t oc_seed = 7;
  CLI::App* oracle = app.add_subcommand("oracle-check", "validate against brute-force oracles");
  oracle->add_option("--sample", oc_sample,
                     "random instances per representation (0 = exhaustive parts only)");
  oracle->add_option("--seed", oc_seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (generate->parsed()) return run_generate(gen);
    if (sweep->parsed()) return run_sweep(sweep_config, sweep_out, sweep_jobs, sweep_quiet);
    if (analyze->parsed()) return run_analyze(an_results, an_out, an_bins, an_unsolved);
    if (oracle->parsed()) return run_oracle_check(oc_sample, oc_seed);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
