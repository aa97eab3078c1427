#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mapgen/budget.hpp"
#include "mapgen/grid.hpp"
#include "mapgen/objective.hpp"
#include "mapgen/optimizer.hpp"
#include "mapgen/representation.hpp"
#include "mapgen/rng.hpp"
#include "mapgen/tree_search.hpp"

namespace mapgen {

enum class AlgorithmKind { bfs, dfs, bestfs, mcts, hc, sa, es, ga };

inline constexpr AlgorithmKind kTreeAlgorithms[] = {
    AlgorithmKind::bfs, AlgorithmKind::dfs, AlgorithmKind::bestfs, AlgorithmKind::mcts};
inline constexpr AlgorithmKind kOptimizerAlgorithms[] = {
    AlgorithmKind::hc, AlgorithmKind::sa, AlgorithmKind::es, AlgorithmKind::ga};
inline constexpr ReprKind kAllRepresentations[] = {ReprKind::narrow, ReprKind::turtle,
                                                   ReprKind::wide};

bool is_tree_search(AlgorithmKind k);
const char* algorithm_name(AlgorithmKind k);
std::optional<AlgorithmKind> algorithm_from_name(const std::string& name);

struct AlgorithmParams {
  MctsParams mcts;
  SaParams sa;
  EsParams es;
  GaParams ga;
  bool hc_restarts = false;
};

// Everything one generation attempt needs. Tree-search algorithms require a
// representation; optimizers work on the grid directly and require none.
struct RunConfig {
  AlgorithmKind algorithm = AlgorithmKind::bfs;
  std::optional<ReprKind> representation;
  ObjectiveSpec objective;
  int width = 10;
  int height = 10;
  double init_empty_pct = 0.5;
  std::uint64_t seed = 0;
  Budget budget;
  AlgorithmParams params;

  std::string validate() const;  // empty when valid
};

// One row of the results CSV.
struct RunRecord {
  std::int64_t run_id = 0;
  AlgorithmKind algorithm = AlgorithmKind::bfs;
  std::optional<ReprKind> representation;
  ObjectiveKind objective = ObjectiveKind::empty_tiles;
  double init_pct = 0.0;
  std::uint64_t seed = 0;
  bool solved = false;
  std::int64_t wall_ms = 0;
  std::int64_t evaluations = 0;
  std::int64_t iterations = 0;  // nodes expanded for tree runs
  std::optional<int> max_depth;       // tree runs only
  std::optional<int> solution_depth;  // tree runs only; unsolved runs report
                                      // max_depth + 1 (assumed next level)
  double final_score = 0.0;
  int empty_count = 0;
  int path_length = 0;
  int region_count = 0;
  std::string map;  // row-concatenated 0/1 string, empty on an error row
};

// Experiment protocol: the cross product of algorithms x representations
// (tree only) x objectives, each run runs_per_config times with the runs
// split evenly across the init percentages.
struct ExperimentSpec {
  int width = 10;
  int height = 10;
  int runs_per_config = 100;
  std::vector<double> init_empty_pcts = {0.25, 0.50, 0.75};
  std::uint64_t base_seed = 1;
  Budget budget = {5000, 50000};
  std::vector<AlgorithmKind> algorithms = {
      AlgorithmKind::bfs, AlgorithmKind::dfs, AlgorithmKind::bestfs, AlgorithmKind::mcts,
      AlgorithmKind::hc,  AlgorithmKind::sa,  AlgorithmKind::es,     AlgorithmKind::ga};
  std::vector<ReprKind> representations = {ReprKind::narrow, ReprKind::turtle,
                                           ReprKind::wide};
  std::vector<ObjectiveSpec> objectives = {
      {ObjectiveKind::empty_tiles, 45, 65, 26},
      {ObjectiveKind::path_length, 45, 65, 26},
      {ObjectiveKind::connectivity, 45, 65, 26}};
  AlgorithmParams params;

  std::string validate() const;
};

// Each cell independently empty with probability empty_pct.
Grid init_grid(int width, int height, double empty_pct, Rng& rng);

// One config template per (algorithm, representation, objective) combination,
// in canonical order: tree algorithms (bfs, dfs, bestfs, mcts) crossed with
// representations then objectives, followed by optimizers crossed with
// objectives. The paper protocol yields 36 + 12 = 48.
std::vector<RunConfig> enumerate_configs(const ExperimentSpec& spec);

struct PlannedRun {
  std::int64_t run_id = 0;  // config_index * runs_per_config + run_index
  RunConfig config;
};

// Every individual run: each config crossed with runs_per_config runs. Run i
// of a config uses init percentage init_empty_pcts[i % count] and the seed
// derive_seed(base_seed, config_index, run_index).
std::vector<PlannedRun> plan_runs(const ExperimentSpec& spec);

// Executes one run: seeds the RNG stream, builds the start map, dispatches to
// the algorithm, recomputes the three raw metrics on the final map.
RunRecord run_one(const RunConfig& cfg, std::int64_t run_id = 0);

// Runs the whole protocol with run-level parallelism. Output is ordered by
// run_id regardless of scheduling. Per-run failures become error rows (empty
// map) and are reported through on_error; they do not abort the experiment.
std::vector<RunRecord> run_experiment(
    const ExperimentSpec& spec, int parallelism,
    const std::function<void(const RunRecord&)>& on_progress = {},
    const std::function<void(const std::string&)>& on_error = {});

// MAPGEN_JOBS overrides the requested worker count when set.
int effective_parallelism(int requested);

// Results CSV. Header and row layout are fixed; absent fields are empty.
extern const char* const kResultsCsvHeader;
std::string record_to_csv_row(const RunRecord& r);
void write_results_csv(std::ostream& out, const std::vector<RunRecord>& records);

struct CsvReadStats {
  std::int64_t rows = 0;
  std::int64_t skipped = 0;
  std::vector<std::string> warnings;  // one per skipped row, with line number
};

std::vector<RunRecord> read_results_csv(std::istream& in, CsvReadStats* stats = nullptr);

// Experiment config file (JSON). All fields optional; defaults above.
// On error returns nullopt and sets *error to a message with the field path.
std::optional<ExperimentSpec> parse_experiment_json(const std::string& text,
                                                    std::string* error);
std::string experiment_to_json(const ExperimentSpec& spec);

// Short round-trip decimal form used everywhere a double is serialized.
std::string format_double(double v);

}  // namespace mapgen
