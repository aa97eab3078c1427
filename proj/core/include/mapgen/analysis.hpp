#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mapgen/harness.hpp"

namespace mapgen {

// One (algorithm, representation, objective) experiment configuration.
struct ConfigKey {
  AlgorithmKind algorithm = AlgorithmKind::bfs;
  std::optional<ReprKind> representation;
  ObjectiveKind objective = ObjectiveKind::empty_tiles;

  bool operator==(const ConfigKey&) const = default;
  std::string label() const;  // e.g. "bfs/narrow" or "ga"
};

bool config_key_less(const ConfigKey& a, const ConfigKey& b);

struct SummaryRow {
  ConfigKey key;
  std::int64_t runs = 0;
  std::int64_t solved = 0;
  double solution_pct = 0.0;
  double mean_wall_ms = 0.0;    // over all runs, solved or not
  double median_wall_ms = 0.0;
  double mean_evaluations = 0.0;
  double mean_iterations = 0.0;
  std::optional<double> mean_max_depth;       // tree configs only
  std::optional<double> mean_solution_depth;  // tree configs only
  double mean_final_score = 0.0;
};

// Per-config aggregation in canonical config order; configs with no records
// are omitted.
std::vector<SummaryRow> summarize(const std::vector<RunRecord>& records);

std::string summary_to_csv(const std::vector<SummaryRow>& rows);

// 2D histogram of the two raw metrics the driving objective does not score.
// Fixed bin edges in terms of the tile count t: empty_count over [0, t] and
// path_length over [0, 2t] in `bins` equal bins; region_count gets one bin
// per integer capped at t/2.
struct ExpressiveTable {
  ObjectiveKind driving = ObjectiveKind::empty_tiles;
  bool solved_only = true;
  int tile_count = 0;
  int bins = 20;
  int bins_x = 0;
  int bins_y = 0;
  std::string x_metric;
  std::string y_metric;

  struct PerConfig {
    ConfigKey key;
    std::vector<std::int64_t> counts;  // bins_x * bins_y, row-major in y
    std::int64_t total = 0;
  };
  std::vector<PerConfig> configs;
};

// Only records whose objective matches `driving` contribute; rows without a
// map (error rows) are ignored, as are unsolved runs unless solved_only is
// off.
ExpressiveTable expressive_range(const std::vector<RunRecord>& records,
                                 ObjectiveKind driving, int bins = 20,
                                 bool solved_only = true);

// Long form: algorithm,representation,bin_x,bin_y,count (zero cells omitted).
std::string expressive_to_csv(const ExpressiveTable& table);

// Deterministic SVG renderings: identical input yields identical bytes.
// Heatmap cell intensity is proportional to log(1 + count).
std::string render_summary_svg(const std::vector<SummaryRow>& rows);
std::string render_expressive_svg(const ExpressiveTable& table);

// Writes summary.csv, expressive_<objective>.csv and .svg siblings into
// out_dir. Returns the paths written.
std::vector<std::string> write_analysis_outputs(const std::vector<RunRecord>& records,
                                                const std::string& out_dir,
                                                int bins = 20, bool solved_only = true,
                                                std::string* error = nullptr);

}  // namespace mapgen
