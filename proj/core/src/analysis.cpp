#include "mapgen/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace mapgen {

namespace {

int key_rank_repr(const std::optional<ReprKind>& r) {
  return r ? static_cast<int>(*r) : -1;
}

struct KeyLess {
  bool operator()(const ConfigKey& a, const ConfigKey& b) const {
    return config_key_less(a, b);
  }
};

double mean(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  double sum = 0.0;
  for (double x : v) sum += x;
  return sum / static_cast<double>(v.size());
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

std::string ConfigKey::label() const {
  std::string s = algorithm_name(algorithm);
  if (representation) {
    s += '/';
    s += repr_name(*representation);
  }
  return s;
}

bool config_key_less(const ConfigKey& a, const ConfigKey& b) {
  if (a.algorithm != b.algorithm)
    return static_cast<int>(a.algorithm) < static_cast<int>(b.algorithm);
  if (key_rank_repr(a.representation) != key_rank_repr(b.representation))
    return key_rank_repr(a.representation) < key_rank_repr(b.representation);
  return static_cast<int>(a.objective) < static_cast<int>(b.objective);
}

std::vector<SummaryRow> summarize(const std::vector<RunRecord>& records) {
  struct Bucket {
    std::int64_t runs = 0, solved = 0;
    std::vector<double> wall, evals, iters, max_depth, sol_depth, score;
  };
  std::map<ConfigKey, Bucket, KeyLess> buckets;

  for (const RunRecord& r : records) {
    const ConfigKey key{r.algorithm, r.representation, r.objective};
    Bucket& b = buckets[key];
    ++b.runs;
    if (r.solved) ++b.solved;
    b.wall.push_back(static_cast<double>(r.wall_ms));
    b.evals.push_back(static_cast<double>(r.evaluations));
    b.iters.push_back(static_cast<double>(r.iterations));
    b.score.push_back(r.final_score);
    if (r.max_depth) b.max_depth.push_back(static_cast<double>(*r.max_depth));
    if (r.solution_depth) b.sol_depth.push_back(static_cast<double>(*r.solution_depth));
  }

  std::vector<SummaryRow> rows;
  rows.reserve(buckets.size());
  for (const auto& [key, b] : buckets) {
    SummaryRow row;
    row.key = key;
    row.runs = b.runs;
    row.solved = b.solved;
    row.solution_pct = b.runs > 0 ? 100.0 * static_cast<double>(b.solved) / b.runs : 0.0;
    row.mean_wall_ms = mean(b.wall);
    row.median_wall_ms = median(b.wall);
    row.mean_evaluations = mean(b.evals);
    row.mean_iterations = mean(b.iters);
    if (!b.max_depth.empty()) row.mean_max_depth = mean(b.max_depth);
    if (!b.sol_depth.empty()) row.mean_solution_depth = mean(b.sol_depth);
    row.mean_final_score = mean(b.score);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string summary_to_csv(const std::vector<SummaryRow>& rows) {
  std::string out =
      "algorithm,representation,objective,runs,solved,solution_pct,mean_wall_ms,"
      "median_wall_ms,mean_evaluations,mean_iterations,mean_max_depth,"
      "mean_solution_depth,mean_final_score\n";
  for (const SummaryRow& r : rows) {
    out += algorithm_name(r.key.algorithm);
    out += ',';
    out += r.key.representation ? repr_name(*r.key.representation) : "";
    out += ',';
    out += objective_name(r.key.objective);
    out += ',';
    out += std::to_string(r.runs);
    out += ',';
    out += std::to_string(r.solved);
    out += ',';
    out += format_double(r.solution_pct);
    out += ',';
    out += format_double(r.mean_wall_ms);
    out += ',';
    out += format_double(r.median_wall_ms);
    out += ',';
    out += format_double(r.mean_evaluations);
    out += ',';
    out += format_double(r.mean_iterations);
    out += ',';
    out += r.mean_max_depth ? format_double(*r.mean_max_depth) : "";
    out += ',';
    out += r.mean_solution_depth ? format_double(*r.mean_solution_depth) : "";
    out += ',';
    out += format_double(r.mean_final_score);
    out += '\n';
  }
  return out;
}

ExpressiveTable expressive_range(const std::vector<RunRecord>& records,
                                 ObjectiveKind driving, int bins, bool solved_only) {
  ExpressiveTable table;
  table.driving = driving;
  table.solved_only = solved_only;
  table.bins = bins;
  switch (driving) {
    case ObjectiveKind::empty_tiles:
      table.x_metric = "path_length";
      table.y_metric = "region_count";
      break;
    case ObjectiveKind::path_length:
      table.x_metric = "empty_count";
      table.y_metric = "region_count";
      break;
    case ObjectiveKind::connectivity:
      table.x_metric = "empty_count";
      table.y_metric = "path_length";
      break;
  }

  // tile count from the first usable record; bins need it for their edges
  for (const RunRecord& r : records) {
    if (r.objective == driving && !r.map.empty()) {
      table.tile_count = static_cast<int>(r.map.size());
      break;
    }
  }
  if (table.tile_count == 0) {
    table.bins_x = table.bins_y = 0;
    return table;
  }

  const int t = table.tile_count;
  auto empty_bin = [&](int e) { return std::min(bins - 1, e * bins / t); };
  auto path_bin = [&](int p) { return std::min(bins - 1, p * bins / (2 * t)); };
  auto region_bin = [&](int r) { return std::min(r, t / 2); };

  table.bins_x = bins;
  table.bins_y = table.y_metric == "region_count" ? t / 2 + 1 : bins;

  std::map<ConfigKey, ExpressiveTable::PerConfig, KeyLess> configs;
  for (const RunRecord& r : records) {
    if (r.objective != driving || r.map.empty()) continue;
    if (solved_only && !r.solved) continue;
    if (static_cast<int>(r.map.size()) != t) continue;  // mixed sizes: skip

    int x = 0, y = 0;
    switch (driving) {
      case ObjectiveKind::empty_tiles:
        x = path_bin(r.path_length);
        y = region_bin(r.region_count);
        break;
      case ObjectiveKind::path_length:
        x = empty_bin(r.empty_count);
        y = region_bin(r.region_count);
        break;
      case ObjectiveKind::connectivity:
        x = empty_bin(r.empty_count);
        y = path_bin(r.path_length);
        break;
    }

    const ConfigKey key{r.algorithm, r.representation, r.objective};
    auto& cfg = configs[key];
    if (cfg.counts.empty()) {
      cfg.key = key;
      cfg.counts.assign(static_cast<std::size_t>(table.bins_x) * table.bins_y, 0);
    }
    cfg.counts[static_cast<std::size_t>(y) * table.bins_x + x] += 1;
    cfg.total += 1;
  }

  table.configs.reserve(configs.size());
  for (auto& [key, cfg] : configs) table.configs.push_back(std::move(cfg));
  return table;
}

std::string expressive_to_csv(const ExpressiveTable& table) {
  std::string out = "algorithm,representation,bin_x,bin_y,count\n";
  for (const auto& cfg : table.configs) {
    for (int y = 0; y < table.bins_y; ++y) {
      for (int x = 0; x < table.bins_x; ++x) {
        const std::int64_t count = cfg.counts[static_cast<std::size_t>(y) * table.bins_x + x];
        if (count == 0) continue;
        out += algorithm_name(cfg.key.algorithm);
        out += ',';
        out += cfg.key.representation ? repr_name(*cfg.key.representation) : "";
        out += ',';
        out += std::to_string(x);
        out += ',';
        out += std::to_string(y);
        out += ',';
        out += std::to_string(count);
        out += '\n';
      }
    }
  }
  return out;
}

std::vector<std::string> write_analysis_outputs(const std::vector<RunRecord>& records,
                                                const std::string& out_dir, int bins,
                                                bool solved_only, std::string* error) {
  namespace fs = std::filesystem;
  std::vector<std::string> written;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) {
    if (error) *error = "cannot create output directory: " + ec.message();
    return written;
  }

  auto emit = [&](const std::string& name, const std::string& content) -> bool {
    const fs::path path = fs::path(out_dir) / name;
    std::ofstream f(path, std::ios::binary);
    f << content;
    if (!f) {
      if (error) *error = "cannot write " + path.string();
      return false;
    }
    written.push_back(path.string());
    return true;
  };

  const auto rows = summarize(records);
  if (!emit("summary.csv", summary_to_csv(rows))) return written;
  if (!emit("summary.svg", render_summary_svg(rows))) return written;

  for (ObjectiveKind driving : {ObjectiveKind::empty_tiles, ObjectiveKind::path_length,
                                ObjectiveKind::connectivity}) {
    const auto table = expressive_range(records, driving, bins, solved_only);
    const std::string base = std::string("expressive_") + objective_name(driving);
    if (!emit(base + ".csv", expressive_to_csv(table))) return written;
    if (!emit(base + ".svg", render_expressive_svg(table))) return written;
  }
  return written;
}

}  // namespace mapgen
