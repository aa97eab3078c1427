#include "mapgen/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <charconv>
#include <cstdlib>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

namespace mapgen {

using nlohmann::json;

bool is_tree_search(AlgorithmKind k) {
  switch (k) {
    case AlgorithmKind::bfs:
    case AlgorithmKind::dfs:
    case AlgorithmKind::bestfs:
    case AlgorithmKind::mcts:
      return true;
    default:
      return false;
  }
}

const char* algorithm_name(AlgorithmKind k) {
  switch (k) {
    case AlgorithmKind::bfs: return "bfs";
    case AlgorithmKind::dfs: return "dfs";
    case AlgorithmKind::bestfs: return "bestfs";
    case AlgorithmKind::mcts: return "mcts";
    case AlgorithmKind::hc: return "hc";
    case AlgorithmKind::sa: return "sa";
    case AlgorithmKind::es: return "es";
    case AlgorithmKind::ga: return "ga";
  }
  return "?";
}

std::optional<AlgorithmKind> algorithm_from_name(const std::string& name) {
  for (AlgorithmKind k : kTreeAlgorithms)
    if (name == algorithm_name(k)) return k;
  for (AlgorithmKind k : kOptimizerAlgorithms)
    if (name == algorithm_name(k)) return k;
  return std::nullopt;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string RunConfig::validate() const {
  if (width < 1 || height < 1) return "width and height must be >= 1";
  if (!(init_empty_pct > 0.0 && init_empty_pct < 1.0))
    return "init_empty_pct must be in (0, 1)";
  if (is_tree_search(algorithm)) {
    if (!representation)
      return std::string(algorithm_name(algorithm)) + " requires a representation";
  } else if (representation) {
    return std::string(algorithm_name(algorithm)) +
           " is an optimizer and takes no representation";
  }
  const std::string obj_err = objective.validate(width * height);
  if (!obj_err.empty()) return obj_err;
  if (budget.max_millis <= 0 || budget.max_evaluations < 0)
    return "budget limits must be positive";
  return {};
}

std::string ExperimentSpec::validate() const {
  if (width < 1 || height < 1) return "width and height must be >= 1";
  if (runs_per_config < 1) return "runs_per_config must be >= 1";
  if (init_empty_pcts.empty()) return "init_empty_pcts must not be empty";
  for (double p : init_empty_pcts)
    if (!(p > 0.0 && p < 1.0)) return "init_empty_pcts entries must be in (0, 1)";
  if (algorithms.empty()) return "algorithms must not be empty";
  if (objectives.empty()) return "objectives must not be empty";
  for (const auto& obj : objectives) {
    const std::string err = obj.validate(width * height);
    if (!err.empty()) return err;
  }
  const bool any_tree = std::any_of(algorithms.begin(), algorithms.end(), is_tree_search);
  if (any_tree && representations.empty())
    return "representations must not be empty when tree algorithms are present";
  return {};
}

Grid init_grid(int width, int height, double empty_pct, Rng& rng) {
  assert(empty_pct > 0.0 && empty_pct < 1.0);
  Grid g(width, height);
  const int t = g.tile_count();
  for (int i = 0; i < t; ++i) g.set_wall(i, !(next_double(rng) < empty_pct));
  return g;
}

std::vector<RunConfig> enumerate_configs(const ExperimentSpec& spec) {
  auto enabled = [&](AlgorithmKind k) {
    return std::find(spec.algorithms.begin(), spec.algorithms.end(), k) !=
           spec.algorithms.end();
  };

  std::vector<RunConfig> configs;
  RunConfig base;
  base.width = spec.width;
  base.height = spec.height;
  base.budget = spec.budget;
  base.params = spec.params;

  for (AlgorithmKind alg : kTreeAlgorithms) {
    if (!enabled(alg)) continue;
    for (ReprKind repr : spec.representations) {
      for (const ObjectiveSpec& obj : spec.objectives) {
        RunConfig cfg = base;
        cfg.algorithm = alg;
        cfg.representation = repr;
        cfg.objective = obj;
        configs.push_back(cfg);
      }
    }
  }
  for (AlgorithmKind alg : kOptimizerAlgorithms) {
    if (!enabled(alg)) continue;
    for (const ObjectiveSpec& obj : spec.objectives) {
      RunConfig cfg = base;
      cfg.algorithm = alg;
      cfg.representation = std::nullopt;
      cfg.objective = obj;
      configs.push_back(cfg);
    }
  }
  return configs;
}

std::vector<PlannedRun> plan_runs(const ExperimentSpec& spec) {
  const auto configs = enumerate_configs(spec);
  std::vector<PlannedRun> runs;
  runs.reserve(configs.size() * spec.runs_per_config);
  for (std::size_t c = 0; c < configs.size(); ++c) {
    for (int i = 0; i < spec.runs_per_config; ++i) {
      PlannedRun run;
      run.run_id = static_cast<std::int64_t>(c) * spec.runs_per_config + i;
      run.config = configs[c];
      run.config.init_empty_pct = spec.init_empty_pcts[i % spec.init_empty_pcts.size()];
      run.config.seed = derive_seed(spec.base_seed, c, static_cast<std::uint64_t>(i));
      runs.push_back(std::move(run));
    }
  }
  return runs;
}

RunRecord run_one(const RunConfig& cfg, std::int64_t run_id) {
  RunRecord rec;
  rec.run_id = run_id;
  rec.algorithm = cfg.algorithm;
  rec.representation = cfg.representation;
  rec.objective = cfg.objective.kind;
  rec.init_pct = cfg.init_empty_pct;
  rec.seed = cfg.seed;

  Rng rng(cfg.seed);
  Grid final_map;

  if (is_tree_search(cfg.algorithm)) {
    Grid g0 = init_grid(cfg.width, cfg.height, cfg.init_empty_pct, rng);
    ReprState root = initial_state(*cfg.representation, std::move(g0), rng);
    SearchOutcome outcome;
    switch (cfg.algorithm) {
      case AlgorithmKind::bfs: outcome = bfs(cfg.objective, std::move(root), cfg.budget); break;
      case AlgorithmKind::dfs: outcome = dfs(cfg.objective, std::move(root), cfg.budget); break;
      case AlgorithmKind::bestfs:
        outcome = best_first(cfg.objective, std::move(root), cfg.budget);
        break;
      default:
        outcome = mcts(cfg.objective, std::move(root), cfg.budget, rng, cfg.params.mcts);
        break;
    }
    rec.solved = outcome.solved;
    rec.wall_ms = outcome.elapsed_millis;
    rec.evaluations = outcome.evaluations;
    rec.iterations = outcome.nodes_expanded;
    rec.max_depth = outcome.max_depth_reached;
    // unsolved runs assume the solution sits one level past the deepest reached
    rec.solution_depth =
        outcome.solved ? outcome.solution_depth : std::optional<int>(outcome.max_depth_reached + 1);
    rec.final_score = outcome.best_score;
    final_map = std::move(outcome.map);
  } else {
    GridSource source = [&cfg](Rng& r) {
      return init_grid(cfg.width, cfg.height, cfg.init_empty_pct, r);
    };
    OptimizerOutcome outcome;
    switch (cfg.algorithm) {
      case AlgorithmKind::hc: {
        HcParams hc;
        if (cfg.params.hc_restarts) hc.restart_source = source;
        outcome = hill_climb(cfg.objective, source(rng), cfg.budget, rng, hc);
        break;
      }
      case AlgorithmKind::sa:
        outcome = simulated_annealing(cfg.objective, source(rng), cfg.budget, rng, cfg.params.sa);
        break;
      case AlgorithmKind::es:
        outcome = evolution_strategy(cfg.objective, cfg.budget, rng, source, cfg.params.es);
        break;
      default:
        outcome = genetic_algorithm(cfg.objective, cfg.budget, rng, source, cfg.params.ga);
        break;
    }
    rec.solved = outcome.solved;
    rec.wall_ms = outcome.elapsed_millis;
    rec.evaluations = outcome.evaluations;
    rec.iterations = outcome.iterations;
    rec.final_score = outcome.best_score;
    final_map = std::move(outcome.map);
  }

  const GridMetrics metrics = compute_metrics(final_map);
  rec.empty_count = metrics.empty_count;
  rec.path_length = metrics.longest_shortest_path;
  rec.region_count = metrics.region_count;
  rec.map = final_map.to_row_string();
  return rec;
}

int effective_parallelism(int requested) {
  if (const char* env = std::getenv("MAPGEN_JOBS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  return std::max(requested, 1);
}

std::vector<RunRecord> run_experiment(
    const ExperimentSpec& spec, int parallelism,
    const std::function<void(const RunRecord&)>& on_progress,
    const std::function<void(const std::string&)>& on_error) {
  const auto plan = plan_runs(spec);
  std::vector<RunRecord> records(plan.size());

  auto execute = [&](std::size_t i) {
    const PlannedRun& run = plan[i];
    try {
      records[i] = run_one(run.config, run.run_id);
    } catch (const std::exception& e) {
      RunRecord rec;  // error row: config echo, no map
      rec.run_id = run.run_id;
      rec.algorithm = run.config.algorithm;
      rec.representation = run.config.representation;
      rec.objective = run.config.objective.kind;
      rec.init_pct = run.config.init_empty_pct;
      rec.seed = run.config.seed;
      records[i] = std::move(rec);
      throw std::runtime_error("run " + std::to_string(run.run_id) + ": " + e.what());
    }
  };

  if (parallelism <= 1) {
    for (std::size_t i = 0; i < plan.size(); ++i) {
      try {
        execute(i);
      } catch (const std::exception& e) {
        if (on_error) on_error(e.what());
      }
      if (on_progress) on_progress(records[i]);
    }
    return records;
  }

  std::atomic<std::size_t> next{0};
  std::mutex callback_mutex;
  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= plan.size()) break;
      std::string error;
      try {
        execute(i);
      } catch (const std::exception& e) {
        error = e.what();
      }
      if (on_progress || (!error.empty() && on_error)) {
        std::lock_guard<std::mutex> lock(callback_mutex);
        if (!error.empty() && on_error) on_error(error);
        if (on_progress) on_progress(records[i]);
      }
    }
  };

  std::vector<std::thread> threads;
  const int n = static_cast<int>(
      std::min<std::size_t>(static_cast<std::size_t>(parallelism), plan.size()));
  threads.reserve(n);
  for (int i = 0; i < n; ++i) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  return records;
}

const char* const kResultsCsvHeader =
    "run_id,algorithm,representation,objective,init_pct,seed,solved,wall_ms,"
    "evaluations,iterations,max_depth,solution_depth,final_score,empty_count,"
    "path_length,region_count,map";

std::string record_to_csv_row(const RunRecord& r) {
  std::string row;
  row.reserve(64 + r.map.size());
  auto add = [&row](const std::string& field) {
    row += field;
    row.push_back(',');
  };
  add(std::to_string(r.run_id));
  add(algorithm_name(r.algorithm));
  add(r.representation ? repr_name(*r.representation) : "");
  add(objective_name(r.objective));
  add(format_double(r.init_pct));
  add(std::to_string(r.seed));
  add(r.solved ? "1" : "0");
  add(std::to_string(r.wall_ms));
  add(std::to_string(r.evaluations));
  add(std::to_string(r.iterations));
  add(r.max_depth ? std::to_string(*r.max_depth) : "");
  add(r.solution_depth ? std::to_string(*r.solution_depth) : "");
  add(format_double(r.final_score));
  add(std::to_string(r.empty_count));
  add(std::to_string(r.path_length));
  add(std::to_string(r.region_count));
  row += r.map;
  return row;
}

void write_results_csv(std::ostream& out, const std::vector<RunRecord>& records) {
  out << kResultsCsvHeader << '\n';
  for (const RunRecord& r : records) out << record_to_csv_row(r) << '\n';
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

template <typename T>
bool parse_number(const std::string& s, T& out) {
  if (s.empty()) return false;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc{} && res.ptr == s.data() + s.size();
}

bool parse_number(const std::string& s, double& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size();
}

bool parse_bool(const std::string& s, bool& out) {
  if (s == "1" || s == "true") {
    out = true;
    return true;
  }
  if (s == "0" || s == "false") {
    out = false;
    return true;
  }
  return false;
}

}  // namespace

std::vector<RunRecord> read_results_csv(std::istream& in, CsvReadStats* stats) {
  std::vector<RunRecord> records;
  std::string line;
  std::int64_t line_no = 0;

  auto warn = [&](const std::string& msg) {
    if (stats) {
      ++stats->skipped;
      stats->warnings.push_back("line " + std::to_string(line_no) + ": " + msg);
    }
  };

  bool saw_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!saw_header) {
      saw_header = true;
      if (line == kResultsCsvHeader) continue;
      // header missing; fall through and try to parse as a data row
    }

    const auto f = split_csv_line(line);
    if (f.size() != 17) {
      warn("expected 17 fields, got " + std::to_string(f.size()));
      continue;
    }

    RunRecord r;
    const auto alg = algorithm_from_name(f[1]);
    if (!alg) {
      warn("unknown algorithm '" + f[1] + "'");
      continue;
    }
    r.algorithm = *alg;
    if (!f[2].empty()) {
      const auto repr = repr_from_name(f[2]);
      if (!repr) {
        warn("unknown representation '" + f[2] + "'");
        continue;
      }
      r.representation = repr;
    }
    const auto obj = objective_from_name(f[3]);
    if (!obj) {
      warn("unknown objective '" + f[3] + "'");
      continue;
    }
    r.objective = *obj;

    int max_depth = 0, solution_depth = 0;
    bool ok = parse_number(f[0], r.run_id) && parse_number(f[4], r.init_pct) &&
              parse_number(f[5], r.seed) && parse_bool(f[6], r.solved) &&
              parse_number(f[7], r.wall_ms) && parse_number(f[8], r.evaluations) &&
              parse_number(f[9], r.iterations) && parse_number(f[12], r.final_score) &&
              parse_number(f[13], r.empty_count) && parse_number(f[14], r.path_length) &&
              parse_number(f[15], r.region_count);
    if (ok && !f[10].empty()) {
      ok = parse_number(f[10], max_depth);
      if (ok) r.max_depth = max_depth;
    }
    if (ok && !f[11].empty()) {
      ok = parse_number(f[11], solution_depth);
      if (ok) r.solution_depth = solution_depth;
    }
    if (!ok) {
      warn("malformed numeric field");
      continue;
    }
    r.map = f[16];
    if (r.map.find_first_not_of("01") != std::string::npos) {
      warn("map string contains characters other than 0/1");
      continue;
    }

    records.push_back(std::move(r));
    if (stats) ++stats->rows;
  }
  return records;
}

namespace {

// JSON helpers that report errors with the offending field path.
struct ConfigError {
  std::string message;
};

void require_type(const std::string& path, const char* type_name, bool ok) {
  if (!ok) throw ConfigError{path + ": expected " + type_name};
}

int get_int(const json& j, const std::string& path) {
  require_type(path, "integer", j.is_number_integer());
  return j.get<int>();
}

std::uint64_t get_u64(const json& j, const std::string& path) {
  require_type(path, "unsigned integer", j.is_number_unsigned() || j.is_number_integer());
  return j.get<std::uint64_t>();
}

double get_num(const json& j, const std::string& path) {
  require_type(path, "number", j.is_number());
  return j.get<double>();
}

bool get_bool(const json& j, const std::string& path) {
  require_type(path, "boolean", j.is_boolean());
  return j.get<bool>();
}

std::string get_str(const json& j, const std::string& path) {
  require_type(path, "string", j.is_string());
  return j.get<std::string>();
}

}  // namespace

std::optional<ExperimentSpec> parse_experiment_json(const std::string& text,
                                                    std::string* error) {
  json root = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (root.is_discarded()) {
    if (error) *error = "config is not valid JSON";
    return std::nullopt;
  }

  ExperimentSpec spec;
  try {
    require_type("(root)", "object", root.is_object());
    for (const auto& [key, value] : root.items()) {
      if (key == "width") spec.width = get_int(value, key);
      else if (key == "height") spec.height = get_int(value, key);
      else if (key == "runs_per_config") spec.runs_per_config = get_int(value, key);
      else if (key == "base_seed") spec.base_seed = get_u64(value, key);
      else if (key == "init_empty_pcts") {
        require_type(key, "array of numbers", value.is_array());
        spec.init_empty_pcts.clear();
        for (std::size_t i = 0; i < value.size(); ++i)
          spec.init_empty_pcts.push_back(
              get_num(value[i], key + "[" + std::to_string(i) + "]"));
      } else if (key == "budget") {
        require_type(key, "object", value.is_object());
        for (const auto& [bk, bv] : value.items()) {
          if (bk == "max_ms") spec.budget.max_millis = get_u64(bv, "budget.max_ms");
          else if (bk == "max_evaluations")
            spec.budget.max_evaluations = get_u64(bv, "budget.max_evaluations");
          else throw ConfigError{"budget." + bk + ": unknown field"};
        }
      } else if (key == "algorithms") {
        require_type(key, "array of strings", value.is_array());
        spec.algorithms.clear();
        for (std::size_t i = 0; i < value.size(); ++i) {
          const std::string path = key + "[" + std::to_string(i) + "]";
          const auto alg = algorithm_from_name(get_str(value[i], path));
          if (!alg) throw ConfigError{path + ": unknown algorithm"};
          spec.algorithms.push_back(*alg);
        }
      } else if (key == "representations") {
        require_type(key, "array of strings", value.is_array());
        spec.representations.clear();
        for (std::size_t i = 0; i < value.size(); ++i) {
          const std::string path = key + "[" + std::to_string(i) + "]";
          const auto repr = repr_from_name(get_str(value[i], path));
          if (!repr) throw ConfigError{path + ": unknown representation"};
          spec.representations.push_back(*repr);
        }
      } else if (key == "objectives") {
        require_type(key, "array of objects", value.is_array());
        spec.objectives.clear();
        for (std::size_t i = 0; i < value.size(); ++i) {
          const std::string path = key + "[" + std::to_string(i) + "]";
          const json& o = value[i];
          require_type(path, "object", o.is_object());
          ObjectiveSpec obj;
          if (!o.contains("kind")) throw ConfigError{path + ".kind: missing"};
          const auto kind = objective_from_name(get_str(o["kind"], path + ".kind"));
          if (!kind) throw ConfigError{path + ".kind: unknown objective"};
          obj.kind = *kind;
          for (const auto& [ok_, ov] : o.items()) {
            if (ok_ == "kind") continue;
            if (ok_ == "r1") obj.r1 = get_int(ov, path + ".r1");
            else if (ok_ == "r2") obj.r2 = get_int(ov, path + ".r2");
            else if (ok_ == "goal_length") obj.goal_length = get_int(ov, path + ".goal_length");
            else throw ConfigError{path + "." + ok_ + ": unknown field"};
          }
          spec.objectives.push_back(obj);
        }
      } else if (key == "mcts") {
        require_type(key, "object", value.is_object());
        for (const auto& [pk, pv] : value.items()) {
          if (pk == "rollout_depth") spec.params.mcts.rollout_depth = get_int(pv, "mcts.rollout_depth");
          else if (pk == "epsilon_c") spec.params.mcts.epsilon_c = get_num(pv, "mcts.epsilon_c");
          else throw ConfigError{"mcts." + pk + ": unknown field"};
        }
      } else if (key == "sa") {
        require_type(key, "object", value.is_object());
        for (const auto& [pk, pv] : value.items()) {
          if (pk == "initial_temperature")
            spec.params.sa.initial_temperature = get_num(pv, "sa.initial_temperature");
          else if (pk == "cooling") spec.params.sa.cooling = get_num(pv, "sa.cooling");
          else throw ConfigError{"sa." + pk + ": unknown field"};
        }
      } else if (key == "es") {
        require_type(key, "object", value.is_object());
        for (const auto& [pk, pv] : value.items()) {
          if (pk == "mu") spec.params.es.mu = get_int(pv, "es.mu");
          else if (pk == "lambda") spec.params.es.lambda = get_int(pv, "es.lambda");
          else if (pk == "rho") spec.params.es.rho = get_int(pv, "es.rho");
          else if (pk == "mutation_rate") spec.params.es.mutation_rate = get_num(pv, "es.mutation_rate");
          else throw ConfigError{"es." + pk + ": unknown field"};
        }
      } else if (key == "ga") {
        require_type(key, "object", value.is_object());
        for (const auto& [pk, pv] : value.items()) {
          if (pk == "population") spec.params.ga.population = get_int(pv, "ga.population");
          else if (pk == "crossover_rate") spec.params.ga.crossover_rate = get_num(pv, "ga.crossover_rate");
          else if (pk == "mutation_rate") spec.params.ga.mutation_rate = get_num(pv, "ga.mutation_rate");
          else if (pk == "elites") spec.params.ga.elites = get_int(pv, "ga.elites");
          else throw ConfigError{"ga." + pk + ": unknown field"};
        }
      } else if (key == "hc") {
        require_type(key, "object", value.is_object());
        for (const auto& [pk, pv] : value.items()) {
          if (pk == "restarts") spec.params.hc_restarts = get_bool(pv, "hc.restarts");
          else throw ConfigError{"hc." + pk + ": unknown field"};
        }
      } else {
        throw ConfigError{key + ": unknown field"};
      }
    }
  } catch (const ConfigError& e) {
    if (error) *error = e.message;
    return std::nullopt;
  }

  const std::string err = spec.validate();
  if (!err.empty()) {
    if (error) *error = err;
    return std::nullopt;
  }
  return spec;
}

std::string experiment_to_json(const ExperimentSpec& spec) {
  json j;
  j["width"] = spec.width;
  j["height"] = spec.height;
  j["runs_per_config"] = spec.runs_per_config;
  j["init_empty_pcts"] = spec.init_empty_pcts;
  j["base_seed"] = spec.base_seed;
  j["budget"] = {{"max_ms", spec.budget.max_millis},
                 {"max_evaluations", spec.budget.max_evaluations}};
  j["algorithms"] = json::array();
  for (AlgorithmKind k : spec.algorithms) j["algorithms"].push_back(algorithm_name(k));
  j["representations"] = json::array();
  for (ReprKind k : spec.representations) j["representations"].push_back(repr_name(k));
  j["objectives"] = json::array();
  for (const ObjectiveSpec& o : spec.objectives) {
    json obj{{"kind", objective_name(o.kind)}};
    if (o.kind == ObjectiveKind::empty_tiles) {
      obj["r1"] = o.r1;
      obj["r2"] = o.r2;
    } else if (o.kind == ObjectiveKind::path_length) {
      obj["goal_length"] = o.goal_length;
    }
    j["objectives"].push_back(obj);
  }
  j["mcts"] = {{"rollout_depth", spec.params.mcts.rollout_depth},
               {"epsilon_c", spec.params.mcts.epsilon_c}};
  j["sa"] = {{"initial_temperature", spec.params.sa.initial_temperature},
             {"cooling", spec.params.sa.cooling}};
  j["es"] = {{"mu", spec.params.es.mu},
             {"lambda", spec.params.es.lambda},
             {"rho", spec.params.es.rho},
             {"mutation_rate", spec.params.es.mutation_rate}};
  j["ga"] = {{"population", spec.params.ga.population},
             {"crossover_rate", spec.params.ga.crossover_rate},
             {"mutation_rate", spec.params.ga.mutation_rate},
             {"elites", spec.params.ga.elites}};
  j["hc"] = {{"restarts", spec.params.hc_restarts}};
  return j.dump(2);
}

}  // namespace mapgen
