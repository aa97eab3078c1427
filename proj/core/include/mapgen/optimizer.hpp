#pragma once

#include <functional>
#include <span>

#include "mapgen/budget.hpp"
#include "mapgen/grid.hpp"
#include "mapgen/objective.hpp"
#include "mapgen/rng.hpp"

namespace mapgen {

struct Individual {
  Grid genome;
  double fitness = 0.0;
};

struct OptimizerOutcome {
  bool solved = false;
  Grid map;  // best grid ever evaluated during the run
  double best_score = 0.0;
  std::int64_t iterations = 0;  // generations for ES/GA, steps for HC/SA
  std::int64_t evaluations = 0;
  std::int64_t elapsed_millis = 0;
};

// Draws a fresh start map; population algorithms call it once per individual.
using GridSource = std::function<Grid(Rng&)>;

// Progress hook, called with (iteration, score). HC reports the current score
// after each accepted move, SA the best-ever score per proposal, ES/GA the
// best fitness in the population after each generation.
using ProgressObserver = std::function<void(std::int64_t, double)>;

struct HcParams {
  // When set, a run stuck at a local optimum restarts from a fresh map
  // instead of terminating. Off for protocol runs.
  GridSource restart_source;
};

struct SaParams {
  double initial_temperature = 10.0;
  double cooling = 0.99;  // temperature is multiplied by this before each step
};

struct EsParams {
  int mu = 10;
  int lambda = 20;
  int rho = 10;  // parents are rank-selected from the rho best
  double mutation_rate = 0.05;
};

struct GaParams {
  int population = 200;
  double crossover_rate = 0.8;
  double mutation_rate = 0.05;  // per gene
  int elites = 1;
};

// Steepest-ascent hill climber: evaluates all single-flip neighbors, moves to
// the best strictly-improving one (ties broken uniformly at random), stops at
// a local optimum, a solution, or budget exhaustion.
OptimizerOutcome hill_climb(const ObjectiveSpec& spec, Grid g0, const Budget& budget,
                            Rng& rng, const HcParams& params = {},
                            const ProgressObserver& observer = {});

// Accepts a random single-flip neighbor if better; a worse-or-equal neighbor
// with probability exp(-d/T), d the absolute score difference. T is cooled
// before every step.
OptimizerOutcome simulated_annealing(const ObjectiveSpec& spec, Grid g0,
                                     const Budget& budget, Rng& rng,
                                     const SaParams& params = {},
                                     const ProgressObserver& observer = {});

// (mu/rho + lambda) evolution strategy with per-tile flip mutation and plus
// selection (best mu of parents and offspring survive).
OptimizerOutcome evolution_strategy(const ObjectiveSpec& spec, const Budget& budget,
                                    Rng& rng, const GridSource& source,
                                    const EsParams& params = {},
                                    const ProgressObserver& observer = {});

// Generational GA: elitism, rank-selected parents, single-point crossover on
// the row-major genome, per-gene mutation.
OptimizerOutcome genetic_algorithm(const ObjectiveSpec& spec, const Budget& budget,
                                   Rng& rng, const GridSource& source,
                                   const GaParams& params = {},
                                   const ProgressObserver& observer = {});

// Rank selection: with the population sorted ascending by fitness (stable),
// the individual at 1-based rank i is chosen with probability i / (N(N+1)/2).
const Individual& rank_select(std::span<const Individual> population, Rng& rng);

// The accept-worse coin flip used by simulated annealing, exposed so the
// acceptance probability can be calibrated empirically.
bool sa_accept_worse(double score_diff, double temperature, Rng& rng);

}  // namespace mapgen
