#include "mapgen/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mapgen {

namespace {

class BestTracker {
 public:
  BestTracker(const Grid& g, double score) : map_(g), score_(score) {}

  void offer(const Grid& g, double score) {
    if (score > score_) {
      score_ = score;
      map_ = g;
    }
  }

  const Grid& map() const { return map_; }
  double score() const { return score_; }

 private:
  Grid map_;
  double score_;
};

OptimizerOutcome make_outcome(const CountingEvaluator& ev, const BestTracker& best,
                              bool solved, std::int64_t iterations) {
  OptimizerOutcome out;
  out.solved = solved;
  out.map = best.map();
  out.best_score = best.score();
  out.iterations = iterations;
  out.evaluations = ev.evaluations();
  out.elapsed_millis = ev.elapsed_millis();
  return out;
}

// 1-based rank drawn with probability i / (n(n+1)/2); returns the 0-based
// index into an ascending-sorted population.
std::size_t rank_pick(std::size_t n, Rng& rng) {
  const std::uint64_t total = static_cast<std::uint64_t>(n) * (n + 1) / 2;
  std::uint64_t r = next_index(rng, total);
  for (std::size_t i = 1; i <= n; ++i) {
    if (r < i) return i - 1;
    r -= i;
  }
  return n - 1;  // unreachable
}

void mutate_per_tile(Grid& g, double rate, Rng& rng) {
  const int t = g.tile_count();
  for (int i = 0; i < t; ++i) {
    if (next_double(rng) < rate) g.toggle(i);
  }
}

// Ascending stable sort of population indices by fitness.
std::vector<std::size_t> fitness_order(std::span<const Individual> pop) {
  std::vector<std::size_t> idx(pop.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return pop[a].fitness < pop[b].fitness;
  });
  return idx;
}

double population_best(std::span<const Individual> pop) {
  double best = pop.front().fitness;
  for (const auto& ind : pop) best = std::max(best, ind.fitness);
  return best;
}

}  // namespace

const Individual& rank_select(std::span<const Individual> population, Rng& rng) {
  const auto order = fitness_order(population);
  return population[order[rank_pick(population.size(), rng)]];
}

bool sa_accept_worse(double score_diff, double temperature, Rng& rng) {
  const double d = std::abs(score_diff);
  const double p = d == 0.0 ? 1.0 : std::exp(-d / temperature);
  return next_double(rng) < p;
}

OptimizerOutcome hill_climb(const ObjectiveSpec& spec, Grid g0, const Budget& budget,
                            Rng& rng, const HcParams& params,
                            const ProgressObserver& observer) {
  CountingEvaluator ev(spec, budget);
  Evaluation cur_eval = ev.evaluate(g0);
  BestTracker best(g0, cur_eval.value);
  Grid cur = std::move(g0);
  if (cur_eval.solved) return make_outcome(ev, best, true, 0);

  std::int64_t steps = 0;
  std::vector<int> best_moves;

  while (true) {
    const int t = cur.tile_count();
    double best_value = cur_eval.value;
    best_moves.clear();

    for (int tile = 0; tile < t; ++tile) {
      Grid neighbor = cur;
      neighbor.toggle(tile);
      const auto eval = ev.try_evaluate(neighbor);
      if (!eval) return make_outcome(ev, best, false, steps);
      best.offer(neighbor, eval->value);
      if (eval->solved) return make_outcome(ev, best, true, steps + 1);
      if (eval->value > best_value) {
        best_value = eval->value;
        best_moves.assign(1, tile);
      } else if (!best_moves.empty() && eval->value == best_value) {
        best_moves.push_back(tile);
      }
    }

    if (best_moves.empty()) {
      // local optimum
      if (!params.restart_source || ev.exhausted())
        return make_outcome(ev, best, false, steps);
      cur = params.restart_source(rng);
      const auto eval = ev.try_evaluate(cur);
      if (!eval) return make_outcome(ev, best, false, steps);
      best.offer(cur, eval->value);
      if (eval->solved) return make_outcome(ev, best, true, steps);
      cur_eval = *eval;
      continue;
    }

    const int chosen = best_moves.size() == 1
                           ? best_moves.front()
                           : best_moves[next_index(rng, best_moves.size())];
    cur.toggle(chosen);
    cur_eval.value = best_value;
    ++steps;
    if (observer) observer(steps, cur_eval.value);
  }
}

OptimizerOutcome simulated_annealing(const ObjectiveSpec& spec, Grid g0,
                                     const Budget& budget, Rng& rng,
                                     const SaParams& params,
                                     const ProgressObserver& observer) {
  CountingEvaluator ev(spec, budget);
  Evaluation cur_eval = ev.evaluate(g0);
  BestTracker best(g0, cur_eval.value);
  Grid cur = std::move(g0);
  if (cur_eval.solved) return make_outcome(ev, best, true, 0);

  double temperature = params.initial_temperature;
  std::int64_t steps = 0;
  const int t = cur.tile_count();

  while (!ev.exhausted()) {
    temperature *= params.cooling;

    const int tile = static_cast<int>(next_index(rng, t));
    Grid neighbor = cur;
    neighbor.toggle(tile);
    const auto eval = ev.try_evaluate(neighbor);
    if (!eval) break;
    ++steps;
    best.offer(neighbor, eval->value);
    if (eval->solved) return make_outcome(ev, best, true, steps);

    if (eval->value > cur_eval.value ||
        sa_accept_worse(cur_eval.value - eval->value, temperature, rng)) {
      cur = std::move(neighbor);
      cur_eval = *eval;
    }
    if (observer) observer(steps, best.score());
  }
  return make_outcome(ev, best, false, steps);
}

OptimizerOutcome evolution_strategy(const ObjectiveSpec& spec, const Budget& budget,
                                    Rng& rng, const GridSource& source,
                                    const EsParams& params,
                                    const ProgressObserver& observer) {
  const int mu = params.mu, lambda = params.lambda;
  const int rho = std::clamp(params.rho, 1, mu);

  Grid first = source(rng);
  CountingEvaluator ev(spec, budget);
  const Evaluation first_eval = ev.evaluate(first);
  BestTracker best(first, first_eval.value);
  if (first_eval.solved) return make_outcome(ev, best, true, 0);

  std::vector<Individual> pop;
  pop.reserve(mu + lambda);
  pop.push_back({std::move(first), first_eval.value});
  for (int i = 1; i < mu; ++i) {
    Grid g = source(rng);
    const auto eval = ev.try_evaluate(g);
    if (!eval) return make_outcome(ev, best, false, 0);
    best.offer(g, eval->value);
    if (eval->solved) return make_outcome(ev, best, true, 0);
    pop.push_back({std::move(g), eval->value});
  }

  std::int64_t generations = 0;
  while (!ev.exhausted()) {
    // parents: rank selection among the rho best of the current population
    const auto order = fitness_order(pop);
    const std::size_t* pool = order.data() + (pop.size() - rho);

    for (int k = 0; k < lambda; ++k) {
      const Individual& parent = pop[pool[rank_pick(rho, rng)]];
      Grid child = parent.genome;
      mutate_per_tile(child, params.mutation_rate, rng);
      const auto eval = ev.try_evaluate(child);
      if (!eval) return make_outcome(ev, best, false, generations);
      best.offer(child, eval->value);
      if (eval->solved) return make_outcome(ev, best, true, generations + 1);
      pop.push_back({std::move(child), eval->value});
    }

    // plus selection: best mu of parents and offspring survive
    const auto survivors = fitness_order(pop);
    std::vector<std::size_t> keep(survivors.end() - mu, survivors.end());
    std::sort(keep.begin(), keep.end());  // keep original relative order
    std::vector<Individual> next;
    next.reserve(mu + lambda);
    for (std::size_t idx : keep) next.push_back(std::move(pop[idx]));
    pop = std::move(next);

    ++generations;
    if (observer) observer(generations, population_best(pop));
  }
  return make_outcome(ev, best, false, generations);
}

OptimizerOutcome genetic_algorithm(const ObjectiveSpec& spec, const Budget& budget,
                                   Rng& rng, const GridSource& source,
                                   const GaParams& params,
                                   const ProgressObserver& observer) {
  const int pop_size = params.population;
  const int elites = std::clamp(params.elites, 0, pop_size - 1);

  Grid first = source(rng);
  CountingEvaluator ev(spec, budget);
  const Evaluation first_eval = ev.evaluate(first);
  BestTracker best(first, first_eval.value);
  if (first_eval.solved) return make_outcome(ev, best, true, 0);

  std::vector<Individual> pop;
  pop.reserve(pop_size);
  pop.push_back({std::move(first), first_eval.value});
  for (int i = 1; i < pop_size; ++i) {
    Grid g = source(rng);
    const auto eval = ev.try_evaluate(g);
    if (!eval) return make_outcome(ev, best, false, 0);
    best.offer(g, eval->value);
    if (eval->solved) return make_outcome(ev, best, true, 0);
    pop.push_back({std::move(g), eval->value});
  }

  std::int64_t generations = 0;
  while (!ev.exhausted()) {
    const auto order = fitness_order(pop);
    const int t = pop.front().genome.tile_count();

    std::vector<Individual> next;
    next.reserve(pop_size);
    for (int e = 0; e < elites; ++e) next.push_back(pop[order[order.size() - 1 - e]]);

    while (static_cast<int>(next.size()) < pop_size) {
      const Individual& a = pop[order[rank_pick(order.size(), rng)]];
      const Individual& b = pop[order[rank_pick(order.size(), rng)]];

      Grid child = a.genome;
      if (next_double(rng) < params.crossover_rate) {
        // single-point crossover, cut in 1..t-1: prefix from a, suffix from b
        const int cut = 1 + static_cast<int>(next_index(rng, t - 1));
        for (int i = cut; i < t; ++i) child.set_wall(i, b.genome.wall(i));
      }
      mutate_per_tile(child, params.mutation_rate, rng);

      const auto eval = ev.try_evaluate(child);
      if (!eval) return make_outcome(ev, best, false, generations);
      best.offer(child, eval->value);
      if (eval->solved) return make_outcome(ev, best, true, generations + 1);
      next.push_back({std::move(child), eval->value});
    }

    pop = std::move(next);
    ++generations;
    if (observer) observer(generations, population_best(pop));
  }
  return make_outcome(ev, best, false, generations);
}

}  // namespace mapgen
