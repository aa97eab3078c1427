#include <doctest.h>

#include <cmath>

#include "mapgen/optimizer.hpp"
#include "mapgen/rng.hpp"

using namespace mapgen;

namespace {

Grid grid_with_empties(int w, int h, int e) {
  Grid g(w, h, true);
  for (int i = 0; i < e; ++i) g.set_wall(i, false);
  return g;
}

GridSource random_source(double empty_pct) {
  return [empty_pct](Rng& rng) {
    Grid g(10, 10);
    for (int i = 0; i < 100; ++i) g.set_wall(i, !(next_double(rng) < empty_pct));
    return g;
  };
}

const ObjectiveSpec kEmptyPaper{ObjectiveKind::empty_tiles, 45, 65, 26};
const ObjectiveSpec kConn{ObjectiveKind::connectivity, 0, 0, 1};
const ObjectiveSpec kNeverPath{ObjectiveKind::path_length, 0, 0, 199};

}  // namespace

TEST_CASE("hill climber fixes a one-flip deficit in a single step") {
  Rng rng(1);
  const OptimizerOutcome out =
      hill_climb(kEmptyPaper, grid_with_empties(10, 10, 44), Budget::evaluations(1000), rng);
  CHECK(out.solved);
  CHECK(out.iterations == 1);
  CHECK(out.evaluations <= 1 + 100);
  CHECK(count_empty(out.map) == 45);
}

TEST_CASE("hill climber solves connectivity from an all-wall grid in one step") {
  Rng rng(2);
  const OptimizerOutcome out =
      hill_climb(kConn, Grid(10, 10, true), Budget::evaluations(1000), rng);
  CHECK(out.solved);
  CHECK(out.iterations == 1);
  CHECK(count_regions(out.map) == 1);
}

TEST_CASE("hill climber stops at a connectivity local optimum") {
  // three 2-cell regions, pairwise out of reach of any single flip
  Grid g(5, 5, true);
  g.set_wall(0, 0, false);
  g.set_wall(0, 1, false);
  g.set_wall(4, 0, false);
  g.set_wall(4, 1, false);
  g.set_wall(2, 3, false);
  g.set_wall(2, 4, false);
  REQUIRE(count_regions(g) == 3);

  // every neighbor verified no better than the current 1/3
  const double cur = score(kConn, g);
  for (int i = 0; i < 25; ++i) {
    Grid n = g;
    n.toggle(i);
    CHECK(score(kConn, n) <= cur);
  }

  Rng rng(3);
  const OptimizerOutcome out = hill_climb(kConn, g, Budget::evaluations(10000), rng);
  CHECK(!out.solved);
  CHECK(out.iterations == 0);
  CHECK(out.evaluations == 26);  // current + all 25 neighbors
}

TEST_CASE("hill climber trajectories increase strictly") {
  Rng rng(4);
  double last = -1.0;
  bool strict = true;
  ProgressObserver observer = [&](std::int64_t, double score) {
    strict = strict && score > last;
    last = score;
  };
  hill_climb(kEmptyPaper, grid_with_empties(10, 10, 20), Budget::evaluations(100000), rng,
             {}, observer);
  CHECK(strict);
}

TEST_CASE("hill climber restarts when given a restart source") {
  // the local optimum above, but with restarts the climber eventually solves
  Grid g(5, 5, true);
  g.set_wall(0, 0, false);
  g.set_wall(0, 1, false);
  g.set_wall(4, 0, false);
  g.set_wall(4, 1, false);
  g.set_wall(2, 3, false);
  g.set_wall(2, 4, false);

  Rng rng(5);
  HcParams params;
  params.restart_source = [](Rng& r) {
    Grid fresh(5, 5);
    for (int i = 0; i < 25; ++i) fresh.set_wall(i, next_bool(r, 0.5));
    return fresh;
  };
  const OptimizerOutcome out = hill_climb(kConn, g, Budget::evaluations(100000), rng, params);
  CHECK(out.solved);
}

TEST_CASE("sa accepts equal-score neighbors with probability one") {
  Rng rng(6);
  for (int i = 0; i < 1000; ++i) CHECK(sa_accept_worse(0.0, 10.0, rng));
  // and even at zero temperature, where exp(-d/T) would be 0/0
  for (int i = 0; i < 1000; ++i) CHECK(sa_accept_worse(0.0, 0.0, rng));
}

TEST_CASE("sa acceptance frequency matches exp(-d/T)") {
  const int n = 100000;
  const struct { double d, t; } points[] = {{0.1, 10.0}, {0.5, 1.0}, {0.2, 0.5}};
  Rng rng(7);
  for (const auto& pt : points) {
    const double p = std::exp(-pt.d / pt.t);
    int accepted = 0;
    for (int i = 0; i < n; ++i) accepted += sa_accept_worse(pt.d, pt.t, rng);
    const double freq = static_cast<double>(accepted) / n;
    const double sigma = std::sqrt(p * (1.0 - p) / n);
    CHECK(std::abs(freq - p) <= 3.0 * sigma);
  }
}

TEST_CASE("sa best-ever score never decreases") {
  Rng rng(8);
  double best = -1.0;
  bool monotone = true;
  ProgressObserver observer = [&](std::int64_t, double score) {
    monotone = monotone && score >= best;
    best = score;
  };
  const OptimizerOutcome out = simulated_annealing(
      kNeverPath, random_source(0.5)(rng), Budget::evaluations(20000), rng, {}, observer);
  CHECK(monotone);
  CHECK(out.best_score == best);
}

TEST_CASE("sa reaches a solution on an easy objective") {
  Rng rng(9);
  const OptimizerOutcome out = simulated_annealing(
      kEmptyPaper, grid_with_empties(10, 10, 30), Budget::evaluations(50000), rng);
  CHECK(out.solved);
}

TEST_CASE("es best-of-generation fitness never decreases") {
  Rng rng(10);
  double last = -1.0;
  bool monotone = true;
  std::int64_t gens = 0;
  ProgressObserver observer = [&](std::int64_t gen, double best) {
    monotone = monotone && best >= last;
    last = best;
    gens = gen;
  };
  evolution_strategy(kNeverPath, Budget::evaluations(10 + 20 * 50), rng,
                     random_source(0.25), {}, observer);
  CHECK(monotone);
  CHECK(gens == 50);
}

TEST_CASE("es with zero mutation is stationary after the first generation") {
  Rng rng(11);
  EsParams params;
  params.mutation_rate = 0.0;
  std::vector<double> bests;
  ProgressObserver observer = [&](std::int64_t, double best) { bests.push_back(best); };
  evolution_strategy(kNeverPath, Budget::evaluations(10 + 20 * 20), rng,
                     random_source(0.25), params, observer);
  REQUIRE(!bests.empty());
  for (double b : bests) CHECK(b == bests.front());
}

TEST_CASE("a (1+1)-es still runs and improves") {
  Rng rng(12);
  EsParams params;
  params.mu = 1;
  params.lambda = 1;
  params.rho = 1;
  const OptimizerOutcome out = evolution_strategy(
      kEmptyPaper, Budget::evaluations(20000), rng, random_source(0.25), params);
  CHECK(out.solved);
}

TEST_CASE("es solves the paper empty-tiles objective") {
  Rng rng(13);
  const OptimizerOutcome out = evolution_strategy(
      kEmptyPaper, Budget::evaluations(50000), rng, random_source(0.25), {});
  CHECK(out.solved);
  CHECK(count_empty(out.map) >= 45);
  CHECK(count_empty(out.map) <= 65);
}

TEST_CASE("ga best-of-generation fitness never decreases with elitism") {
  Rng rng(14);
  double last = -1.0;
  bool monotone = true;
  GaParams params;
  params.population = 20;
  ProgressObserver observer = [&](std::int64_t, double best) {
    monotone = monotone && best >= last;
    last = best;
  };
  genetic_algorithm(kNeverPath, Budget::evaluations(20 + 20 * 60), rng,
                    random_source(0.25), params, observer);
  CHECK(monotone);
}

TEST_CASE("ga crossover mixes parents") {
  // alternating all-empty / all-wall founders both score 0 against e in
  // [1, t-1]; only a genuine two-parent mix can solve, mutation is off
  ObjectiveSpec spec{ObjectiveKind::empty_tiles, 1, 99, 1};
  GaParams params;
  params.population = 10;
  params.mutation_rate = 0.0;
  params.elites = 1;

  auto founders = [](Rng& r) {
    static thread_local bool flip = false;
    flip = !flip;
    (void)r;
    return flip ? Grid(10, 10) : Grid(10, 10, true);
  };

  Rng rng(15);
  params.crossover_rate = 1.0;
  const OptimizerOutcome crossed =
      genetic_algorithm(spec, Budget::evaluations(500), rng, founders, params);
  CHECK(crossed.solved);

  Rng rng2(16);
  params.crossover_rate = 0.0;
  const OptimizerOutcome cloned =
      genetic_algorithm(spec, Budget::evaluations(500), rng2, founders, params);
  CHECK(!cloned.solved);
}

TEST_CASE("ga solves the paper empty-tiles objective") {
  Rng rng(17);
  const OptimizerOutcome out = genetic_algorithm(
      kEmptyPaper, Budget::evaluations(50000), rng, random_source(0.25), {});
  CHECK(out.solved);
}

TEST_CASE("rank selection weights ranks linearly") {
  Rng rng(18);

  std::vector<Individual> single(1);
  single[0].fitness = 0.3;
  for (int i = 0; i < 100; ++i) CHECK(&rank_select(single, rng) == &single[0]);

  // N=2: worse picked 1/3, better 2/3
  std::vector<Individual> pair(2);
  pair[0].fitness = 0.9;
  pair[1].fitness = 0.1;
  int better = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) better += &rank_select(pair, rng) == &pair[0];
  const double freq = static_cast<double>(better) / n;
  const double sigma = std::sqrt((2.0 / 3.0) * (1.0 / 3.0) / n);
  CHECK(std::abs(freq - 2.0 / 3.0) <= 3.0 * sigma);
}

TEST_CASE("rank selection over equal fitness follows stable rank weights") {
  Rng rng(19);
  std::vector<Individual> pop(4);
  for (auto& ind : pop) ind.fitness = 0.5;
  const int n = 100000;
  std::vector<int> hits(4, 0);
  for (int i = 0; i < n; ++i) {
    const Individual* pick = &rank_select(pop, rng);
    hits[pick - pop.data()]++;
  }
  // stable sort keeps index order, so index i sits at rank i+1
  for (int i = 0; i < 4; ++i) {
    const double p = (i + 1) / 10.0;
    const double sigma = std::sqrt(p * (1 - p) / n);
    CHECK(std::abs(hits[i] / static_cast<double>(n) - p) <= 3.0 * sigma);
  }
}

TEST_CASE("optimizers are deterministic under a fixed seed") {
  for (int alg = 0; alg < 4; ++alg) {
    OptimizerOutcome a, b;
    for (OptimizerOutcome* out : {&a, &b}) {
      Rng rng(99);
      switch (alg) {
        case 0:
          *out = hill_climb(kConn, random_source(0.3)(rng), Budget::evaluations(2000), rng);
          break;
        case 1:
          *out = simulated_annealing(kConn, random_source(0.3)(rng),
                                     Budget::evaluations(2000), rng);
          break;
        case 2:
          *out = evolution_strategy(kNeverPath, Budget::evaluations(2000), rng,
                                    random_source(0.3));
          break;
        default:
          *out = genetic_algorithm(kNeverPath, Budget::evaluations(2000), rng,
                                   random_source(0.3));
          break;
      }
    }
    CHECK(a.solved == b.solved);
    CHECK(a.map == b.map);
    CHECK(a.best_score == b.best_score);
    CHECK(a.iterations == b.iterations);
    CHECK(a.evaluations == b.evaluations);
  }
}

TEST_CASE("evaluation budgets are exact") {
  // one full hill-climbing scan on a 2x2 grid: 1 current + 4 neighbors
  Rng rng(20);
  ObjectiveSpec spec{ObjectiveKind::empty_tiles, 3, 4, 1};
  const OptimizerOutcome hc =
      hill_climb(spec, Grid(2, 2, true), Budget::evaluations(5), rng);
  CHECK(hc.evaluations == 5);

  const OptimizerOutcome sa = simulated_annealing(
      kNeverPath, Grid(4, 4, true), Budget::evaluations(100), rng);
  CHECK(sa.evaluations == 100);

  const OptimizerOutcome ga = genetic_algorithm(kNeverPath, Budget::evaluations(777), rng,
                                                random_source(0.5));
  CHECK(ga.evaluations == 777);
}
