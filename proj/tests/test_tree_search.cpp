#include <doctest.h>

#include <cmath>

#include "mapgen/oracle.hpp"
#include "mapgen/rng.hpp"
#include "mapgen/tree_search.hpp"

using namespace mapgen;

namespace {

const ObjectiveSpec kEmpty34{ObjectiveKind::empty_tiles, 3, 4, 1};

// 2x2 grid with two walls: one wall flip away from e in [3, 4]
Grid two_wall_grid() {
  Grid g(2, 2);
  g.set_wall(0, true);
  g.set_wall(3, true);
  return g;
}

ReprState wide_root(Grid g) {
  Rng rng(0);
  return initial_state(ReprKind::wide, std::move(g), rng);
}

ObjectiveSpec unreachable_path_goal(int tiles) {
  return {ObjectiveKind::path_length, 0, 0, 2 * tiles};
}

}  // namespace

TEST_CASE("bfs finds a depth-1 solution on the wide representation") {
  // children flip exactly one tile each; flipping either wall yields e=3
  const SearchOutcome out = bfs(kEmpty34, wide_root(two_wall_grid()), Budget::evaluations(100));
  CHECK(out.solved);
  CHECK(out.solution_depth == 1);
  CHECK(out.best_score == 1.0);
  CHECK(count_empty(out.map) == 3);
}

TEST_CASE("a solving root returns immediately for all four searches") {
  const Grid root_grid = [] {
    Grid g(2, 2);
    g.set_wall(0, true);  // e = 3, already in range
    return g;
  }();
  Rng rng(1);
  for (int alg = 0; alg < 4; ++alg) {
    ReprState root = wide_root(root_grid);
    SearchOutcome out;
    switch (alg) {
      case 0: out = bfs(kEmpty34, root, Budget::evaluations(10)); break;
      case 1: out = dfs(kEmpty34, root, Budget::evaluations(10)); break;
      case 2: out = best_first(kEmpty34, root, Budget::evaluations(10)); break;
      default: out = mcts(kEmpty34, root, Budget::evaluations(10), rng); break;
    }
    CHECK(out.solved);
    CHECK(out.solution_depth == 0);
    CHECK(out.nodes_expanded == 0);
    CHECK(out.evaluations == 1);
    CHECK(out.map == root_grid);
  }
}

TEST_CASE("budget of one evaluation only checks the root") {
  Rng rng(2);
  ReprState root = initial_state(ReprKind::narrow, Grid(3, 3, true), rng);
  const SearchOutcome out = bfs(kEmpty34, root, Budget::evaluations(1));
  CHECK(!out.solved);
  CHECK(out.evaluations == 1);
  CHECK(out.nodes_expanded == 0);
}

TEST_CASE("dfs dives to the bottom of the narrow tree, bfs stays shallow") {
  Rng rng(3);
  Grid g(10, 10);
  const int t = 100;
  const ObjectiveSpec never = unreachable_path_goal(t);
  ReprState root = initial_state(ReprKind::narrow, g, rng);

  // the first dive (all-flip) costs 2 evaluations per level plus the root
  const SearchOutcome deep = dfs(never, root, Budget::evaluations(2 * t + 1));
  CHECK(deep.max_depth_reached == t);
  CHECK(!deep.solved);

  const SearchOutcome shallow = bfs(never, root, Budget::evaluations(2 * t + 1));
  CHECK(shallow.max_depth_reached < 10);
}

TEST_CASE("best-first expands equal scores in insertion order") {
  // 1x4 all-wall root, e target [2,3]: all four depth-1 children score 0.5.
  // FIFO tie-breaking expands flip@0 first, whose first child flips tile 1.
  ObjectiveSpec spec{ObjectiveKind::empty_tiles, 2, 3, 1};
  const SearchOutcome out =
      best_first(spec, wide_root(Grid(1, 4, true)), Budget::evaluations(100));
  CHECK(out.solved);
  CHECK(out.solution_depth == 2);
  CHECK(out.map.to_row_string() == "0011");
}

TEST_CASE("best-first solves the monotone objective in t expansions") {
  // every flip of a wall strictly improves e/r1, so greedy expansion walks
  // straight down, one flipped tile per level
  ObjectiveSpec spec{ObjectiveKind::empty_tiles, 4, 4, 1};
  const SearchOutcome out =
      best_first(spec, wide_root(Grid(2, 2, true)), Budget::evaluations(1000));
  CHECK(out.solved);
  CHECK(out.solution_depth == 4);
  CHECK(out.nodes_expanded == 4);
  CHECK(count_empty(out.map) == 4);
}

TEST_CASE("frontier searches never expand a state twice") {
  // turtle on 2x2 has at most 16 * 4 = 64 distinct states; with an
  // unreachable goal the searches must exhaust the space and stop early
  Rng rng(4);
  const ObjectiveSpec never = unreachable_path_goal(4);
  for (int alg = 0; alg < 3; ++alg) {
    ReprState root = initial_state(ReprKind::turtle, Grid(2, 2, true), rng);
    SearchOutcome out;
    switch (alg) {
      case 0: out = bfs(never, root, Budget::evaluations(100000)); break;
      case 1: out = dfs(never, root, Budget::evaluations(100000)); break;
      default: out = best_first(never, root, Budget::evaluations(100000)); break;
    }
    CHECK(!out.solved);
    CHECK(out.nodes_expanded <= 64);
    CHECK(out.evaluations <= 64);
  }
}

TEST_CASE("bfs reports the minimum solution depth on small instances") {
  const auto failure = oracle::check_bfs_optimality(40, 123);
  if (failure) FAIL(*failure);
}

TEST_CASE("exploration constant is the spread of child means") {
  MctsNode parent;
  parent.visits = 10;

  auto add_child = [&parent](double total, std::int64_t visits) {
    auto child = std::make_unique<MctsNode>();
    child->total_reward = total;
    child->visits = visits;
    parent.children.push_back(std::move(child));
  };

  CHECK(exploration_constant(parent, 0.01) == 0.01);  // no children
  add_child(0.8, 1);
  CHECK(exploration_constant(parent, 0.01) == 0.01);  // single child
  add_child(0.2, 1);
  CHECK(exploration_constant(parent, 0.01) == doctest::Approx(0.6));
  add_child(1.0, 2);  // mean 0.5, inside the spread
  CHECK(exploration_constant(parent, 0.01) == doctest::Approx(0.6));

  MctsNode tied;
  tied.visits = 4;
  auto add_tied = [&tied](double total, std::int64_t visits) {
    auto child = std::make_unique<MctsNode>();
    child->total_reward = total;
    child->visits = visits;
    tied.children.push_back(std::move(child));
  };
  add_tied(0.5, 1);
  add_tied(1.0, 2);  // same mean
  CHECK(exploration_constant(tied, 0.01) == 0.01);
}

TEST_CASE("mcts expands an untried action before any uct selection") {
  // turtle on 1x1 has exactly one action (flip); with a budget of two
  // evaluations the first iteration must expand it
  Rng rng(5);
  ReprState root = initial_state(ReprKind::turtle, Grid(1, 1, true), rng);
  const ObjectiveSpec never = unreachable_path_goal(1);
  const SearchOutcome out = mcts(never, root, Budget::evaluations(2), rng);
  CHECK(out.nodes_expanded == 1);
  CHECK(out.evaluations == 2);
}

TEST_CASE("mcts statistics invariants hold after every iteration") {
  Rng rng(6);
  Grid g(4, 4, true);
  const ObjectiveSpec spec = unreachable_path_goal(16);

  std::int64_t iterations = 0;
  MctsInspector inspector = [&iterations](const MctsNode& root) {
    ++iterations;
    // walk the whole tree
    std::vector<const MctsNode*> stack{&root};
    while (!stack.empty()) {
      const MctsNode* node = stack.back();
      stack.pop_back();
      CHECK(node->total_reward <= static_cast<double>(node->visits) + 1e-12);
      CHECK(node->total_reward >= 0.0);
      std::int64_t child_visits = 0;
      double lo = 2.0, hi = -1.0;
      for (const auto& c : node->children) {
        child_visits += c->visits;
        CHECK(c->depth == node->depth + 1);
        lo = std::min(lo, c->mean_reward());
        hi = std::max(hi, c->mean_reward());
        stack.push_back(c.get());
      }
      CHECK(node->visits >= child_visits);
      if (node->children.size() >= 2 && hi > lo)
        CHECK(exploration_constant(*node, 0.01) == doctest::Approx(hi - lo));
    }
  };

  ReprState root = initial_state(ReprKind::wide, g, rng);
  const SearchOutcome out = mcts(spec, root, Budget::evaluations(2000), rng, {}, inspector);
  CHECK(iterations > 10);
  CHECK(out.evaluations <= 2000);
}

TEST_CASE("mcts finds a nearby solution and reports tree depth") {
  Rng rng(7);
  ReprState root = wide_root(two_wall_grid());
  const SearchOutcome out = mcts(kEmpty34, root, Budget::evaluations(5000), rng);
  CHECK(out.solved);
  CHECK(out.best_score == 1.0);
  CHECK(out.solution_depth.has_value());
  CHECK(count_empty(out.map) >= 3);
  CHECK(count_empty(out.map) <= 4);
}

TEST_CASE("searches are deterministic under a fixed seed") {
  const ObjectiveSpec spec{ObjectiveKind::empty_tiles, 40, 45, 1};
  for (int alg = 0; alg < 4; ++alg) {
    SearchOutcome a, b;
    for (SearchOutcome* out : {&a, &b}) {
      Rng rng(42);
      Grid g(8, 8, true);
      ReprState root = initial_state(ReprKind::turtle, g, rng);
      switch (alg) {
        case 0: *out = bfs(spec, root, Budget::evaluations(3000)); break;
        case 1: *out = dfs(spec, root, Budget::evaluations(3000)); break;
        case 2: *out = best_first(spec, root, Budget::evaluations(3000)); break;
        default: *out = mcts(spec, root, Budget::evaluations(3000), rng); break;
      }
    }
    CHECK(a.solved == b.solved);
    CHECK(a.map == b.map);
    CHECK(a.best_score == b.best_score);
    CHECK(a.nodes_expanded == b.nodes_expanded);
    CHECK(a.max_depth_reached == b.max_depth_reached);
    CHECK(a.evaluations == b.evaluations);
    CHECK(a.solution_depth == b.solution_depth);
  }
}

TEST_CASE("max depth never exceeds the tile count on narrow") {
  Rng rng(8);
  ReprState root = initial_state(ReprKind::narrow, Grid(3, 3), rng);
  const ObjectiveSpec never = unreachable_path_goal(9);
  for (int alg = 0; alg < 4; ++alg) {
    SearchOutcome out;
    switch (alg) {
      case 0: out = bfs(never, root, Budget::evaluations(5000)); break;
      case 1: out = dfs(never, root, Budget::evaluations(5000)); break;
      case 2: out = best_first(never, root, Budget::evaluations(5000)); break;
      default: out = mcts(never, root, Budget::evaluations(5000), rng); break;
    }
    CHECK(out.max_depth_reached <= 9);
  }
}
