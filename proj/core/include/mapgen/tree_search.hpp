#pragma once

#include <functional>
#include <memory>
#include <optional>

#include "mapgen/budget.hpp"
#include "mapgen/objective.hpp"
#include "mapgen/representation.hpp"
#include "mapgen/rng.hpp"

namespace mapgen {

struct SearchOutcome {
  bool solved = false;
  Grid map;  // solution when solved, otherwise the best-scoring grid seen
  double best_score = 0.0;
  std::int64_t nodes_expanded = 0;
  int max_depth_reached = 0;
  std::optional<int> solution_depth;
  std::int64_t elapsed_millis = 0;
  std::int64_t evaluations = 0;
};

// The frontier searches share one contract: the solution check runs when a
// node is generated (the root counts as generated with zero expansions), a
// visited set keyed on state_key guarantees no state is expanded twice, and
// exhausting the budget returns the best-scoring grid seen so far.

// FIFO expansion; the first solution generated is minimum-depth.
SearchOutcome bfs(const ObjectiveSpec& spec, ReprState root, const Budget& budget);

// LIFO expansion; children are pushed so the first action listed by
// legal_actions is expanded first.
SearchOutcome dfs(const ObjectiveSpec& spec, ReprState root, const Budget& budget);

// Max-priority frontier on the cached node score, FIFO among equal scores.
SearchOutcome best_first(const ObjectiveSpec& spec, ReprState root, const Budget& budget);

struct MctsParams {
  int rollout_depth = 100;   // max actions simulated per rollout
  double epsilon_c = 0.01;   // exploration constant when child means tie
};

struct MctsNode {
  ReprState state;
  double score = 0.0;
  int depth = 0;
  MctsNode* parent = nullptr;
  std::int64_t visits = 0;
  double total_reward = 0.0;
  std::vector<Action> untried;
  std::vector<std::unique_ptr<MctsNode>> children;
  // Subtree fully expanded (terminal, or all children exhausted with nothing
  // untried). Selection routes around exhausted subtrees so iterations are
  // never spent re-walking them; an exhausted root ends the search.
  bool exhausted = false;

  double mean_reward() const {
    return visits > 0 ? total_reward / static_cast<double>(visits) : 0.0;
  }
};

// Per-parent UCT exploration constant: the spread (max - min) of the expanded
// children's mean rewards, or epsilon_c when the means tie or fewer than two
// children exist.
double exploration_constant(const MctsNode& parent, double epsilon_c);

// Called after every completed iteration with the tree root; used by tests to
// audit node statistics.
using MctsInspector = std::function<void(const MctsNode& root)>;

// UCT with the variable exploration constant above. Each iteration selects by
// UCT until a node with untried actions is reached, expands one untried action
// chosen uniformly at random, simulates at most rollout_depth random actions,
// evaluates the state the simulation lands on, and backpropagates the better
// of the expanded node's score and that endpoint score. Any evaluated state
// scoring exactly 1 ends the search with that grid; solution_depth is the
// tree depth where the solving trajectory left the tree.
SearchOutcome mcts(const ObjectiveSpec& spec, ReprState root, const Budget& budget,
                   Rng& rng, const MctsParams& params = {},
                   const MctsInspector& inspector = {});

}  // namespace mapgen
