#include "mapgen/tree_search.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <deque>
#include <queue>
#include <unordered_set>

namespace mapgen {

namespace {

struct FrontierNode {
  ReprState state;
  double score = 0.0;
  int depth = 0;
  std::uint64_t seq = 0;  // insertion order, breaks priority ties FIFO
};

// Higher score first; earlier insertion wins ties.
struct ScoreOrder {
  bool operator()(const FrontierNode& a, const FrontierNode& b) const {
    if (a.score != b.score) return a.score < b.score;
    return a.seq > b.seq;
  }
};

class BestTracker {
 public:
  explicit BestTracker(const Grid& root, double score) : map_(root), score_(score) {}

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

enum class FrontierOrder { fifo, lifo, best };

SearchOutcome frontier_search(const ObjectiveSpec& spec, ReprState root,
                              const Budget& budget, FrontierOrder order) {
  CountingEvaluator ev(spec, budget);
  SearchOutcome out;

  const Evaluation root_eval = ev.evaluate(state_grid(root));
  BestTracker best(state_grid(root), root_eval.value);

  auto finish = [&](bool solved, std::optional<int> depth) {
    out.solved = solved;
    out.solution_depth = depth;
    out.best_score = best.score();
    out.map = best.map();
    out.evaluations = ev.evaluations();
    out.elapsed_millis = ev.elapsed_millis();
    return out;
  };

  if (root_eval.solved) return finish(true, 0);

  std::deque<FrontierNode> fifo_lifo;
  std::priority_queue<FrontierNode, std::vector<FrontierNode>, ScoreOrder> pq;
  std::unordered_set<StateKey, StateKeyHash> visited;
  std::uint64_t seq = 0;

  visited.insert(state_key(root));
  if (order == FrontierOrder::best)
    pq.push({std::move(root), root_eval.value, 0, seq++});
  else
    fifo_lifo.push_back({std::move(root), root_eval.value, 0, seq++});

  std::vector<Action> actions;
  std::vector<FrontierNode> generated;

  while (!ev.exhausted()) {
    FrontierNode node;
    if (order == FrontierOrder::best) {
      if (pq.empty()) break;
      node = pq.top();
      pq.pop();
    } else {
      if (fifo_lifo.empty()) break;
      if (order == FrontierOrder::fifo) {
        node = std::move(fifo_lifo.front());
        fifo_lifo.pop_front();
      } else {
        node = std::move(fifo_lifo.back());
        fifo_lifo.pop_back();
      }
    }

    ++out.nodes_expanded;
    legal_actions(node.state, actions);
    generated.clear();

    for (const Action& a : actions) {
      ReprState child = apply_action(node.state, a);
      StateKey key = state_key(child);
      if (visited.contains(key)) continue;
      const auto eval = ev.try_evaluate(state_grid(child));
      if (!eval) return finish(false, std::nullopt);
      visited.insert(std::move(key));
      best.offer(state_grid(child), eval->value);
      const int child_depth = node.depth + 1;
      out.max_depth_reached = std::max(out.max_depth_reached, child_depth);
      if (eval->solved) return finish(true, child_depth);
      generated.push_back({std::move(child), eval->value, child_depth, seq++});
    }

    if (order == FrontierOrder::lifo) {
      // reversed, so the first legal action sits on top of the stack
      for (auto it = generated.rbegin(); it != generated.rend(); ++it)
        fifo_lifo.push_back(std::move(*it));
    } else if (order == FrontierOrder::fifo) {
      for (auto& n : generated) fifo_lifo.push_back(std::move(n));
    } else {
      for (auto& n : generated) pq.push(std::move(n));
    }
  }

  return finish(false, std::nullopt);
}

}  // namespace

SearchOutcome bfs(const ObjectiveSpec& spec, ReprState root, const Budget& budget) {
  return frontier_search(spec, std::move(root), budget, FrontierOrder::fifo);
}

SearchOutcome dfs(const ObjectiveSpec& spec, ReprState root, const Budget& budget) {
  return frontier_search(spec, std::move(root), budget, FrontierOrder::lifo);
}

SearchOutcome best_first(const ObjectiveSpec& spec, ReprState root, const Budget& budget) {
  return frontier_search(spec, std::move(root), budget, FrontierOrder::best);
}

double exploration_constant(const MctsNode& parent, double epsilon_c) {
  if (parent.children.size() < 2) return epsilon_c;
  double lo = parent.children.front()->mean_reward();
  double hi = lo;
  for (const auto& child : parent.children) {
    const double m = child->mean_reward();
    lo = std::min(lo, m);
    hi = std::max(hi, m);
  }
  const double c = hi - lo;
  return c > 0.0 ? c : epsilon_c;
}

SearchOutcome mcts(const ObjectiveSpec& spec, ReprState root_state, const Budget& budget,
                   Rng& rng, const MctsParams& params, const MctsInspector& inspector) {
  assert(params.rollout_depth >= 1);
  CountingEvaluator ev(spec, budget);
  SearchOutcome out;

  const Evaluation root_eval = ev.evaluate(state_grid(root_state));
  BestTracker best(state_grid(root_state), root_eval.value);

  auto finish = [&](bool solved, std::optional<int> depth) {
    out.solved = solved;
    out.solution_depth = depth;
    out.best_score = best.score();
    out.map = best.map();
    out.evaluations = ev.evaluations();
    out.elapsed_millis = ev.elapsed_millis();
    return out;
  };

  if (root_eval.solved) return finish(true, 0);

  MctsNode root;
  root.state = std::move(root_state);
  root.score = root_eval.value;
  root.untried = legal_actions(root.state);
  if (root.untried.empty()) root.exhausted = true;  // terminal root

  std::vector<Action> rollout_actions;

  while (!ev.exhausted() && !root.exhausted) {
    // selection: descend by UCT through non-exhausted children while the
    // node is fully expanded
    MctsNode* node = &root;
    bool dead_end = false;
    while (node->untried.empty() && !node->children.empty()) {
      const double c = exploration_constant(*node, params.epsilon_c);
      const double log_visits = std::log(static_cast<double>(std::max<std::int64_t>(node->visits, 1)));
      MctsNode* chosen = nullptr;
      double best_value = -1.0;
      for (const auto& child : node->children) {
        if (child->exhausted) continue;
        const double uct = child->mean_reward() +
                           c * std::sqrt(log_visits / static_cast<double>(child->visits));
        if (uct > best_value) {
          best_value = uct;
          chosen = child.get();
        }
      }
      if (!chosen) {
        // every child subtree is exhausted; mark and re-select from the root
        node->exhausted = true;
        dead_end = true;
        break;
      }
      node = chosen;
    }
    if (dead_end) continue;

    // expansion: one untried action, chosen uniformly at random
    if (!node->untried.empty()) {
      const std::size_t pick = next_index(rng, node->untried.size());
      const Action action = node->untried[pick];
      node->untried[pick] = node->untried.back();
      node->untried.pop_back();

      ReprState child_state = apply_action(node->state, action);
      const auto eval = ev.try_evaluate(state_grid(child_state));
      if (!eval) return finish(false, std::nullopt);

      auto child = std::make_unique<MctsNode>();
      child->state = std::move(child_state);
      child->score = eval->value;
      child->depth = node->depth + 1;
      child->parent = node;
      child->untried = legal_actions(child->state);
      if (child->untried.empty()) child->exhausted = true;  // terminal leaf

      best.offer(state_grid(child->state), eval->value);
      out.max_depth_reached = std::max(out.max_depth_reached, child->depth);
      ++out.nodes_expanded;

      node->children.push_back(std::move(child));
      node = node->children.back().get();

      if (eval->solved) return finish(true, node->depth);
    }

    // rollout: walk random actions from the expanded node and evaluate where
    // the simulation lands; the reward is the better of the expanded node's
    // score and the endpoint score
    double reward = node->score;
    ReprState sim = node->state;
    int steps = 0;
    for (; steps < params.rollout_depth; ++steps) {
      legal_actions(sim, rollout_actions);
      if (rollout_actions.empty()) break;
      sim = apply_action(sim, rollout_actions[next_index(rng, rollout_actions.size())]);
    }
    if (steps > 0) {
      const auto eval = ev.try_evaluate(state_grid(sim));
      if (!eval) return finish(false, std::nullopt);
      best.offer(state_grid(sim), eval->value);
      if (eval->solved) return finish(true, node->depth);
      reward = std::max(reward, eval->value);
    }

    // backpropagation
    for (MctsNode* n = node; n != nullptr; n = n->parent) {
      n->visits += 1;
      n->total_reward += reward;
      assert(n->total_reward <= static_cast<double>(n->visits) + 1e-9);
    }

    // fold fresh terminal leaves into their ancestors' exhaustion state
    for (MctsNode* n = node; n != nullptr && n->exhausted; n = n->parent) {
      MctsNode* p = n->parent;
      if (!p || !p->untried.empty()) break;
      bool all_exhausted = true;
      for (const auto& c : p->children) all_exhausted = all_exhausted && c->exhausted;
      if (!all_exhausted) break;
      p->exhausted = true;
    }

    if (inspector) inspector(root);
  }

  return finish(false, std::nullopt);
}

}  // namespace mapgen
