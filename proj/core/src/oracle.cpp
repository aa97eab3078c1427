#include "mapgen/oracle.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <set>
#include <vector>

#include "mapgen/rng.hpp"
#include "mapgen/tree_search.hpp"

namespace mapgen::oracle {

namespace {

struct UnionFind {
  std::vector<int> parent;

  explicit UnionFind(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }

  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }

  void unite(int a, int b) { parent[find(a)] = find(b); }
};

// Full-state serialization for dedup, independent of state_key: the grid text
// plus every piece of per-representation state.
std::string state_signature(const ReprState& s) {
  if (const auto* n = std::get_if<NarrowState>(&s))
    return n->grid.to_row_string() + "#c" + std::to_string(n->cursor);
  if (const auto* t = std::get_if<TurtleState>(&s))
    return t->grid.to_row_string() + "#p" + std::to_string(t->x) + "," +
           std::to_string(t->y);
  const auto& w = std::get<WideState>(s);
  std::string sig = w.grid.to_row_string() + "#f";
  for (int i = 0; i < w.grid.tile_count(); ++i) sig.push_back(w.flipped(i) ? '1' : '0');
  return sig;
}

}  // namespace

int count_regions_union_find(const Grid& g) {
  const int w = g.width(), h = g.height(), t = w * h;
  UnionFind uf(t);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (g.wall(x, y)) continue;
      if (x + 1 < w && g.empty(x + 1, y)) uf.unite(y * w + x, y * w + x + 1);
      if (y + 1 < h && g.empty(x, y + 1)) uf.unite(y * w + x, (y + 1) * w + x);
    }
  }
  std::set<int> roots;
  for (int i = 0; i < t; ++i)
    if (g.empty(i)) roots.insert(uf.find(i));
  return static_cast<int>(roots.size());
}

int longest_shortest_path_floyd_warshall(const Grid& g) {
  const int w = g.width(), h = g.height(), t = w * h;
  const int inf = 1 << 28;
  std::vector<std::vector<int>> dist(t, std::vector<int>(t, inf));
  for (int i = 0; i < t; ++i)
    if (g.empty(i)) dist[i][i] = 0;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (g.wall(x, y)) continue;
      const int c = y * w + x;
      if (x + 1 < w && g.empty(x + 1, y)) dist[c][c + 1] = dist[c + 1][c] = 1;
      if (y + 1 < h && g.empty(x, y + 1)) dist[c][c + w] = dist[c + w][c] = 1;
    }
  }
  for (int k = 0; k < t; ++k)
    for (int i = 0; i < t; ++i)
      for (int j = 0; j < t; ++j)
        dist[i][j] = std::min(dist[i][j], dist[i][k] + dist[k][j]);
  int best = 0;
  for (int i = 0; i < t; ++i)
    for (int j = 0; j < t; ++j)
      if (dist[i][j] < inf) best = std::max(best, dist[i][j]);
  return best;
}

std::optional<int> min_solution_depth(const ObjectiveSpec& spec, const ReprState& root,
                                      int depth_cap) {
  if (is_solution(spec, state_grid(root))) return 0;

  std::set<std::string> seen;
  seen.insert(state_signature(root));
  std::deque<std::pair<ReprState, int>> frontier;
  frontier.emplace_back(root, 0);

  while (!frontier.empty()) {
    const auto [state, depth] = frontier.front();
    frontier.pop_front();
    if (depth >= depth_cap) continue;
    for (const Action& a : legal_actions(state)) {
      ReprState child = apply_action(state, a);
      if (!seen.insert(state_signature(child)).second) continue;
      if (is_solution(spec, state_grid(child))) return depth + 1;
      frontier.emplace_back(std::move(child), depth + 1);
    }
  }
  return std::nullopt;
}

std::optional<std::string> check_grid_metrics_exhaustive() {
  for (int bits = 0; bits < 512; ++bits) {
    Grid g(3, 3);
    for (int i = 0; i < 9; ++i) g.set_wall(i, (bits >> i) & 1);

    const int regions = count_regions(g);
    const int regions_oracle = count_regions_union_find(g);
    if (regions != regions_oracle)
      return "count_regions mismatch on map " + g.to_row_string() + ": got " +
             std::to_string(regions) + ", oracle " + std::to_string(regions_oracle);

    const int path = longest_shortest_path(g);
    const int path_oracle = longest_shortest_path_floyd_warshall(g);
    if (path != path_oracle)
      return "longest_shortest_path mismatch on map " + g.to_row_string() + ": got " +
             std::to_string(path) + ", oracle " + std::to_string(path_oracle);

    const int empties = count_empty(g);
    const int empties_direct = 9 - std::popcount(static_cast<unsigned>(bits) & 0x1FFu);
    if (empties != empties_direct)
      return "count_empty mismatch on map " + g.to_row_string();
  }
  return std::nullopt;
}

std::optional<std::string> check_bfs_optimality(int instances, std::uint64_t seed) {
  Rng rng(seed);
  for (ReprKind repr : {ReprKind::narrow, ReprKind::turtle, ReprKind::wide}) {
    int checked = 0;
    while (checked < instances) {
      const int width = 2 + static_cast<int>(next_index(rng, 2));   // 2 or 3
      const int height = 2 + static_cast<int>(next_index(rng, 2));  // 2 or 3
      const int t = width * height;

      Grid g(width, height);
      for (int i = 0; i < t; ++i) g.set_wall(i, next_bool(rng, 0.5));

      // random objective over the three kinds; parameters sized to the grid
      ObjectiveSpec spec;
      switch (next_index(rng, 3)) {
        case 0: {
          spec.kind = ObjectiveKind::empty_tiles;
          spec.r1 = 1 + static_cast<int>(next_index(rng, t));
          spec.r2 = spec.r1 + static_cast<int>(next_index(rng, t - spec.r1 + 1));
          break;
        }
        case 1: {
          spec.kind = ObjectiveKind::path_length;
          spec.goal_length = 1 + static_cast<int>(next_index(rng, width + height));
          break;
        }
        default:
          spec.kind = ObjectiveKind::connectivity;
          break;
      }

      ReprState root = initial_state(repr, g, rng);
      const int cap = repr == ReprKind::turtle ? 6 : 4;
      const auto oracle_depth = min_solution_depth(spec, root, cap);
      if (!oracle_depth) continue;  // no shallow solution; draw a new instance
      ++checked;

      const SearchOutcome outcome = bfs(spec, root, Budget::evaluations(4'000'000));
      if (!outcome.solved || !outcome.solution_depth ||
          *outcome.solution_depth != *oracle_depth) {
        return std::string("bfs optimality mismatch on ") + repr_name(repr) + " map " +
               g.to_row_string() + " objective " + objective_name(spec.kind) +
               ": bfs depth " +
               (outcome.solution_depth ? std::to_string(*outcome.solution_depth)
                                       : std::string("unsolved")) +
               ", oracle depth " + std::to_string(*oracle_depth);
      }
    }
  }
  return std::nullopt;
}

}  // namespace mapgen::oracle
