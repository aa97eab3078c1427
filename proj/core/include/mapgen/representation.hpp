#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mapgen/grid.hpp"
#include "mapgen/rng.hpp"

namespace mapgen {

enum class ReprKind { narrow, turtle, wide };

const char* repr_name(ReprKind k);
std::optional<ReprKind> repr_from_name(const std::string& name);

enum class ActionKind : std::uint8_t {
  skip,       // narrow: leave the cursor tile as is
  flip,       // narrow/turtle: toggle the current tile
  move_up,    // turtle moves
  move_down,
  move_left,
  move_right,
  flip_at,    // wide: toggle a chosen tile
};

struct Action {
  ActionKind kind = ActionKind::skip;
  std::uint16_t tile = 0;  // target of flip_at, unused otherwise

  bool operator==(const Action&) const = default;
};

std::string action_name(const Action& a);

// Tiles are decided in a random order fixed once per run; the cursor walks
// that order. The order is shared by every node of one search tree.
struct NarrowState {
  Grid grid;
  std::shared_ptr<const std::vector<std::uint16_t>> order;
  int cursor = 0;
};

struct TurtleState {
  Grid grid;
  int x = 0;
  int y = 0;
};

// The flipped set holds the tiles toggled on the path from the root; children
// flipping one of them are pruned. It is path bookkeeping, not search state.
struct WideState {
  Grid grid;
  std::vector<std::uint64_t> flipped_words;
  int flipped_count = 0;

  bool flipped(int tile) const {
    return (flipped_words[static_cast<std::size_t>(tile) >> 6] >> (tile & 63)) & 1u;
  }
};

using ReprState = std::variant<NarrowState, TurtleState, WideState>;

ReprKind repr_kind(const ReprState& s);
const Grid& state_grid(const ReprState& s);

// Narrow: cursor 0 with a fresh random tile order. Turtle: position uniform
// over all cells. Wide: empty flipped set.
ReprState initial_state(ReprKind kind, Grid g0, Rng& rng);

// Fixed, documented ordering so search tie-breaking is deterministic:
// narrow [flip, skip]; turtle [up, down, left, right, flip] with out-of-bounds
// moves omitted; wide flip_at(i) for unflipped i in ascending order.
void legal_actions(const ReprState& s, std::vector<Action>& out);
std::vector<Action> legal_actions(const ReprState& s);

// Pure transition; the input state is not modified. Throws
// std::invalid_argument if the action is not legal in s.
ReprState apply_action(const ReprState& s, const Action& a);

// Canonical dedup key: equal keys iff states are search-equivalent. Narrow
// keys carry the cursor, turtle keys the position; wide keys are the grid
// alone (two flip sequences reaching the same grid are duplicates).
struct StateKey {
  Grid grid;
  std::int32_t aux = 0;

  bool operator==(const StateKey&) const = default;
};

StateKey state_key(const ReprState& s);

struct StateKeyHash {
  std::size_t operator()(const StateKey& k) const {
    return grid_hash(k.grid) * 0x9E3779B97F4A7C15ULL + static_cast<std::size_t>(k.aux);
  }
};

}  // namespace mapgen
