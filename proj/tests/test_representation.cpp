#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "mapgen/representation.hpp"
#include "mapgen/rng.hpp"

using namespace mapgen;

namespace {

Grid random_grid(Rng& rng, int w, int h) {
  Grid g(w, h);
  for (int i = 0; i < w * h; ++i) g.set_wall(i, next_bool(rng, 0.5));
  return g;
}

int hamming(const Grid& a, const Grid& b) {
  int d = 0;
  for (int i = 0; i < a.tile_count(); ++i) d += a.wall(i) != b.wall(i);
  return d;
}

}  // namespace

TEST_CASE("initial states") {
  Rng rng(3);

  const auto narrow = std::get<NarrowState>(initial_state(ReprKind::narrow, Grid(2, 2), rng));
  CHECK(narrow.cursor == 0);
  std::vector<std::uint16_t> sorted = *narrow.order;
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == std::vector<std::uint16_t>{0, 1, 2, 3});

  const auto turtle = std::get<TurtleState>(initial_state(ReprKind::turtle, Grid(1, 1), rng));
  CHECK(turtle.x == 0);
  CHECK(turtle.y == 0);

  const auto wide = std::get<WideState>(initial_state(ReprKind::wide, Grid(4, 4), rng));
  CHECK(wide.flipped_count == 0);
  for (int i = 0; i < 16; ++i) CHECK(!wide.flipped(i));
}

TEST_CASE("turtle initial position is uniform over cells") {
  Rng rng(99);
  std::vector<int> hits(9, 0);
  for (int i = 0; i < 9000; ++i) {
    const auto s = std::get<TurtleState>(initial_state(ReprKind::turtle, Grid(3, 3), rng));
    hits[s.y * 3 + s.x]++;
  }
  for (int h : hits) {
    CHECK(h > 800);  // 1000 expected, 3 sigma ~ 90
    CHECK(h < 1200);
  }
}

TEST_CASE("legal actions and their fixed order") {
  Rng rng(1);

  // narrow: [flip, skip] until the cursor hits the end
  ReprState s = initial_state(ReprKind::narrow, Grid(2, 2), rng);
  CHECK(legal_actions(s) ==
        std::vector<Action>{{ActionKind::flip}, {ActionKind::skip}});
  for (int i = 0; i < 4; ++i) s = apply_action(s, {ActionKind::skip});
  CHECK(legal_actions(s).empty());

  // turtle at the top-left corner of a 3x3: up and left are out of bounds
  TurtleState corner{Grid(3, 3), 0, 0};
  CHECK(legal_actions(ReprState{corner}) ==
        std::vector<Action>{{ActionKind::move_down}, {ActionKind::move_right},
                            {ActionKind::flip}});
  TurtleState center{Grid(3, 3), 1, 1};
  CHECK(legal_actions(ReprState{center}).size() == 5);

  // wide: ascending unflipped tiles
  ReprState w = initial_state(ReprKind::wide, Grid(2, 2), rng);
  w = apply_action(w, {ActionKind::flip_at, 1});
  w = apply_action(w, {ActionKind::flip_at, 3});
  CHECK(legal_actions(w) == std::vector<Action>{{ActionKind::flip_at, 0},
                                                {ActionKind::flip_at, 2}});
}

TEST_CASE("apply_action semantics") {
  Rng rng(5);

  ReprState s = initial_state(ReprKind::narrow, Grid(2, 2), rng);
  const auto& ns = std::get<NarrowState>(s);
  const int first_tile = (*ns.order)[0];
  const ReprState flipped = apply_action(s, {ActionKind::flip});
  CHECK(std::get<NarrowState>(flipped).cursor == 1);
  CHECK(std::get<NarrowState>(flipped).grid.wall(first_tile));
  CHECK(!std::get<NarrowState>(s).grid.wall(first_tile));  // input untouched
  const ReprState skipped = apply_action(s, {ActionKind::skip});
  CHECK(std::get<NarrowState>(skipped).cursor == 1);
  CHECK(std::get<NarrowState>(skipped).grid == ns.grid);

  TurtleState t{Grid(3, 3), 1, 1};
  const ReprState moved = apply_action(ReprState{t}, {ActionKind::move_up});
  CHECK(std::get<TurtleState>(moved).x == 1);
  CHECK(std::get<TurtleState>(moved).y == 0);
  CHECK(std::get<TurtleState>(moved).grid == t.grid);
  const ReprState tflip = apply_action(ReprState{t}, {ActionKind::flip});
  CHECK(std::get<TurtleState>(tflip).grid.wall(1, 1));

  WideState w{Grid(2, 2, true), std::vector<std::uint64_t>(1, 0), 0};
  const ReprState wflip = apply_action(ReprState{w}, {ActionKind::flip_at, 3});
  CHECK(!std::get<WideState>(wflip).grid.wall(3));
  CHECK(std::get<WideState>(wflip).flipped(3));
  CHECK(std::get<WideState>(wflip).flipped_count == 1);
}

TEST_CASE("illegal actions are rejected") {
  Rng rng(6);
  ReprState narrow = initial_state(ReprKind::narrow, Grid(1, 1), rng);
  narrow = apply_action(narrow, {ActionKind::skip});
  CHECK_THROWS_AS(apply_action(narrow, {ActionKind::flip}), std::invalid_argument);

  TurtleState corner{Grid(2, 2), 0, 0};
  CHECK_THROWS_AS(apply_action(ReprState{corner}, {ActionKind::move_up}),
                  std::invalid_argument);
  CHECK_THROWS_AS(apply_action(ReprState{corner}, {ActionKind::flip_at, 0}),
                  std::invalid_argument);

  ReprState wide = initial_state(ReprKind::wide, Grid(2, 2), rng);
  wide = apply_action(wide, {ActionKind::flip_at, 2});
  CHECK_THROWS_AS(apply_action(wide, {ActionKind::flip_at, 2}), std::invalid_argument);
  CHECK_THROWS_AS(apply_action(wide, {ActionKind::flip_at, 4}), std::invalid_argument);
}

TEST_CASE("state keys capture search-equivalence") {
  Rng rng(9);

  // wide: the flipped set is path bookkeeping, not state
  Grid g = random_grid(rng, 3, 3);
  WideState a{g, std::vector<std::uint64_t>(1, 0b011), 2};
  WideState b{g, std::vector<std::uint64_t>(1, 0b101), 2};
  CHECK(state_key(ReprState{a}) == state_key(ReprState{b}));

  // turtle: position is part of the state
  TurtleState t1{g, 0, 0}, t2{g, 0, 1};
  CHECK(state_key(ReprState{t1}) != state_key(ReprState{t2}));

  // narrow: cursor is part of the state
  auto order = std::make_shared<const std::vector<std::uint16_t>>(
      std::vector<std::uint16_t>{0, 1, 2, 3, 4, 5, 6, 7, 8});
  NarrowState n1{g, order, 3}, n2{g, order, 4};
  CHECK(state_key(ReprState{n1}) != state_key(ReprState{n2}));
  CHECK(state_key(ReprState{n1}) == state_key(ReprState{NarrowState{g, order, 3}}));
}

TEST_CASE("actions flip at most one tile") {
  Rng rng(21);
  constexpr ReprKind kinds[] = {ReprKind::narrow, ReprKind::turtle, ReprKind::wide};
  for (int trial = 0; trial < 60; ++trial) {
    const ReprKind kind = kinds[trial % 3];
    ReprState s = initial_state(kind, random_grid(rng, 3, 3), rng);
    for (int step = 0; step < 15; ++step) {
      const auto actions = legal_actions(s);
      if (actions.empty()) break;
      const Action a = actions[next_index(rng, actions.size())];
      const ReprState next = apply_action(s, a);
      const int d = hamming(state_grid(s), state_grid(next));
      if (a.kind == ActionKind::flip || a.kind == ActionKind::flip_at)
        CHECK(d == 1);
      else
        CHECK(d == 0);
      s = next;
    }
  }
}

TEST_CASE("wide states at depth d are exactly the grids at hamming distance d") {
  Rng rng(33);
  const Grid root = random_grid(rng, 3, 3);
  ReprState s0 = initial_state(ReprKind::wide, root, rng);

  std::set<std::string> depth1, depth2;
  for (const Action& a : legal_actions(s0)) {
    const ReprState s1 = apply_action(s0, a);
    depth1.insert(state_grid(s1).to_row_string());
    for (const Action& b : legal_actions(s1))
      depth2.insert(state_grid(apply_action(s1, b)).to_row_string());
  }

  std::set<std::string> want1, want2;
  for (int bits = 0; bits < 512; ++bits) {
    Grid g(3, 3);
    for (int i = 0; i < 9; ++i) g.set_wall(i, (bits >> i) & 1);
    const int d = hamming(root, g);
    if (d == 1) want1.insert(g.to_row_string());
    if (d == 2) want2.insert(g.to_row_string());
  }
  CHECK(depth1 == want1);
  CHECK(depth2 == want2);
}

TEST_CASE("branching factors match the representation") {
  Rng rng(44);
  for (int trial = 0; trial < 20; ++trial) {
    ReprState n = initial_state(ReprKind::narrow, random_grid(rng, 3, 3), rng);
    ReprState t = initial_state(ReprKind::turtle, random_grid(rng, 3, 3), rng);
    ReprState w = initial_state(ReprKind::wide, random_grid(rng, 3, 3), rng);
    for (int depth = 0; depth < 9; ++depth) {
      CHECK(legal_actions(n).size() <= 2);
      CHECK(legal_actions(t).size() <= 5);
      CHECK(static_cast<int>(legal_actions(w).size()) == 9 - depth);
      if (!legal_actions(n).empty())
        n = apply_action(n, legal_actions(n)[next_index(rng, legal_actions(n).size())]);
      t = apply_action(t, legal_actions(t)[next_index(rng, legal_actions(t).size())]);
      w = apply_action(w, legal_actions(w)[next_index(rng, legal_actions(w).size())]);
    }
  }
}

TEST_CASE("representation names round-trip") {
  for (ReprKind k : {ReprKind::narrow, ReprKind::turtle, ReprKind::wide})
    CHECK(repr_from_name(repr_name(k)) == k);
  CHECK(!repr_from_name("bogus").has_value());
}
