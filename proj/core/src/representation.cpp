#include "mapgen/representation.hpp"

#include <stdexcept>

namespace mapgen {

const char* repr_name(ReprKind k) {
  switch (k) {
    case ReprKind::narrow: return "narrow";
    case ReprKind::turtle: return "turtle";
    case ReprKind::wide: return "wide";
  }
  return "?";
}

std::optional<ReprKind> repr_from_name(const std::string& name) {
  if (name == "narrow") return ReprKind::narrow;
  if (name == "turtle") return ReprKind::turtle;
  if (name == "wide") return ReprKind::wide;
  return std::nullopt;
}

std::string action_name(const Action& a) {
  switch (a.kind) {
    case ActionKind::skip: return "skip";
    case ActionKind::flip: return "flip";
    case ActionKind::move_up: return "up";
    case ActionKind::move_down: return "down";
    case ActionKind::move_left: return "left";
    case ActionKind::move_right: return "right";
    case ActionKind::flip_at: return "flip@" + std::to_string(a.tile);
  }
  return "?";
}

ReprKind repr_kind(const ReprState& s) {
  if (std::holds_alternative<NarrowState>(s)) return ReprKind::narrow;
  if (std::holds_alternative<TurtleState>(s)) return ReprKind::turtle;
  return ReprKind::wide;
}

const Grid& state_grid(const ReprState& s) {
  return std::visit([](const auto& st) -> const Grid& { return st.grid; }, s);
}

ReprState initial_state(ReprKind kind, Grid g0, Rng& rng) {
  switch (kind) {
    case ReprKind::narrow: {
      auto order = std::make_shared<const std::vector<std::uint16_t>>(
          random_permutation(rng, static_cast<std::size_t>(g0.tile_count())));
      return NarrowState{std::move(g0), std::move(order), 0};
    }
    case ReprKind::turtle: {
      const int cell = static_cast<int>(next_index(rng, g0.tile_count()));
      const int w = g0.width();
      return TurtleState{std::move(g0), cell % w, cell / w};
    }
    case ReprKind::wide: {
      const std::size_t nwords = (static_cast<std::size_t>(g0.tile_count()) + 63) / 64;
      return WideState{std::move(g0), std::vector<std::uint64_t>(nwords, 0), 0};
    }
  }
  throw std::logic_error("unknown representation");
}

void legal_actions(const ReprState& s, std::vector<Action>& out) {
  out.clear();
  if (const auto* n = std::get_if<NarrowState>(&s)) {
    if (n->cursor < n->grid.tile_count()) {
      out.push_back({ActionKind::flip});
      out.push_back({ActionKind::skip});
    }
    return;
  }
  if (const auto* t = std::get_if<TurtleState>(&s)) {
    if (t->y > 0) out.push_back({ActionKind::move_up});
    if (t->y + 1 < t->grid.height()) out.push_back({ActionKind::move_down});
    if (t->x > 0) out.push_back({ActionKind::move_left});
    if (t->x + 1 < t->grid.width()) out.push_back({ActionKind::move_right});
    out.push_back({ActionKind::flip});
    return;
  }
  const auto& w = std::get<WideState>(s);
  const int tiles = w.grid.tile_count();
  out.reserve(tiles - w.flipped_count);
  for (int i = 0; i < tiles; ++i) {
    if (!w.flipped(i)) out.push_back({ActionKind::flip_at, static_cast<std::uint16_t>(i)});
  }
}

std::vector<Action> legal_actions(const ReprState& s) {
  std::vector<Action> out;
  legal_actions(s, out);
  return out;
}

namespace {

[[noreturn]] void illegal(const Action& a) {
  throw std::invalid_argument("illegal action: " + action_name(a));
}

}  // namespace

ReprState apply_action(const ReprState& s, const Action& a) {
  if (const auto* n = std::get_if<NarrowState>(&s)) {
    if (n->cursor >= n->grid.tile_count()) illegal(a);
    NarrowState next = *n;
    if (a.kind == ActionKind::flip)
      next.grid.toggle((*next.order)[next.cursor]);
    else if (a.kind != ActionKind::skip)
      illegal(a);
    ++next.cursor;
    return next;
  }
  if (const auto* t = std::get_if<TurtleState>(&s)) {
    TurtleState next = *t;
    switch (a.kind) {
      case ActionKind::flip: next.grid.toggle(next.y * next.grid.width() + next.x); break;
      case ActionKind::move_up: next.y -= 1; break;
      case ActionKind::move_down: next.y += 1; break;
      case ActionKind::move_left: next.x -= 1; break;
      case ActionKind::move_right: next.x += 1; break;
      default: illegal(a);
    }
    if (next.x < 0 || next.x >= next.grid.width() || next.y < 0 ||
        next.y >= next.grid.height())
      illegal(a);
    return next;
  }
  const auto& w = std::get<WideState>(s);
  if (a.kind != ActionKind::flip_at || a.tile >= w.grid.tile_count() || w.flipped(a.tile))
    illegal(a);
  WideState next = w;
  next.grid.toggle(a.tile);
  next.flipped_words[a.tile >> 6] |= 1ULL << (a.tile & 63);
  next.flipped_count += 1;
  return next;
}

StateKey state_key(const ReprState& s) {
  if (const auto* n = std::get_if<NarrowState>(&s)) return {n->grid, n->cursor};
  if (const auto* t = std::get_if<TurtleState>(&s))
    return {t->grid, t->y * t->grid.width() + t->x};
  return {state_grid(s), 0};
}

}  // namespace mapgen
