#include "mapgen/objective.hpp"

namespace mapgen {

const char* objective_name(ObjectiveKind k) {
  switch (k) {
    case ObjectiveKind::empty_tiles: return "empty";
    case ObjectiveKind::path_length: return "path";
    case ObjectiveKind::connectivity: return "connectivity";
  }
  return "?";
}

std::optional<ObjectiveKind> objective_from_name(const std::string& name) {
  if (name == "empty") return ObjectiveKind::empty_tiles;
  if (name == "path") return ObjectiveKind::path_length;
  if (name == "connectivity") return ObjectiveKind::connectivity;
  return std::nullopt;
}

std::string ObjectiveSpec::validate(int tile_count) const {
  switch (kind) {
    case ObjectiveKind::empty_tiles:
      if (r1 < 0 || r1 > r2 || r2 > tile_count)
        return "empty-tiles range requires 0 <= r1 <= r2 <= tile count";
      return {};
    case ObjectiveKind::path_length:
      if (goal_length < 1) return "path goal length must be >= 1";
      return {};
    case ObjectiveKind::connectivity:
      return {};
  }
  return "unknown objective kind";
}

Evaluation evaluate(const ObjectiveSpec& spec, const Grid& g) {
  switch (spec.kind) {
    case ObjectiveKind::empty_tiles: {
      const int e = count_empty(g);
      const int t = g.tile_count();
      // e < r1 implies r1 >= 1 and e > r2 implies r2 < t, so neither ratio
      // can divide by zero; the degenerate branches are simply unreachable.
      if (e < spec.r1)
        return {static_cast<double>(e) / spec.r1, false};
      if (e <= spec.r2) return {1.0, true};
      return {static_cast<double>(t - e) / (t - spec.r2), false};
    }
    case ObjectiveKind::path_length: {
      const int p = longest_shortest_path(g);
      if (p < spec.goal_length)
        return {static_cast<double>(p) / spec.goal_length, false};
      return {1.0, true};
    }
    case ObjectiveKind::connectivity: {
      const int r = count_regions(g);
      if (r == 0) return {0.0, false};
      if (r == 1) return {1.0, true};
      return {1.0 / r, false};
    }
  }
  return {};
}

double score(const ObjectiveSpec& spec, const Grid& g) {
  return evaluate(spec, g).value;
}

bool is_solution(const ObjectiveSpec& spec, const Grid& g) {
  return evaluate(spec, g).solved;
}

}  // namespace mapgen
