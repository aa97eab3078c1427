#pragma once

#include <optional>
#include <string>

#include "mapgen/grid.hpp"

namespace mapgen {

enum class ObjectiveKind { empty_tiles, path_length, connectivity };

const char* objective_name(ObjectiveKind k);
std::optional<ObjectiveKind> objective_from_name(const std::string& name);

// One of the three scoring functions. Each maps a grid to [0, 1]; an exact
// 1 (produced by the constant branch, never by a ratio happening to land on
// 1.0) marks a solution.
struct ObjectiveSpec {
  ObjectiveKind kind = ObjectiveKind::empty_tiles;
  int r1 = 45;  // empty-tiles acceptable range, inclusive on both ends
  int r2 = 65;
  int goal_length = 26;  // path-length goal

  // Empty string when valid for a width*height-tile grid.
  std::string validate(int tile_count) const;
};

struct Evaluation {
  double value = 0.0;
  bool solved = false;
};

// Scores a grid, deciding solution-ness from the branch taken rather than a
// float comparison. Computes only the metric the objective needs.
Evaluation evaluate(const ObjectiveSpec& spec, const Grid& g);

double score(const ObjectiveSpec& spec, const Grid& g);
bool is_solution(const ObjectiveSpec& spec, const Grid& g);

}  // namespace mapgen
