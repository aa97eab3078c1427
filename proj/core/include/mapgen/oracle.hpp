#pragma once

#include <optional>
#include <string>

#include "mapgen/grid.hpp"
#include "mapgen/objective.hpp"
#include "mapgen/representation.hpp"

namespace mapgen::oracle {

// Brute-force reference implementations, deliberately written with different
// algorithms and bookkeeping than the production code they cross-check.

// Region count via union-find over empty cells.
int count_regions_union_find(const Grid& g);

// Longest shortest path via Floyd-Warshall over the empty-cell graph.
int longest_shortest_path_floyd_warshall(const Grid& g);

// Minimum depth at which a solution state exists in the representation state
// graph, searched breadth-wise with full-state dedup, or nullopt if none
// exists within depth_cap. The root counts as depth 0.
std::optional<int> min_solution_depth(const ObjectiveSpec& spec, const ReprState& root,
                                      int depth_cap);

// Checks count_regions and longest_shortest_path against the oracles above on
// every one of the 512 3x3 grids. Returns a description of the first mismatch
// (including the offending map) or nullopt when all agree.
std::optional<std::string> check_grid_metrics_exhaustive();

// Runs bfs on `instances` random small instances per representation whose
// oracle solution depth is within a small cap, and compares the reported
// solution depth with the oracle minimum. Returns the first mismatch or
// nullopt.
std::optional<std::string> check_bfs_optimality(int instances, std::uint64_t seed);

}  // namespace mapgen::oracle
