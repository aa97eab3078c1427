#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace mapgen {

// Row-major binary tile grid. A cell is either empty (0, passable) or a
// wall (1, blocked). Cells are bit-packed, index = y * width + x with the
// origin at the top left, which also fixes serialization order and the
// crossover-point semantics used by the optimizers.
class Grid {
 public:
  Grid() = default;
  Grid(int width, int height, bool wall = false);

  int width() const { return width_; }
  int height() const { return height_; }
  int tile_count() const { return width_ * height_; }

  bool wall(int index) const {
    return (words_[static_cast<std::size_t>(index) >> 6] >> (index & 63)) & 1u;
  }
  bool wall(int x, int y) const { return wall(y * width_ + x); }
  bool empty(int index) const { return !wall(index); }
  bool empty(int x, int y) const { return !wall(x, y); }

  void set_wall(int index, bool w) {
    const std::uint64_t bit = 1ULL << (index & 63);
    if (w)
      words_[static_cast<std::size_t>(index) >> 6] |= bit;
    else
      words_[static_cast<std::size_t>(index) >> 6] &= ~bit;
  }
  void set_wall(int x, int y, bool w) { set_wall(y * width_ + x, w); }
  void toggle(int index) {
    words_[static_cast<std::size_t>(index) >> 6] ^= 1ULL << (index & 63);
  }

  std::span<const std::uint64_t> words() const { return words_; }

  bool operator==(const Grid& other) const = default;

  // Map text format: height lines of width characters, '0' empty, '1' wall,
  // each line newline-terminated. Used everywhere a map is persisted.
  std::string to_text() const;
  static Grid from_text(const std::string& text, std::string* error = nullptr);

  // Single-line form (rows concatenated, no newlines) used in the results CSV.
  std::string to_row_string() const;
  static Grid from_row_string(const std::string& s, int width, int height,
                              std::string* error = nullptr);

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint64_t> words_;
};

struct GridMetrics {
  int empty_count = 0;
  int region_count = 0;
  int longest_shortest_path = 0;

  bool operator==(const GridMetrics&) const = default;
};

// Number of empty cells.
int count_empty(const Grid& g);

// Number of 4-connected components of empty cells; diagonals do not connect.
int count_regions(const Grid& g);

// Longest shortest path: max over pairs of mutually reachable empty cells of
// the BFS distance between them, counted in steps (edges). Pairs in different
// regions are ignored; 0 if fewer than two mutually reachable empty cells
// exist. One BFS per empty cell, O(E*V) total.
int longest_shortest_path(const Grid& g);

GridMetrics compute_metrics(const Grid& g);

std::size_t grid_hash(const Grid& g);

}  // namespace mapgen
