#include "mapgen/grid.hpp"

#include <bit>
#include <cassert>
#include <limits>
#include <stdexcept>

namespace mapgen {

namespace {

// Distance field with O(1) reset: an entry is valid only when its stamp
// matches the current generation.
struct DistField {
  std::vector<std::int32_t> stamp;
  std::vector<std::int32_t> dist;
  std::int32_t generation = 0;

  void ensure(std::size_t n) {
    if (stamp.size() < n) {
      stamp.assign(n, 0);
      dist.resize(n);
      generation = 0;
    }
  }

  void begin() {
    if (++generation == std::numeric_limits<std::int32_t>::max()) {
      std::fill(stamp.begin(), stamp.end(), 0);
      generation = 1;
    }
  }

  bool seen(int p) const { return stamp[p] == generation; }
  void set(int p, std::int32_t d) {
    stamp[p] = generation;
    dist[p] = d;
  }
  std::int32_t at(int p) const { return dist[p]; }
};

// Scratch for the graph metrics: the grid re-encoded with a one-cell wall
// border so neighbor checks need no bounds tests. Sized to the largest grid
// seen on this thread; runs never share a thread mid-computation.
struct MetricScratch {
  std::vector<std::uint8_t> occ;  // padded, 1 = empty
  std::vector<std::int32_t> queue;
  std::vector<std::int32_t> region_order;  // BFS order of the current region
  DistField assigned, from_u, from_mid, probe;
};

MetricScratch& metric_scratch(std::size_t padded) {
  thread_local MetricScratch s;
  if (s.occ.size() < padded) {
    s.occ.resize(padded);
    s.assigned.ensure(padded);
    s.from_u.ensure(padded);
    s.from_mid.ensure(padded);
    s.probe.ensure(padded);
  }
  return s;
}

// Fills occ with the padded occupancy map and returns the row stride.
int build_padded(const Grid& g, MetricScratch& s) {
  const int w = g.width(), h = g.height();
  const int stride = w + 2;
  const std::size_t padded = static_cast<std::size_t>(stride) * (h + 2);
  std::fill(s.occ.begin(), s.occ.begin() + padded, 0);
  for (int y = 0; y < h; ++y) {
    const int row = (y + 1) * stride + 1;
    for (int x = 0; x < w; ++x) s.occ[row + x] = g.empty(x, y) ? 1 : 0;
  }
  return stride;
}

// BFS over empty cells from src. queue ends up sorted by distance, so its
// back is a farthest cell and f.at(queue.back()) the eccentricity of src.
void padded_bfs(const std::vector<std::uint8_t>& occ, int stride, int src, DistField& f,
                std::vector<std::int32_t>& queue) {
  f.begin();
  f.set(src, 0);
  queue.clear();
  queue.push_back(src);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int c = queue[head];
    const std::int32_t d = f.at(c) + 1;
    const int nbors[4] = {c - 1, c + 1, c - stride, c + stride};
    for (int n : nbors) {
      if (occ[n] && !f.seen(n)) {
        f.set(n, d);
        queue.push_back(n);
      }
    }
  }
}

}  // namespace

Grid::Grid(int width, int height, bool wall)
    : width_(width),
      height_(height),
      words_((static_cast<std::size_t>(width) * height + 63) / 64, 0) {
  assert(width > 0 && height > 0);
  if (wall) {
    const int t = tile_count();
    for (int i = 0; i < t; ++i) set_wall(i, true);
  }
}

std::string Grid::to_text() const {
  std::string out;
  out.reserve(static_cast<std::size_t>(tile_count()) + height_);
  for (int y = 0; y < height_; ++y) {
    for (int x = 0; x < width_; ++x) out.push_back(wall(x, y) ? '1' : '0');
    out.push_back('\n');
  }
  return out;
}

Grid Grid::from_text(const std::string& text, std::string* error) {
  std::vector<std::string> lines;
  std::string cur;
  for (char c : text) {
    if (c == '\n') {
      lines.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) lines.push_back(cur);
  auto fail = [&](const std::string& msg) {
    if (error) *error = msg;
    return Grid();
  };
  if (lines.empty()) return fail("empty map text");
  const std::size_t width = lines[0].size();
  if (width == 0) return fail("empty map row");
  Grid g(static_cast<int>(width), static_cast<int>(lines.size()));
  for (std::size_t y = 0; y < lines.size(); ++y) {
    if (lines[y].size() != width) return fail("ragged map rows");
    for (std::size_t x = 0; x < width; ++x) {
      const char c = lines[y][x];
      if (c != '0' && c != '1') return fail("map characters must be 0 or 1");
      g.set_wall(static_cast<int>(x), static_cast<int>(y), c == '1');
    }
  }
  if (error) error->clear();
  return g;
}

std::string Grid::to_row_string() const {
  std::string out;
  out.reserve(tile_count());
  const int t = tile_count();
  for (int i = 0; i < t; ++i) out.push_back(wall(i) ? '1' : '0');
  return out;
}

Grid Grid::from_row_string(const std::string& s, int width, int height,
                           std::string* error) {
  auto fail = [&](const std::string& msg) {
    if (error) *error = msg;
    return Grid();
  };
  if (width <= 0 || height <= 0) return fail("bad dimensions");
  if (s.size() != static_cast<std::size_t>(width) * height)
    return fail("map string length does not match dimensions");
  Grid g(width, height);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '0' && s[i] != '1') return fail("map characters must be 0 or 1");
    g.set_wall(static_cast<int>(i), s[i] == '1');
  }
  if (error) error->clear();
  return g;
}

int count_empty(const Grid& g) {
  int walls = 0;
  for (std::uint64_t w : g.words()) walls += std::popcount(w);
  return g.tile_count() - walls;
}

int count_regions(const Grid& g) {
  const int stride = g.width() + 2;
  const std::size_t padded = static_cast<std::size_t>(stride) * (g.height() + 2);
  MetricScratch& s = metric_scratch(padded);
  build_padded(g, s);

  s.assigned.begin();
  int regions = 0;
  const std::size_t first = stride + 1;
  const std::size_t last = padded - stride - 1;
  for (std::size_t start = first; start <= last; ++start) {
    if (!s.occ[start] || s.assigned.seen(static_cast<int>(start))) continue;
    ++regions;
    s.queue.clear();
    s.queue.push_back(static_cast<std::int32_t>(start));
    s.assigned.set(static_cast<int>(start), 0);
    for (std::size_t head = 0; head < s.queue.size(); ++head) {
      const int c = s.queue[head];
      const int nbors[4] = {c - 1, c + 1, c - stride, c + stride};
      for (int n : nbors) {
        if (s.occ[n] && !s.assigned.seen(n)) {
          s.assigned.set(n, 0);
          s.queue.push_back(n);
        }
      }
    }
  }
  return regions;
}

// Exact diameter per region: a double sweep gives a lower bound and a central
// root, then eccentricities are checked from the deepest root levels inward
// until the bound 2 * level proves no farther pair exists (iFUB pruning).
// Matches all-sources BFS exactly but runs a handful of BFS passes instead of
// one per empty cell.
int longest_shortest_path(const Grid& g) {
  const int stride = g.width() + 2;
  const std::size_t padded = static_cast<std::size_t>(stride) * (g.height() + 2);
  MetricScratch& s = metric_scratch(padded);
  build_padded(g, s);

  s.assigned.begin();
  int best = 0;
  const std::size_t first = stride + 1;
  const std::size_t last = padded - stride - 1;
  for (std::size_t start = first; start <= last; ++start) {
    if (!s.occ[start] || s.assigned.seen(static_cast<int>(start))) continue;

    // discover the region and a first farthest cell u
    padded_bfs(s.occ, stride, static_cast<int>(start), s.from_u, s.queue);
    for (int c : s.queue) s.assigned.set(c, 0);
    const int u = s.queue.back();

    // regions of up to three cells are paths; their diameter is size - 1
    if (s.queue.size() <= 3) {
      best = std::max(best, static_cast<int>(s.queue.size()) - 1);
      continue;
    }

    // eccentricity of u is a lower bound; w realizes it
    padded_bfs(s.occ, stride, u, s.from_u, s.queue);
    const int w_cell = s.queue.back();
    int lower = s.from_u.at(w_cell);

    // walk half-way from w back toward u for a central root
    int mid = w_cell;
    for (int step = lower / 2; step > 0; --step) {
      const int want = s.from_u.at(mid) - 1;
      const int nbors[4] = {mid - 1, mid + 1, mid - stride, mid + stride};
      for (int n : nbors) {
        if (s.occ[n] && s.from_u.seen(n) && s.from_u.at(n) == want) {
          mid = n;
          break;
        }
      }
    }

    padded_bfs(s.occ, stride, mid, s.from_mid, s.region_order);
    lower = std::max(lower, s.from_mid.at(s.region_order.back()));

    // deepest level first; stop once 2 * level cannot beat the bound
    for (std::size_t i = s.region_order.size(); i-- > 0;) {
      const int v = s.region_order[i];
      const int level = s.from_mid.at(v);
      if (lower >= 2 * level) break;
      if (v == u || v == mid) continue;  // eccentricities already counted
      padded_bfs(s.occ, stride, v, s.probe, s.queue);
      lower = std::max(lower, s.probe.at(s.queue.back()));
    }
    best = std::max(best, lower);
  }
  return best;
}

GridMetrics compute_metrics(const Grid& g) {
  return GridMetrics{count_empty(g), count_regions(g), longest_shortest_path(g)};
}

std::size_t grid_hash(const Grid& g) {
  std::uint64_t h = 0x9E3779B97F4A7C15ULL ^ (static_cast<std::uint64_t>(g.width()) << 32 |
                                             static_cast<std::uint64_t>(g.height()));
  for (std::uint64_t word : g.words()) {
    h ^= word + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

}  // namespace mapgen
