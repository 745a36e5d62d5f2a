#include "swarmmap/planning.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <limits>
#include <queue>
#include <tuple>

#include "swarmmap/errors.hpp"

namespace swarmmap {

namespace {

constexpr std::array<std::pair<int, int>, 4> kNeighbors4{{{-1, 0}, {0, -1}, {0, 1}, {1, 0}}};

// Representative = argmin over component cells of distance to the centroid.
// Scaling by the component size keeps the comparison in exact integers:
// (n*d)^2 = (n*row - sum_rows)^2 + (n*col - sum_cols)^2.
CellCoord pick_representative(const std::vector<CellCoord>& cells) {
  std::int64_t sum_r = 0, sum_c = 0;
  for (const auto c : cells) {
    sum_r += c.row;
    sum_c += c.col;
  }
  const auto n = static_cast<std::int64_t>(cells.size());
  CellCoord best = cells.front();
  std::int64_t best_d2 = std::numeric_limits<std::int64_t>::max();
  for (const auto c : cells) {  // cells are sorted row-major, so ties resolve themselves
    const std::int64_t dr = n * c.row - sum_r;
    const std::int64_t dc = n * c.col - sum_c;
    const std::int64_t d2 = dr * dr + dc * dc;
    if (d2 < best_d2) {
      best_d2 = d2;
      best = c;
    }
  }
  return best;
}

}  // namespace

std::vector<Frontier> detect_frontiers(const OccupancyGrid& map) {
  const int w = map.width, h = map.height;
  std::vector<std::uint8_t> is_frontier(map.prob.size(), 0);

  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      if (map.classify({r, c}) != CellClass::Free) continue;
      for (const auto [dr, dc] : kNeighbors4) {
        const CellCoord nb{r + dr, c + dc};
        if (map.in_bounds(nb) && map.classify(nb) == CellClass::Unknown) {
          is_frontier[map.index({r, c})] = 1;
          break;
        }
      }
    }
  }

  std::vector<Frontier> frontiers;
  std::vector<std::uint8_t> seen(map.prob.size(), 0);
  std::vector<CellCoord> queue;
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      const std::size_t idx = map.index({r, c});
      if (!is_frontier[idx] || seen[idx]) continue;

      Frontier f;
      queue.clear();
      queue.push_back({r, c});
      seen[idx] = 1;
      while (!queue.empty()) {
        const CellCoord cur = queue.back();
        queue.pop_back();
        f.cells.push_back(cur);
        for (const auto [dr, dc] : kNeighbors4) {
          const CellCoord nb{cur.row + dr, cur.col + dc};
          if (!map.in_bounds(nb)) continue;
          const std::size_t ni = map.index(nb);
          if (is_frontier[ni] && !seen[ni]) {
            seen[ni] = 1;
            queue.push_back(nb);
          }
        }
      }
      std::sort(f.cells.begin(), f.cells.end());
      f.representative = pick_representative(f.cells);
      frontiers.push_back(std::move(f));
    }
  }

  std::sort(frontiers.begin(), frontiers.end(),
            [](const Frontier& a, const Frontier& b) {
              return a.representative < b.representative;
            });
  return frontiers;
}

std::optional<CellCoord> select_target(std::span<const Frontier> frontiers,
                                       const RobotState& robot) {
  if (frontiers.empty()) return std::nullopt;
  const Frontier* best = &frontiers.front();
  std::int64_t best_d2 = dist2(robot.pos, best->representative);
  for (const auto& f : frontiers.subspan(1)) {
    const std::int64_t d2 = dist2(robot.pos, f.representative);
    if (d2 < best_d2 || (d2 == best_d2 && f.representative < best->representative)) {
      best = &f;
      best_d2 = d2;
    }
  }
  return best->representative;
}

std::optional<Path> astar(const OccupancyGrid& map, CellCoord start, CellCoord goal) {
  if (map.classify(start) == CellClass::Occupied)
    throw StartOccupied("path planning from a cell classified Occupied");
  if (start == goal) return Path{};
  if (!map.in_bounds(goal) || map.classify(goal) == CellClass::Occupied)
    return std::nullopt;

  const int w = map.width;
  const auto heuristic = [&](CellCoord c) {
    return std::abs(c.row - goal.row) + std::abs(c.col - goal.col);
  };

  constexpr int kUnvisited = std::numeric_limits<int>::max();
  std::vector<int> g(map.prob.size(), kUnvisited);
  std::vector<int> parent(map.prob.size(), -1);
  std::vector<std::uint8_t> closed(map.prob.size(), 0);

  // (f, h, row-major index): the full key pins expansion order.
  using Entry = std::tuple<int, int, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;

  const int start_idx = static_cast<int>(map.index(start));
  g[start_idx] = 0;
  open.emplace(heuristic(start), heuristic(start), start_idx);

  const int goal_idx = static_cast<int>(map.index(goal));
  while (!open.empty()) {
    const auto [f, h, idx] = open.top();
    open.pop();
    if (closed[idx]) continue;
    closed[idx] = 1;
    if (idx == goal_idx) break;

    const CellCoord cur{idx / w, idx % w};
    for (const auto [dr, dc] : kNeighbors4) {
      const CellCoord nb{cur.row + dr, cur.col + dc};
      if (!map.in_bounds(nb) || map.classify(nb) == CellClass::Occupied) continue;
      const int ni = static_cast<int>(map.index(nb));
      const int ng = g[idx] + 1;
      if (ng < g[ni]) {
        g[ni] = ng;
        parent[ni] = idx;
        const int nh = heuristic(nb);
        open.emplace(ng + nh, nh, ni);
      }
    }
  }

  if (!closed[goal_idx]) return std::nullopt;

  Path path;
  for (int idx = goal_idx; idx != start_idx; idx = parent[idx])
    path.cells.push_back({idx / w, idx % w});
  std::reverse(path.cells.begin(), path.cells.end());
  return path;
}

}  // namespace swarmmap
