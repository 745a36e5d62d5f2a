#include "swarmmap/world.hpp"

#include <algorithm>
#include <unordered_set>

#include "swarmmap/errors.hpp"
#include "swarmmap/rng.hpp"

namespace swarmmap {

namespace {

std::vector<std::string> split_lines(std::string_view source) {
  std::vector<std::string> lines;
  std::string current;
  for (const char ch : source) {
    if (ch == '\n') {
      lines.push_back(current);
      current.clear();
    } else if (ch != '\r') {
      current.push_back(ch);
    }
  }
  if (!current.empty()) lines.push_back(current);  // trailing newline optional
  return lines;
}

}  // namespace

Environment load_environment(std::string_view source) {
  const auto lines = split_lines(source);
  if (lines.empty() || lines.front().empty()) throw EmptyMap("map source is empty");

  const int height = static_cast<int>(lines.size());
  const int width = static_cast<int>(lines.front().size());
  for (const auto& line : lines) {
    if (static_cast<int>(line.size()) != width)
      throw RaggedMap("map lines have unequal lengths");
  }
  if (width < 3 || height < 3)
    throw EmptyMap("map smaller than 3x3 has no interior");

  Environment env;
  env.width = width;
  env.height = height;
  env.cells.resize(static_cast<std::size_t>(width) * height);

  for (int r = 0; r < height; ++r) {
    for (int c = 0; c < width; ++c) {
      const char ch = lines[r][c];
      const CellCoord cc{r, c};
      switch (ch) {
        case '#':
          env.cells[env.index(cc)] = Cell::Obstacle;
          break;
        case 'S':
          env.spawns.push_back(cc);
          [[fallthrough]];
        case '.':
          env.cells[env.index(cc)] = Cell::Free;
          break;
        default:
          throw IllegalChar("illegal map character '" + std::string(1, ch) + "' at row " +
                            std::to_string(r) + ", col " + std::to_string(c));
      }
    }
  }

  for (int r = 0; r < height; ++r) {
    for (int c = 0; c < width; ++c) {
      const bool border = r == 0 || c == 0 || r == height - 1 || c == width - 1;
      if (border && env.at({r, c}) != Cell::Obstacle)
        throw OpenBoundary("non-'#' cell on map border at row " + std::to_string(r) +
                           ", col " + std::to_string(c));
    }
  }
  return env;
}

std::string to_map_text(const Environment& env) {
  std::unordered_set<std::size_t> spawn_idx;
  for (const auto s : env.spawns) spawn_idx.insert(env.index(s));

  std::string out;
  out.reserve(env.cell_count() + env.height);
  for (int r = 0; r < env.height; ++r) {
    if (r > 0) out.push_back('\n');
    for (int c = 0; c < env.width; ++c) {
      const CellCoord cc{r, c};
      if (env.at(cc) == Cell::Obstacle)
        out.push_back('#');
      else
        out.push_back(spawn_idx.contains(env.index(cc)) ? 'S' : '.');
    }
  }
  return out;
}

std::vector<RobotState> place_robots(const Environment& env, int n, std::uint64_t seed) {
  if (n <= 0) throw SimError("robot count must be positive");

  std::vector<CellCoord> free_cells;
  for (int r = 0; r < env.height; ++r)
    for (int c = 0; c < env.width; ++c)
      if (env.at({r, c}) == Cell::Free) free_cells.push_back({r, c});

  if (static_cast<std::size_t>(n) > free_cells.size())
    throw TooManyRobots("cannot place " + std::to_string(n) + " robots on " +
                        std::to_string(free_cells.size()) + " free cells");

  std::vector<CellCoord> positions;
  if (env.spawns.size() >= static_cast<std::size_t>(n)) {
    positions.assign(env.spawns.begin(), env.spawns.begin() + n);
  } else {
    // Partial Fisher-Yates over the row-major free-cell list.
    auto rng = derive_stream(seed, stream_id(stream::kPlacement, 0));
    for (int i = 0; i < n; ++i) {
      const auto j = i + rng.next_below(free_cells.size() - i);
      std::swap(free_cells[i], free_cells[j]);
    }
    positions.assign(free_cells.begin(), free_cells.begin() + n);
  }

  std::vector<RobotState> robots;
  robots.reserve(n);
  for (int i = 0; i < n; ++i) {
    RobotState r;
    r.id = i;
    r.pos = positions[i];
    r.alive = true;
    r.heading = derive_stream(seed, stream_id(stream::kHeading, i)).next_angle();
    robots.push_back(std::move(r));
  }
  return robots;
}

}  // namespace swarmmap
