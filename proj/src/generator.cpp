#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numbers>
#include <random>

#include "free_grid.hpp"
#include "nspmr/world.hpp"

namespace nspmr {

namespace detail {

FreeGrid::FreeGrid(const Scenario& s, double resolution) : shapes_(s.shapes()), res_(resolution) {
  if (!(resolution > 0.0)) {
    throw std::invalid_argument("grid resolution must be positive");
  }
  for (const auto& poly : shapes_) {
    boxes_.push_back(bounding_box(poly));
  }
  // Anchor the lattice on the start so a robot stepping by the resolution stays on nodes.
  const double kx = std::floor((s.start.x - s.bounds.xmin) / res_ + 1e-9);
  const double ky = std::floor((s.start.y - s.bounds.ymin) / res_ + 1e-9);
  x0_ = s.start.x - kx * res_;
  y0_ = s.start.y - ky * res_;
  nx_ = static_cast<int>(std::floor((s.bounds.xmax - x0_) / res_ + 1e-9)) + 1;
  ny_ = static_cast<int>(std::floor((s.bounds.ymax - y0_) / res_ + 1e-9)) + 1;

  free_.assign(size(), 1);
  for (int iy = 0; iy < ny_; ++iy) {
    for (int ix = 0; ix < nx_; ++ix) {
      const Point2 p = point(ix, iy);
      for (std::size_t k = 0; k < shapes_.size(); ++k) {
        const Box& b = boxes_[k];
        if (p.x < b.xmin - kGeomEps || p.x > b.xmax + kGeomEps || p.y < b.ymin - kGeomEps ||
            p.y > b.ymax + kGeomEps) {
          continue;
        }
        if (point_in_polygon(p, shapes_[k]) != Containment::outside) {
          free_[index(ix, iy)] = 0;
          break;
        }
      }
    }
  }

  const int sx = static_cast<int>(kx);
  const int sy = static_cast<int>(ky);
  if (in_range(sx, sy) && node_free(index(sx, sy))) {
    start_ = index(sx, sy);
  }
  const int gx = static_cast<int>(std::lround((s.goal.x - x0_) / res_));
  const int gy = static_cast<int>(std::lround((s.goal.y - y0_) / res_));
  if (in_range(gx, gy) && node_free(index(gx, gy))) {
    const Point2 node = point(gx, gy);
    goal_tail_ = distance(node, s.goal);
    if (goal_tail_ <= kGeomEps || !segment_blocked(node, s.goal)) {
      goal_ = index(gx, gy);
    }
  }
}

bool FreeGrid::segment_blocked(Point2 a, Point2 b) const {
  const double xmin = std::min(a.x, b.x);
  const double xmax = std::max(a.x, b.x);
  const double ymin = std::min(a.y, b.y);
  const double ymax = std::max(a.y, b.y);
  for (std::size_t k = 0; k < shapes_.size(); ++k) {
    const Box& box = boxes_[k];
    if (xmax < box.xmin - kGeomEps || xmin > box.xmax + kGeomEps || ymax < box.ymin - kGeomEps ||
        ymin > box.ymax + kGeomEps) {
      continue;
    }
    if (segment_touches_polygon(a, b, shapes_[k])) {
      return true;
    }
  }
  return false;
}

bool FreeGrid::edge_free(int ix, int iy, int jx, int jy) const {
  if (!in_range(ix, iy) || !in_range(jx, jy)) {
    return false;
  }
  if (!node_free(index(ix, iy)) || !node_free(index(jx, jy))) {
    return false;
  }
  return !segment_blocked(point(ix, iy), point(jx, jy));
}

}  // namespace detail

bool grid_reachable(const Scenario& s, double resolution) {
  const detail::FreeGrid grid(s, resolution);
  if (!grid.start_node() || !grid.goal_node()) {
    return false;
  }
  std::vector<std::uint8_t> seen(grid.size(), 0);
  std::deque<std::size_t> queue{*grid.start_node()};
  seen[*grid.start_node()] = 1;
  while (!queue.empty()) {
    const std::size_t id = queue.front();
    queue.pop_front();
    if (id == *grid.goal_node()) {
      return true;
    }
    const int ix = grid.ix_of(id);
    const int iy = grid.iy_of(id);
    for (const auto& [dx, dy] : detail::FreeGrid::kNeighbours) {
      const int jx = ix + dx;
      const int jy = iy + dy;
      if (!grid.in_range(jx, jy) || seen[grid.index(jx, jy)]) {
        continue;
      }
      if (grid.edge_free(ix, iy, jx, jy)) {
        seen[grid.index(jx, jy)] = 1;
        queue.push_back(grid.index(jx, jy));
      }
    }
  }
  return false;
}

namespace {

// Portable uniform draws: std::uniform_real_distribution is not specified bit-exactly.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) {
    const double unit = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * unit;
  }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }

 private:
  std::mt19937_64 engine_;
};

double round_mm(double v) { return std::round(v * 1000.0) / 1000.0; }

Polygon make_shape(ShapeKind kind, Rng& rng, double min_size, double max_size) {
  const double w = rng.uniform(min_size, max_size);
  const double h = rng.uniform(min_size, max_size);
  Polygon local;
  switch (kind) {
    case ShapeKind::rect:
      local = {{0, 0}, {w, 0}, {w, h}, {0, h}};
      break;
    case ShapeKind::l_shape: {
      const double tx = w * rng.uniform(0.35, 0.6);
      const double ty = h * rng.uniform(0.35, 0.6);
      local = {{0, 0}, {w, 0}, {w, ty}, {tx, ty}, {tx, h}, {0, h}};
      // One of four orientations.
      const std::size_t flip = rng.below(4);
      for (auto& p : local) {
        if (flip & 1U) {
          p.x = w - p.x;
        }
        if (flip & 2U) {
          p.y = h - p.y;
        }
      }
      break;
    }
    case ShapeKind::triangle: {
      const double apex = rng.uniform(0.0, w);
      local = {{0, 0}, {w, 0}, {apex, h}};
      const double angle = rng.uniform(0.0, 2.0 * std::numbers::pi);
      const Point2 c{w / 2.0, h / 3.0};
      for (auto& p : local) {
        const Point2 d = p - c;
        p = c + Point2{d.x * std::cos(angle) - d.y * std::sin(angle),
                       d.x * std::sin(angle) + d.y * std::cos(angle)};
      }
      break;
    }
  }
  return local;
}

// Sharp spikes would give huge mitered offsets for the boundary-following planners.
double min_interior_angle_deg(const Polygon& poly) {
  double best = 180.0;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a = poly[(i + n - 1) % n] - poly[i];
    const Point2 b = poly[(i + 1) % n] - poly[i];
    const double ang = std::acos(std::clamp(dot(a, b) / (norm(a) * norm(b)), -1.0, 1.0));
    best = std::min(best, ang * 180.0 / std::numbers::pi);
  }
  return best;
}

constexpr double kMinCornerAngleDeg = 25.0;

double point_polygon_clearance(Point2 p, const Polygon& poly) {
  if (point_in_polygon(p, poly) != Containment::outside) {
    return 0.0;
  }
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < poly.size(); ++i) {
    best = std::min(best, point_segment_distance(p, poly[i], poly[(i + 1) % poly.size()]));
  }
  return best;
}

constexpr int kPlacementAttempts = 2000;
constexpr int kWorldAttempts = 50;

}  // namespace

Scenario generate_world(std::uint64_t seed, const WorldGenSpec& spec) {
  if (spec.count < 0) {
    throw ScenarioError("generate_world: count must be non-negative");
  }
  if (!(spec.min_size > 0.0) || !(spec.max_size >= spec.min_size)) {
    throw ScenarioError("generate_world: sizes must satisfy 0 < min_size <= max_size");
  }
  if (spec.count > 0 && spec.kinds.empty()) {
    throw ScenarioError("generate_world: no obstacle kinds enabled");
  }
  const std::vector<ShapeKind> kinds(spec.kinds.begin(), spec.kinds.end());

  Scenario s;
  s.name = "random-" + std::to_string(seed);
  s.bounds = {-2.0, -2.0, 27.0, 27.0};
  s.start = {0.0, 0.0};
  s.goal = {25.0, 25.0};
  const double gap = 2.0 * s.delta;

  Rng rng(seed);
  for (int world_try = 0; world_try < kWorldAttempts; ++world_try) {
    s.obstacles.clear();
    for (int k = 0; k < spec.count; ++k) {
      bool placed = false;
      for (int attempt = 0; attempt < kPlacementAttempts && !placed; ++attempt) {
        const ShapeKind kind = kinds[rng.below(kinds.size())];
        Polygon shape = make_shape(kind, rng, spec.min_size, spec.max_size);
        const Box local = bounding_box(shape);
        const double ox = rng.uniform(s.bounds.xmin + gap - local.xmin,
                                      s.bounds.xmax - gap - local.xmax);
        const double oy = rng.uniform(s.bounds.ymin + gap - local.ymin,
                                      s.bounds.ymax - gap - local.ymax);
        for (auto& p : shape) {
          p = {round_mm(p.x + ox), round_mm(p.y + oy)};
        }
        shape = make_ccw(std::move(shape));
        if (!polygon_problems(shape).empty() ||
            min_interior_angle_deg(shape) < kMinCornerAngleDeg) {
          continue;
        }
        const Box box = bounding_box(shape);
        if (box.xmin < s.bounds.xmin + gap || box.xmax > s.bounds.xmax - gap ||
            box.ymin < s.bounds.ymin + gap || box.ymax > s.bounds.ymax - gap) {
          continue;
        }
        if (point_polygon_clearance(s.start, shape) < gap ||
            point_polygon_clearance(s.goal, shape) < gap) {
          continue;
        }
        bool clear = true;
        for (const auto& other : s.obstacles) {
          if (polygon_distance(shape, other.shape) < gap) {
            clear = false;
            break;
          }
        }
        if (!clear) {
          continue;
        }
        s.obstacles.push_back(Obstacle{std::move(shape), std::nullopt});
        placed = true;
      }
      if (!placed) {
        throw ScenarioError("generate_world: could not place obstacle " + std::to_string(k + 1) +
                            " after " + std::to_string(kPlacementAttempts) + " attempts");
      }
    }
    if (validate_scenario(s).empty() && grid_reachable(s, s.delta / 2.0)) {
      return s;
    }
  }
  throw ScenarioError("generate_world: no solvable world found for seed " + std::to_string(seed));
}

}  // namespace nspmr
