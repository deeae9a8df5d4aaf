#include "nspmr/planner_nspmr.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nspmr {

CellId quantize(Point2 pos, double delta) {
  const double h = delta / 2.0;
  return {static_cast<std::int64_t>(std::llround(pos.x / h)),
          static_cast<std::int64_t>(std::llround(pos.y / h))};
}

NspmrState NspmrState::at(Point2 start) {
  NspmrState s;
  s.pos = start;
  s.trail.push_back(start);
  return s;
}

bool NspmrState::was_used(CellId cell, int k) const {
  const auto it = used.find(cell);
  return it != used.end() && (it->second & (1U << k)) != 0;
}

CompassAngle desired_angle(Point2 pos, Point2 goal) {
  const Point2 v = goal - pos;
  if (norm(v) <= kGeomEps) {
    throw GeometryError("desired_angle: position coincides with the goal");
  }
  return math_to_compass(std::atan2(v.y, v.x) * 180.0 / std::numbers::pi);
}

Point2 apply_move(Point2 pos, CompassAngle dir, double delta) {
  static constexpr int kDx[kDirectionCount] = {0, 1, 1, 1, 0, -1, -1, -1};
  static constexpr int kDy[kDirectionCount] = {1, 1, 0, -1, -1, -1, 0, 1};
  const int k = direction_index(dir);
  const double h = delta / 2.0;
  return {pos.x + kDx[k] * h, pos.y + kDy[k] * h};
}

std::vector<CompassAngle> filter_candidates(const SensorScan& scan, const NspmrState& state,
                                            double delta, const NspmrRules& rules) {
  std::vector<CompassAngle> out;
  const CellId here = quantize(state.pos, delta);
  for (int k = 0; k < kDirectionCount; ++k) {
    if (!scan[k].free) {
      continue;
    }
    const CompassAngle dir = direction_angle(k);
    if (rules.no_reversal && state.prev_dir &&
        std::abs(circular_diff(dir, *state.prev_dir) - 180.0) < 1e-9) {
      continue;
    }
    if (rules.used_directions && state.was_used(here, k)) {
      continue;
    }
    if (rules.backtracking && state.dead.contains(quantize(apply_move(state.pos, dir, delta), delta))) {
      continue;
    }
    out.push_back(dir);
  }
  return out;
}

CompassAngle select_direction(std::span<const CompassAngle> candidates, CompassAngle theta_d,
                              const SensorScan& scan) {
  if (candidates.empty()) {
    throw std::invalid_argument("select_direction: no candidate directions");
  }
  // Exact ties only arise when theta_d sits on a lattice heading or half-way between two.
  constexpr double kTieDeg = 1e-9;
  constexpr double kTieDist = 1e-9;
  CompassAngle best = candidates.front();
  double best_diff = circular_diff(best, theta_d);
  for (const CompassAngle c : candidates.subspan(1)) {
    const double diff = circular_diff(c, theta_d);
    if (diff < best_diff - kTieDeg) {
      best = c;
      best_diff = diff;
      continue;
    }
    if (diff > best_diff + kTieDeg) {
      continue;
    }
    const double d_best = scan[direction_index(best)].dist;
    const double d_c = scan[direction_index(c)].dist;
    if (d_c > d_best + kTieDist ||
        (std::abs(d_c - d_best) <= kTieDist && direction_index(c) < direction_index(best))) {
      best = c;
      best_diff = diff;
    }
  }
  return best;
}

StepEvent nspmr_step(NspmrState& state, const Scenario& world, const NspmrRules& rules) {
  const double delta = world.delta;
  // Strictly inside the radius: a lattice robot one step away keeps going to the goal.
  if (distance(state.pos, world.goal) < delta / 2.0 - kGeomEps) {
    return {StepKind::goal_reached, std::nullopt, state.pos};
  }

  const SensorScan sc = scan(state.pos, world, world.sensor_range, delta);
  const auto candidates = filter_candidates(sc, state, delta, rules);
  const CellId here = quantize(state.pos, delta);

  if (!candidates.empty()) {
    const CompassAngle dir = select_direction(candidates, desired_angle(state.pos, world.goal), sc);
    state.used[here] |= static_cast<DirectionSet>(1U << direction_index(dir));
    state.pos = apply_move(state.pos, dir, delta);
    state.trail.push_back(state.pos);
    state.prev_dir = dir;
    ++state.iteration;
    return {StepKind::moved, dir, state.pos};
  }

  if (!rules.backtracking || state.trail.size() < 2) {
    return {StepKind::stuck, std::nullopt, state.pos};
  }

  if (here != quantize(world.goal, delta)) {
    state.dead.insert(here);
  }
  state.trail.pop_back();
  const Point2 back = state.trail.back();
  const CompassAngle raw = desired_angle(state.pos, back);
  const CompassAngle dir = direction_angle(static_cast<int>(std::lround(raw.degrees() / 45.0)) % 8);
  state.used[here] |= static_cast<DirectionSet>(1U << direction_index(dir));
  state.pos = back;
  state.prev_dir = dir;
  ++state.iteration;
  return {StepKind::backtracked, dir, state.pos};
}

}  // namespace nspmr
