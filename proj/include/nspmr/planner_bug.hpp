#pragma once

// Bug1 / Bug2 reference planners. The robot is a point that moves straight at the
// goal and, when blocked, walks the obstacle outline offset by a clearance of
// delta/4.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "nspmr/geometry.hpp"
#include "nspmr/trajectory.hpp"
#include "nspmr/world.hpp"

namespace nspmr {

enum class WalkDirection { clockwise, counterclockwise };

/// Boundary clearance kept by both Bug planners.
double bug_clearance(const Scenario& s);

struct BoundaryWalk {
  std::size_t obstacle = 0;
  Point2 entry;
  WalkDirection direction = WalkDirection::clockwise;
  std::vector<Point2> polyline;  // starts at entry
  bool stopped = false;          // true: the stop predicate fired; false: full loop back to entry
};

using StopPredicate = std::function<bool(Point2)>;

/// Walks the offset outline of obstacle `obstacle` from `entry`. Emits a point every
/// delta/2 of arc length, at every outline vertex and at each of `marks` (points on
/// the outline the caller needs to land on exactly). Stops at the first emitted
/// point satisfying `stop`, or after one full loop. Throws GeometryError if entry is
/// not on the outline.
BoundaryWalk follow_boundary(const Scenario& world, std::size_t obstacle, Point2 entry,
                             WalkDirection dir, const StopPredicate& stop,
                             std::span<const Point2> marks = {});

struct BugOptions {
  // Clockwise traversal is the robot turning left at the hit point.
  WalkDirection walk = WalkDirection::clockwise;
  /// Bug2 only: leave at any M-line point other than the hit point, not just closer
  /// ones. Off by default; exists to reproduce the classic bad-leave-point loop.
  bool relaxed_leave = false;
};

struct BugLeg {
  std::size_t obstacle = 0;
  Point2 hit;
  Point2 leave;
};

struct BugRun {
  Trajectory trajectory;
  Outcome outcome = Outcome::iteration_limit;
  std::vector<BugLeg> legs;
  std::size_t iterations = 0;
};

/// Throws ScenarioError for invalid or dynamic scenarios.
BugRun bug1_run(const Scenario& s, std::size_t max_iters, const BugOptions& options = {});
BugRun bug2_run(const Scenario& s, std::size_t max_iters, const BugOptions& options = {});

}  // namespace nspmr
