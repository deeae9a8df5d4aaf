#include <doctest.h>

#include <cmath>

#include "nspmr/planner_bug.hpp"
#include "nspmr/sim.hpp"
#include "nspmr/world.hpp"

using namespace nspmr;

namespace {

Scenario unit_square_world() {
  Scenario s;
  s.bounds = {-5, -5, 5, 5};
  s.start = {0.5, -3};
  s.goal = {3, 3};
  s.delta = 0.4;  // clearance 0.1
  s.obstacles.push_back({{{0, 0}, {1, 0}, {1, 1}, {0, 1}}, std::nullopt});
  return s;
}

Scenario single_square(Polygon shape, Point2 goal = {6, 6}) {
  Scenario s;
  s.bounds = {-2, -2, 8, 8};
  s.start = {0, 0};
  s.goal = goal;
  s.obstacles.push_back({std::move(shape), std::nullopt});
  return s;
}

double outline_distance(Point2 p, const Polygon& poly) {
  double best = 1e300;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    best = std::min(best, point_segment_distance(p, poly[i], poly[(i + 1) % poly.size()]));
  }
  return best;
}

/// Points along the outline every `step` of arc length, vertices included.
std::vector<Point2> dense_samples(const Polygon& poly, double step) {
  std::vector<Point2> out;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point2 a = poly[i];
    const Point2 b = poly[(i + 1) % poly.size()];
    const double len = distance(a, b);
    const int n = static_cast<int>(std::ceil(len / step));
    for (int j = 0; j < n; ++j) {
      out.push_back(a + (b - a) * (static_cast<double>(j) / n));
    }
  }
  return out;
}

double dense_min_to(Point2 goal, const Polygon& poly, double step) {
  double best = 1e300;
  for (const auto& p : dense_samples(poly, step)) {
    best = std::min(best, distance(p, goal));
  }
  return best;
}

std::vector<Scenario> static_fixtures() {
  std::vector<Scenario> out;
  for (const auto& name : builtin_names()) {
    Scenario s = builtin_scenario(name);
    if (!s.is_dynamic()) {
      out.push_back(std::move(s));
    }
  }
  return out;
}

}  // namespace

TEST_CASE("bug clearance is a quarter robot length") {
  CHECK(bug_clearance(builtin_scenario("scenario1")) == doctest::Approx(0.125));
  CHECK(bug_clearance(unit_square_world()) == doctest::Approx(0.1));
}

TEST_CASE("follow_boundary: full loop round an offset unit square") {
  const Scenario s = unit_square_world();
  const Polygon outline = polygon_offset(s.obstacles[0].shape, 0.1);
  for (const auto dir : {WalkDirection::clockwise, WalkDirection::counterclockwise}) {
    const BoundaryWalk w = follow_boundary(s, 0, {0.5, -0.1}, dir, [](Point2) { return false; });
    CHECK_FALSE(w.stopped);
    CHECK(w.polyline.front() == Point2{0.5, -0.1});
    CHECK(distance(w.polyline.back(), w.polyline.front()) < 1e-9);
    CHECK(path_length(w.polyline) == doctest::Approx(4.8).epsilon(1e-12));
    for (std::size_t i = 0; i < w.polyline.size(); ++i) {
      CHECK(outline_distance(w.polyline[i], outline) < 1e-9);
      if (i > 0) {
        CHECK(distance(w.polyline[i - 1], w.polyline[i]) <= s.delta / 2 + 1e-9);
      }
    }
    // Clockwise heads west along the bottom edge first.
    CHECK((w.polyline[1].x < 0.5) == (dir == WalkDirection::clockwise));
  }
}

TEST_CASE("follow_boundary stops at a precomputed closest point") {
  const Scenario s = unit_square_world();
  const Polygon outline = polygon_offset(s.obstacles[0].shape, 0.1);
  Point2 want;
  double best = 1e300;
  for (const auto& p : dense_samples(outline, s.delta / 20)) {
    if (distance(p, s.goal) < best) {
      best = distance(p, s.goal);
      want = p;
    }
  }
  const BoundaryWalk w = follow_boundary(s, 0, {0.5, -0.1}, WalkDirection::counterclockwise,
                                         [&](Point2 p) { return distance(p, want) < 1e-9; });
  CHECK(w.stopped);
  CHECK(distance(w.polyline.back(), want) < 1e-9);
  CHECK(want == Point2{1.1, 1.1});
}

TEST_CASE("follow_boundary edge cases") {
  const Scenario s = unit_square_world();
  const BoundaryWalk w =
      follow_boundary(s, 0, {0.5, -0.1}, WalkDirection::clockwise, [](Point2) { return true; });
  CHECK(w.stopped);
  CHECK(w.polyline.size() == 1);
  CHECK(path_length(w.polyline) == 0.0);
  CHECK_THROWS_AS(
      follow_boundary(s, 0, {0.5, -0.5}, WalkDirection::clockwise, [](Point2) { return false; }),
      GeometryError);
  const Point2 mark{1.1, 0.37};
  const Point2 marks[] = {mark};
  const BoundaryWalk m = follow_boundary(s, 0, {0.5, -0.1}, WalkDirection::counterclockwise,
                                         [&](Point2 p) { return p == mark; }, marks);
  CHECK(m.stopped);
  CHECK(m.polyline.back() == mark);
}

TEST_CASE("empty world: both bug planners drive straight to the goal") {
  Scenario s = single_square({{6, 0}, {7, 0}, {7, 1}, {6, 1}}, {5, 5});
  s.obstacles.clear();
  const RunOutput n = run(s, PlannerKind::nspmr);
  for (const auto p : {PlannerKind::bug1, PlannerKind::bug2}) {
    CAPTURE(to_string(p));
    const RunOutput out = run(s, p);
    CHECK(out.result.outcome == Outcome::goal_reached);
    CHECK(out.result.length == doctest::Approx(std::sqrt(50.0)).epsilon(1e-12));
    CHECK(out.result.length == doctest::Approx(n.result.length).epsilon(1e-12));
    CHECK(out.trajectory.waypoints.back() == s.goal);
    for (const auto& w : out.trajectory.waypoints) {
      CHECK(point_segment_distance(w, s.start, s.goal) < 1e-9);
    }
  }
}

TEST_CASE("bug1 on a square across the line leaves at the closest outline point") {
  const Scenario s = single_square({{2.5, 2.5}, {3.5, 2.5}, {3.5, 3.5}, {2.5, 3.5}});
  const BugRun r = bug1_run(s, 10000);
  CHECK(r.outcome == Outcome::goal_reached);
  REQUIRE(r.legs.size() == 1);
  const Polygon outline = polygon_offset(s.obstacles[0].shape, bug_clearance(s));
  const double dense = dense_min_to(s.goal, outline, s.delta / 20);
  CHECK(distance(r.legs[0].leave, s.goal) <= dense + 1e-9);
  CHECK(distance(r.legs[0].leave, s.goal) >= dense - s.delta / 20);
  // Full loop plus the way back: the run is longer than a loop.
  CHECK(path_length(r.trajectory) > path_length(outline) + distance(s.start, r.legs[0].hit));
}

TEST_CASE("bug2 on a square straddling the M-line leaves at the far crossing") {
  const Scenario s = single_square({{2.2, 2.6}, {3.8, 2.6}, {3.8, 3.4}, {2.2, 3.4}});
  const BugRun r = bug2_run(s, 10000);
  CHECK(r.outcome == Outcome::goal_reached);
  REQUIRE(r.legs.size() == 1);
  const Polygon outline = polygon_offset(s.obstacles[0].shape, bug_clearance(s));
  std::vector<Point2> crossings;
  for (std::size_t i = 0; i < outline.size(); ++i) {
    const auto x = segment_intersection(s.start, s.goal, outline[i], outline[(i + 1) % 4]);
    if (x.kind == SegmentIntersection::Kind::point) {
      crossings.push_back(x.point);
    }
  }
  REQUIRE(crossings.size() == 2);
  const Point2 far = distance(crossings[0], s.start) > distance(crossings[1], s.start)
                         ? crossings[0]
                         : crossings[1];
  const Point2 near = far == crossings[0] ? crossings[1] : crossings[0];
  CHECK(distance(r.legs[0].hit, near) < 1e-9);
  CHECK(distance(r.legs[0].leave, far) < 1e-9);
}

TEST_CASE("leave-point invariants on every static fixture") {
  for (const Scenario& s : static_fixtures()) {
    CAPTURE(s.name);
    const BugRun b2 = bug2_run(s, 100000);
    CHECK(b2.outcome == Outcome::goal_reached);
    for (const auto& leg : b2.legs) {
      CHECK(point_segment_distance(leg.leave, s.start, s.goal) < 1e-9);
      CHECK(distance(leg.leave, s.goal) < distance(leg.hit, s.goal));
    }
    const BugRun b1 = bug1_run(s, 100000);
    CHECK(b1.outcome == Outcome::goal_reached);
    for (const auto& leg : b1.legs) {
      const Polygon outline = polygon_offset(s.obstacles[leg.obstacle].shape, bug_clearance(s));
      CHECK(distance(leg.leave, s.goal) <= dense_min_to(s.goal, outline, s.delta / 20) + 1e-9);
      CHECK(distance(leg.leave, s.goal) < distance(leg.hit, s.goal));
    }
  }
}

TEST_CASE("bug trajectories never touch an obstacle") {
  for (const Scenario& s : static_fixtures()) {
    CAPTURE(s.name);
    for (const auto& r : {bug1_run(s, 100000), bug2_run(s, 100000)}) {
      CHECK(audit_collisions(r.trajectory, s).empty());
      for (std::size_t i = 1; i < r.trajectory.size(); ++i) {
        CHECK(r.trajectory.timestamps[i] > r.trajectory.timestamps[i - 1]);
        CHECK(distance(r.trajectory.waypoints[i - 1], r.trajectory.waypoints[i]) <=
              s.delta / 2 + 1e-9);
      }
    }
  }
}

TEST_CASE("bug planners reject dynamic and invalid scenarios") {
  const Scenario dyn = builtin_scenario("dynamic_crossing");
  CHECK_THROWS_AS(bug1_run(dyn, 1000), ScenarioError);
  CHECK_THROWS_AS(bug2_run(dyn, 1000), ScenarioError);
  Scenario bad = builtin_scenario("scenario1");
  bad.goal = {100, 100};
  CHECK_THROWS_AS(bug1_run(bad, 1000), ScenarioError);
}

TEST_CASE("bug planners stop at the iteration budget") {
  const Scenario s = builtin_scenario("scenario1");
  const BugRun r = bug1_run(s, 20);
  CHECK(r.outcome == Outcome::iteration_limit);
  CHECK(r.iterations <= 20);
}

TEST_CASE("the opposite walking side is available") {
  const Scenario s = builtin_scenario("scenario1");
  BugOptions other;
  other.walk = WalkDirection::counterclockwise;
  const BugRun a = bug2_run(s, 100000);
  const BugRun b = bug2_run(s, 100000, other);
  CHECK(a.outcome == Outcome::goal_reached);
  CHECK(b.outcome == Outcome::goal_reached);
  CHECK(path_length(a.trajectory) < path_length(b.trajectory));
}
