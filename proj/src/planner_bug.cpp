#include "nspmr/planner_bug.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

namespace nspmr {

double bug_clearance(const Scenario& s) { return s.delta / 4.0; }

namespace {

// Entry points come from segment intersections and may sit a few ulps off the outline.
constexpr double kOnOutline = 1e-7;

struct OutlineLoop {
  std::vector<Point2> nodes;  // entry, outline vertices in walking order, entry again
  std::vector<double> cum;    // arc length at each node
  double perimeter = 0.0;
};

OutlineLoop make_loop(const Polygon& outline, Point2 entry, WalkDirection dir) {
  const std::size_t n = outline.size();
  std::size_t edge = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const double d = point_segment_distance(entry, outline[i], outline[(i + 1) % n]);
    if (d < best) {
      best = d;
      edge = i;
    }
  }
  if (best > kOnOutline) {
    throw GeometryError("follow_boundary: entry point is not on the obstacle outline");
  }

  std::vector<Point2> raw{entry};
  if (dir == WalkDirection::counterclockwise) {
    for (std::size_t j = 1; j <= n; ++j) {
      raw.push_back(outline[(edge + j) % n]);
    }
  } else {
    for (std::size_t j = 0; j < n; ++j) {
      raw.push_back(outline[(edge + n - j) % n]);
    }
  }
  raw.push_back(entry);

  OutlineLoop loop;
  for (const auto& p : raw) {
    if (!loop.nodes.empty() && distance(loop.nodes.back(), p) <= kGeomEps) {
      continue;
    }
    loop.cum.push_back(loop.nodes.empty() ? 0.0 : loop.cum.back() + distance(loop.nodes.back(), p));
    loop.nodes.push_back(p);
  }
  // Entry on a vertex: the closing duplicate got dropped, close the loop explicitly.
  if (distance(loop.nodes.back(), entry) > kGeomEps) {
    loop.cum.push_back(loop.cum.back() + distance(loop.nodes.back(), entry));
    loop.nodes.push_back(entry);
  }
  loop.nodes.back() = entry;
  loop.perimeter = loop.cum.back();
  return loop;
}

Point2 point_at(const OutlineLoop& loop, double s) {
  for (std::size_t j = 0; j + 1 < loop.nodes.size(); ++j) {
    if (s <= loop.cum[j + 1]) {
      const double len = loop.cum[j + 1] - loop.cum[j];
      const double t = len > 0.0 ? (s - loop.cum[j]) / len : 0.0;
      return loop.nodes[j] + (loop.nodes[j + 1] - loop.nodes[j]) * t;
    }
  }
  return loop.nodes.back();
}

std::optional<double> arc_of(const OutlineLoop& loop, Point2 p) {
  double best = std::numeric_limits<double>::infinity();
  double arc = 0.0;
  for (std::size_t j = 0; j + 1 < loop.nodes.size(); ++j) {
    const double d = point_segment_distance(p, loop.nodes[j], loop.nodes[j + 1]);
    if (d < best) {
      best = d;
      arc = loop.cum[j] + distance(loop.nodes[j], p);
    }
  }
  if (best > kOnOutline) {
    return std::nullopt;
  }
  return arc;
}

Polygon outline_of(const Scenario& s, std::size_t k) {
  return polygon_offset(s.obstacles.at(k).shape, bug_clearance(s));
}

/// Closest outline point to `target`, exact over every edge.
Point2 closest_on_outline(const Polygon& outline, Point2 target) {
  Point2 best = outline.front();
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < outline.size(); ++i) {
    const Point2 c = closest_point_on_segment(target, outline[i], outline[(i + 1) % outline.size()]);
    const double d = distance(c, target);
    if (d < best_d - kGeomEps) {
      best_d = d;
      best = c;
    }
  }
  return best;
}

struct Blocked {
  std::size_t obstacle;
  Point2 at;
};

/// First place where the segment from -> to enters the interior of an outline.
std::optional<Blocked> first_entry(Point2 from, Point2 to, const std::vector<Polygon>& outlines) {
  const double len = distance(from, to);
  if (len <= kGeomEps) {
    return std::nullopt;
  }
  std::optional<Blocked> found;
  double found_t = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < outlines.size(); ++k) {
    const Polygon& poly = outlines[k];
    std::vector<double> ts{0.0, 1.0};
    for (std::size_t i = 0; i < poly.size(); ++i) {
      const auto hit = segment_intersection(from, to, poly[i], poly[(i + 1) % poly.size()]);
      if (hit.kind == SegmentIntersection::Kind::none) {
        continue;
      }
      ts.push_back(distance(from, hit.point) / len);
      if (hit.kind == SegmentIntersection::Kind::collinear) {
        ts.push_back(distance(from, hit.overlap_end) / len);
      }
    }
    std::sort(ts.begin(), ts.end());
    for (std::size_t j = 0; j + 1 < ts.size(); ++j) {
      if (ts[j + 1] - ts[j] <= 1e-12 || ts[j] >= found_t) {
        continue;
      }
      const Point2 mid = from + (to - from) * (0.5 * (ts[j] + ts[j + 1]));
      if (point_in_polygon(mid, poly) == Containment::inside) {
        found_t = ts[j];
        found = Blocked{k, from + (to - from) * ts[j]};
        break;
      }
    }
  }
  return found;
}

bool heads_inside(Point2 p, Point2 goal, const Polygon& outline) {
  const double d = distance(p, goal);
  if (d <= kGeomEps) {
    return false;
  }
  const Point2 probe = p + (goal - p) * (std::min(1e-6, d / 2.0) / d);
  return point_in_polygon(probe, outline) == Containment::inside;
}

void check_runnable(const Scenario& s) {
  if (const auto v = validate_scenario(s); !v.empty()) {
    throw ScenarioError("bug planner: invalid scenario: " + v.front(), v);
  }
  if (s.is_dynamic()) {
    throw ScenarioError("bug planners only support static scenarios");
  }
}

class BugRecorder {
 public:
  BugRecorder(const Scenario& s, std::size_t max_iters)
      : dt_((s.delta / 2.0) / s.speed), max_iters_(max_iters) {
    run_.trajectory.push(s.start, EventKind::start, std::nullopt, 0.0);
  }

  /// False once the iteration budget is spent.
  bool push(Point2 p, EventKind e) {
    if (run_.iterations >= max_iters_) {
      return false;
    }
    const Point2 prev = run_.trajectory.waypoints.back();
    if (distance(prev, p) <= kGeomEps) {
      return true;
    }
    ++run_.iterations;
    const Point2 v = p - prev;
    const double heading = math_to_compass(std::atan2(v.y, v.x) * 180.0 / std::numbers::pi).degrees();
    run_.trajectory.push(p, e, heading, static_cast<double>(run_.iterations) * dt_);
    return true;
  }

  Point2 pos() const { return run_.trajectory.waypoints.back(); }
  BugRun& run() { return run_; }

 private:
  BugRun run_;
  double dt_;
  std::size_t max_iters_;
};

enum class Advance { moved, arrived, blocked, budget };

/// Straight motion toward the goal in delta/2 steps until arrival or contact.
Advance advance_to_goal(BugRecorder& rec, const Scenario& s, const std::vector<Polygon>& outlines,
                        std::optional<Blocked>& blocked) {
  const double step = s.delta / 2.0;
  for (;;) {
    const Point2 pos = rec.pos();
    const double remaining = distance(pos, s.goal);
    if (remaining <= kGeomEps) {
      return Advance::arrived;
    }
    const Point2 next = remaining <= step ? s.goal : pos + (s.goal - pos) * (step / remaining);
    if (auto hit = first_entry(pos, next, outlines)) {
      if (!rec.push(hit->at, EventKind::moved)) {
        return Advance::budget;
      }
      blocked = hit;
      return Advance::blocked;
    }
    if (!rec.push(next, EventKind::moved)) {
      return Advance::budget;
    }
  }
}

/// Appends a walk to the trajectory; false if the budget ran out part-way.
bool record_walk(BugRecorder& rec, const BoundaryWalk& walk) {
  for (std::size_t i = 1; i < walk.polyline.size(); ++i) {
    if (!rec.push(walk.polyline[i], EventKind::boundary)) {
      return false;
    }
  }
  return true;
}

}  // namespace

BoundaryWalk follow_boundary(const Scenario& world, std::size_t obstacle, Point2 entry,
                             WalkDirection dir, const StopPredicate& stop,
                             std::span<const Point2> marks) {
  const Polygon outline = outline_of(world, obstacle);
  const OutlineLoop loop = make_loop(outline, entry, dir);

  BoundaryWalk walk;
  walk.obstacle = obstacle;
  walk.entry = entry;
  walk.direction = dir;
  walk.polyline.push_back(entry);
  if (stop(entry)) {
    walk.stopped = true;
    return walk;
  }

  struct Sample {
    double s;
    Point2 p;
  };
  std::vector<Sample> samples;
  const double step = world.delta / 2.0;
  for (double s = step; s < loop.perimeter - kGeomEps; s += step) {
    samples.push_back({s, point_at(loop, s)});
  }
  for (std::size_t j = 1; j + 1 < loop.nodes.size(); ++j) {
    samples.push_back({loop.cum[j], loop.nodes[j]});
  }
  for (const auto& m : marks) {
    if (const auto s = arc_of(loop, m); s && *s > kGeomEps && *s < loop.perimeter - kGeomEps) {
      samples.push_back({*s, m});
    }
  }
  std::stable_sort(samples.begin(), samples.end(),
                   [](const Sample& a, const Sample& b) { return a.s < b.s; });

  double last_s = 0.0;
  for (const auto& sample : samples) {
    if (sample.s - last_s <= kGeomEps) {
      // Same spot as the previous sample; a mark or vertex still gets the stop test.
      if (stop(sample.p)) {
        walk.polyline.back() = sample.p;
        walk.stopped = true;
        return walk;
      }
      continue;
    }
    walk.polyline.push_back(sample.p);
    last_s = sample.s;
    if (stop(sample.p)) {
      walk.stopped = true;
      return walk;
    }
  }
  walk.polyline.push_back(entry);
  return walk;
}

BugRun bug1_run(const Scenario& s, std::size_t max_iters, const BugOptions& options) {
  check_runnable(s);
  std::vector<Polygon> outlines;
  for (std::size_t k = 0; k < s.obstacles.size(); ++k) {
    outlines.push_back(outline_of(s, k));
  }

  BugRecorder rec(s, max_iters);
  for (;;) {
    std::optional<Blocked> blocked;
    const Advance a = advance_to_goal(rec, s, outlines, blocked);
    if (a == Advance::arrived) {
      rec.run().outcome = Outcome::goal_reached;
      return std::move(rec.run());
    }
    if (a == Advance::budget) {
      rec.run().outcome = Outcome::iteration_limit;
      return std::move(rec.run());
    }

    const std::size_t k = blocked->obstacle;
    const Point2 hit = rec.pos();
    const Point2 leave = closest_on_outline(outlines[k], s.goal);
    const Point2 marks[] = {leave};

    // Full circumnavigation, remembering the closest point to the goal.
    const BoundaryWalk loop_walk =
        follow_boundary(s, k, hit, options.walk, [](Point2) { return false; }, marks);
    if (!record_walk(rec, loop_walk)) {
      rec.run().outcome = Outcome::iteration_limit;
      return std::move(rec.run());
    }
    if (distance(leave, s.goal) >= distance(hit, s.goal) - kGeomEps) {
      rec.run().outcome = Outcome::unreachable;
      return std::move(rec.run());
    }

    // Back to the leave point along the shorter arc.
    const OutlineLoop probe = make_loop(outlines[k], hit, options.walk);
    const double arc = arc_of(probe, leave).value_or(0.0);
    const WalkDirection back_dir =
        arc <= probe.perimeter / 2.0
            ? options.walk
            : (options.walk == WalkDirection::clockwise ? WalkDirection::counterclockwise
                                                        : WalkDirection::clockwise);
    const BoundaryWalk back = follow_boundary(
        s, k, hit, back_dir, [&](Point2 p) { return distance(p, leave) <= kGeomEps; }, marks);
    if (!record_walk(rec, back)) {
      rec.run().outcome = Outcome::iteration_limit;
      return std::move(rec.run());
    }
    rec.run().legs.push_back({k, hit, rec.pos()});

    if (heads_inside(rec.pos(), s.goal, outlines[k])) {
      rec.run().outcome = Outcome::unreachable;
      return std::move(rec.run());
    }
  }
}

BugRun bug2_run(const Scenario& s, std::size_t max_iters, const BugOptions& options) {
  check_runnable(s);
  std::vector<Polygon> outlines;
  for (std::size_t k = 0; k < s.obstacles.size(); ++k) {
    outlines.push_back(outline_of(s, k));
  }
  const Point2 m_from = s.start;
  const Point2 m_to = s.goal;
  auto on_mline = [&](Point2 p) { return point_segment_distance(p, m_from, m_to) <= kOnOutline; };

  BugRecorder rec(s, max_iters);
  for (;;) {
    std::optional<Blocked> blocked;
    const Advance a = advance_to_goal(rec, s, outlines, blocked);
    if (a == Advance::arrived) {
      rec.run().outcome = Outcome::goal_reached;
      return std::move(rec.run());
    }
    if (a == Advance::budget) {
      rec.run().outcome = Outcome::iteration_limit;
      return std::move(rec.run());
    }

    const std::size_t k = blocked->obstacle;
    const Point2 hit = rec.pos();
    const double hit_dist = distance(hit, s.goal);

    // Every place where the outline meets the M-line is a potential leave point.
    std::vector<Point2> crossings;
    const Polygon& outline = outlines[k];
    if (distance(m_from, m_to) > kGeomEps) {
      for (std::size_t i = 0; i < outline.size(); ++i) {
        const auto x =
            segment_intersection(m_from, m_to, outline[i], outline[(i + 1) % outline.size()]);
        if (x.kind == SegmentIntersection::Kind::none) {
          continue;
        }
        crossings.push_back(x.point);
        if (x.kind == SegmentIntersection::Kind::collinear) {
          crossings.push_back(x.overlap_end);
        }
      }
    }

    auto leave_here = [&](Point2 p) {
      if (!on_mline(p) || heads_inside(p, s.goal, outline)) {
        return false;
      }
      if (options.relaxed_leave) {
        return distance(p, hit) > s.delta / 2.0;
      }
      return distance(p, s.goal) < hit_dist - kGeomEps;
    };

    const BoundaryWalk walk = follow_boundary(s, k, hit, options.walk, leave_here, crossings);
    if (!record_walk(rec, walk)) {
      rec.run().outcome = Outcome::iteration_limit;
      return std::move(rec.run());
    }
    if (!walk.stopped) {
      rec.run().outcome = Outcome::unreachable;
      return std::move(rec.run());
    }
    rec.run().legs.push_back({k, hit, rec.pos()});
  }
}

}  // namespace nspmr
