#include "nspmr/sim.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <queue>
#include <sstream>
#include <unordered_map>

#include "free_grid.hpp"

namespace nspmr {

std::string_view to_string(EventKind k) {
  switch (k) {
    case EventKind::start: return "start";
    case EventKind::moved: return "moved";
    case EventKind::backtracked: return "backtracked";
    case EventKind::boundary: return "boundary";
  }
  return "?";
}

std::optional<EventKind> event_from_string(std::string_view s) {
  for (EventKind k :
       {EventKind::start, EventKind::moved, EventKind::backtracked, EventKind::boundary}) {
    if (to_string(k) == s) {
      return k;
    }
  }
  return std::nullopt;
}

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::goal_reached: return "goal_reached";
    case Outcome::stuck: return "stuck";
    case Outcome::iteration_limit: return "iteration_limit";
    case Outcome::unreachable: return "unreachable";
  }
  return "?";
}

std::string_view to_string(PlannerKind p) {
  switch (p) {
    case PlannerKind::nspmr: return "nspmr";
    case PlannerKind::bug1: return "bug1";
    case PlannerKind::bug2: return "bug2";
  }
  return "?";
}

std::optional<PlannerKind> planner_from_string(std::string_view s) {
  for (PlannerKind p : {PlannerKind::nspmr, PlannerKind::bug1, PlannerKind::bug2}) {
    if (to_string(p) == s) {
      return p;
    }
  }
  return std::nullopt;
}

double path_length(const std::vector<Point2>& points) {
  double total = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i) {
    total += distance(points[i - 1], points[i]);
  }
  return total;
}

double path_length(const Trajectory& t) { return path_length(t.waypoints); }

double tick_seconds(const Scenario& s) { return (s.delta / 2.0) / s.speed; }

std::size_t lattice_cells(const Scenario& s) {
  const double h = s.delta / 2.0;
  const auto nx = static_cast<std::size_t>(std::floor((s.bounds.xmax - s.bounds.xmin) / h)) + 1;
  const auto ny = static_cast<std::size_t>(std::floor((s.bounds.ymax - s.bounds.ymin) / h)) + 1;
  return nx * ny;
}

std::size_t termination_ceiling(const Scenario& s) { return 8 * lattice_cells(s); }

std::size_t max_departures_per_cell(const Trajectory& t, double delta) {
  std::unordered_map<CellId, std::size_t, CellIdHash> counts;
  std::size_t best = 0;
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (t.events[i] != EventKind::moved) {
      continue;
    }
    best = std::max(best, ++counts[quantize(t.waypoints[i - 1], delta)]);
  }
  return best;
}

namespace {

std::string format_time(double t) {
  std::ostringstream os;
  os.precision(6);
  os << std::fixed << t;
  return os.str();
}

/// Violations of a single move from a to b against one world pose.
void check_move(const Scenario& world, Point2 a, Point2 b, std::size_t index, double t,
                std::vector<std::string>& out) {
  for (std::size_t k = 0; k < world.obstacles.size(); ++k) {
    if (segment_touches_polygon(a, b, world.obstacles[k].shape)) {
      out.push_back("segment " + std::to_string(index) + "->" + std::to_string(index + 1) +
                    " touches OB" + std::to_string(k + 1) + " at t=" + format_time(t) + " s");
    }
  }
}

void check_point(const Scenario& world, Point2 p, std::size_t index, double t,
                 std::vector<std::string>& out) {
  for (std::size_t k = 0; k < world.obstacles.size(); ++k) {
    if (point_in_polygon(p, world.obstacles[k].shape) != Containment::outside) {
      out.push_back("waypoint " + std::to_string(index) + " is inside OB" + std::to_string(k + 1) +
                    " at t=" + format_time(t) + " s");
    }
  }
}

RunResult summarize(const Trajectory& t, const Scenario& s, Outcome outcome,
                    std::size_t iterations, bool lattice) {
  RunResult r;
  r.outcome = outcome;
  r.length = path_length(t);
  r.travel_time = r.length / s.speed;
  r.iterations = iterations;
  r.max_departures_per_cell = lattice ? max_departures_per_cell(t, s.delta) : 0;
  for (const auto e : t.events) {
    r.backtrack_count += (e == EventKind::backtracked) ? 1 : 0;
  }
  return r;
}

RunOutput run_nspmr(const Scenario& s, std::size_t max_iters, const NspmrRules& rules) {
  const double dt = tick_seconds(s);
  Scenario world = s;
  NspmrState state = NspmrState::at(s.start);
  Trajectory traj;
  traj.push(s.start, EventKind::start, std::nullopt, 0.0);

  Outcome outcome = Outcome::iteration_limit;
  for (;;) {
    if (state.iteration >= max_iters) {
      if (distance(state.pos, s.goal) < s.delta / 2.0 - kGeomEps) {
        outcome = Outcome::goal_reached;
      }
      break;
    }
    const Point2 before = state.pos;
    const StepEvent ev = nspmr_step(state, world, rules);
    if (ev.kind == StepKind::goal_reached) {
      outcome = Outcome::goal_reached;
      break;
    }
    if (ev.kind == StepKind::stuck) {
      outcome = Outcome::stuck;
      break;
    }
    const double t = static_cast<double>(state.iteration) * dt;
    std::vector<std::string> problems;
    check_move(world, before, ev.new_pos, traj.size() - 1, t - dt, problems);
    if (world.is_dynamic()) {
      world = step_dynamics(world, dt);
      check_point(world, ev.new_pos, traj.size(), t, problems);
    }
    if (!problems.empty()) {
      throw CollisionError("collision during NSPMR run on '" + s.name + "': " + problems.front());
    }
    traj.push(ev.new_pos,
              ev.kind == StepKind::moved ? EventKind::moved : EventKind::backtracked,
              ev.direction ? std::optional<double>(ev.direction->degrees()) : std::nullopt, t);
  }
  RunOutput out{std::move(traj), {}};
  out.result = summarize(out.trajectory, s, outcome, state.iteration, true);
  return out;
}

}  // namespace

RunOutput run(const Scenario& s, PlannerKind planner, const RunOptions& options) {
  if (const auto v = validate_scenario(s); !v.empty()) {
    throw ScenarioError("run: invalid scenario '" + s.name + "': " + v.front(), v);
  }
  const std::size_t max_iters =
      options.max_iters > 0 ? options.max_iters : 10 * termination_ceiling(s);

  if (planner == PlannerKind::nspmr) {
    return run_nspmr(s, max_iters, options.rules);
  }

  BugRun bug = planner == PlannerKind::bug1 ? bug1_run(s, max_iters, options.bug)
                                            : bug2_run(s, max_iters, options.bug);
  if (const auto problems = audit_collisions(bug.trajectory, s); !problems.empty()) {
    throw CollisionError("collision during " + std::string(to_string(planner)) + " run on '" +
                         s.name + "': " + problems.front());
  }
  RunOutput out{std::move(bug.trajectory), {}};
  out.result = summarize(out.trajectory, s, bug.outcome, bug.iterations, false);
  return out;
}

std::optional<double> grid_oracle(const Scenario& s, double resolution) {
  const detail::FreeGrid grid(s, resolution);
  if (!grid.start_node() || !grid.goal_node()) {
    return std::nullopt;
  }
  const double diag = resolution * std::numbers::sqrt2;
  std::vector<double> dist(grid.size(), std::numeric_limits<double>::infinity());
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> open;
  dist[*grid.start_node()] = 0.0;
  open.emplace(0.0, *grid.start_node());
  while (!open.empty()) {
    const auto [d, id] = open.top();
    open.pop();
    if (d > dist[id]) {
      continue;
    }
    if (id == *grid.goal_node()) {
      return d + grid.goal_tail();
    }
    const int ix = grid.ix_of(id);
    const int iy = grid.iy_of(id);
    for (const auto& [dx, dy] : detail::FreeGrid::kNeighbours) {
      const int jx = ix + dx;
      const int jy = iy + dy;
      if (!grid.in_range(jx, jy)) {
        continue;
      }
      const std::size_t jd = grid.index(jx, jy);
      const double nd = d + ((dx != 0 && dy != 0) ? diag : resolution);
      if (nd >= dist[jd] || !grid.edge_free(ix, iy, jx, jy)) {
        continue;
      }
      dist[jd] = nd;
      open.emplace(nd, jd);
    }
  }
  return std::nullopt;
}

std::vector<std::string> audit_collisions(const Trajectory& t, const Scenario& s) {
  std::vector<std::string> out;
  if (t.size() == 0) {
    return out;
  }
  const double dt = tick_seconds(s);
  Scenario world = s;
  long long world_tick = 0;
  auto world_at = [&](double time) -> const Scenario& {
    const long long tick = std::llround(time / dt);
    if (world.is_dynamic()) {
      while (world_tick < tick) {
        world = step_dynamics(world, dt);
        ++world_tick;
      }
    }
    return world;
  };
  for (std::size_t i = 0; i < t.size(); ++i) {
    const Scenario& w = world_at(t.timestamps[i]);
    check_point(w, t.waypoints[i], i, t.timestamps[i], out);
    if (i + 1 < t.size() && distance(t.waypoints[i], t.waypoints[i + 1]) > kGeomEps) {
      check_move(w, t.waypoints[i], t.waypoints[i + 1], i, t.timestamps[i], out);
    }
  }
  return out;
}

}  // namespace nspmr
