#pragma once

// Simulation engine: drives a planner tick by tick, advances moving obstacles
// between ticks, audits every move for collisions and computes run metrics.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "nspmr/planner_bug.hpp"
#include "nspmr/planner_nspmr.hpp"
#include "nspmr/trajectory.hpp"
#include "nspmr/world.hpp"

namespace nspmr {

enum class PlannerKind { nspmr, bug1, bug2 };

std::string_view to_string(PlannerKind p);
std::optional<PlannerKind> planner_from_string(std::string_view s);

/// A move that crosses an obstacle. Never expected; signals a simulator bug.
class CollisionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct RunResult {
  Outcome outcome = Outcome::iteration_limit;
  double length = 0.0;       // m
  double travel_time = 0.0;  // s, length / speed
  std::size_t iterations = 0;
  std::size_t max_departures_per_cell = 0;
  std::size_t backtrack_count = 0;
};

struct RunOutput {
  Trajectory trajectory;
  RunResult result;
};

struct RunOptions {
  /// 0 selects the default budget: 10x the termination ceiling.
  std::size_t max_iters = 0;
  NspmrRules rules;
  BugOptions bug;
};

/// Seconds per tick: the robot covers one delta/2 step per tick at its speed.
double tick_seconds(const Scenario& s);

/// Lattice nodes inside the bounds at spacing delta/2.
std::size_t lattice_cells(const Scenario& s);
/// Upper bound on NSPMR iterations: 8 departures per lattice cell.
std::size_t termination_ceiling(const Scenario& s);

/// Runs one planner on a scenario. Deterministic. Throws ScenarioError for invalid
/// scenarios (and for Bug planners on dynamic ones), CollisionError if a move ever
/// intersects an obstacle.
RunOutput run(const Scenario& s, PlannerKind planner, const RunOptions& options = {});

/// 8-connected shortest path on the free-space grid at the given resolution,
/// anchored at the start (diagonals cost resolution*sqrt(2)). Uses the obstacle
/// poses at t = 0. Empty if the goal cannot be reached on that grid.
std::optional<double> grid_oracle(const Scenario& s, double resolution);

/// Checks every trajectory segment against the obstacles as they stood at the
/// segment's start tick, and each waypoint against its own tick. Messages name
/// the obstacle (OB1, OB2, ...). Empty = collision-free.
std::vector<std::string> audit_collisions(const Trajectory& t, const Scenario& s);

/// Largest number of moved events leaving a single delta/2 lattice cell.
std::size_t max_departures_per_cell(const Trajectory& t, double delta);

}  // namespace nspmr
