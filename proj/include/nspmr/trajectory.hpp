#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "nspmr/geometry.hpp"

namespace nspmr {

/// How the robot got to a waypoint.
enum class EventKind { start, moved, backtracked, boundary };

std::string_view to_string(EventKind k);
std::optional<EventKind> event_from_string(std::string_view s);

enum class Outcome { goal_reached, stuck, iteration_limit, unreachable };

std::string_view to_string(Outcome o);

/// Waypoints P_0..P_k with one event, heading and timestamp per waypoint.
/// Index 0 is always the start with EventKind::start.
struct Trajectory {
  std::vector<Point2> waypoints;
  std::vector<EventKind> events;
  std::vector<std::optional<double>> directions;  // compass degrees of the move into the waypoint
  std::vector<double> timestamps;                 // seconds

  std::size_t size() const { return waypoints.size(); }
  void push(Point2 p, EventKind e, std::optional<double> dir, double t) {
    waypoints.push_back(p);
    events.push_back(e);
    directions.push_back(dir);
    timestamps.push_back(t);
  }

  friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

/// Sum of consecutive Euclidean distances.
double path_length(const Trajectory& t);
double path_length(const std::vector<Point2>& points);

}  // namespace nspmr
