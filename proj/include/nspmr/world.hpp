#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "nspmr/geometry.hpp"

namespace nspmr {

/// Parse or validation failure. `problems` lists every issue found, one per entry.
class ScenarioError : public std::runtime_error {
 public:
  ScenarioError(const std::string& what, std::vector<std::string> problems = {})
      : std::runtime_error(what), problems_(std::move(problems)) {}

  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

struct Bounds {
  double xmin = 0.0;
  double ymin = 0.0;
  double xmax = 0.0;
  double ymax = 0.0;

  bool contains(Point2 p) const {
    return p.x > xmin && p.x < xmax && p.y > ymin && p.y < ymax;
  }
  Polygon polygon() const { return {{xmin, ymin}, {xmax, ymin}, {xmax, ymax}, {xmin, ymax}}; }

  friend bool operator==(const Bounds&, const Bounds&) = default;
};

struct Velocity {
  double vx = 0.0;
  double vy = 0.0;

  friend bool operator==(const Velocity&, const Velocity&) = default;
};

struct Obstacle {
  Polygon shape;
  std::optional<Velocity> velocity;  // absent = static

  bool is_dynamic() const { return velocity.has_value(); }

  friend bool operator==(const Obstacle&, const Obstacle&) = default;
};

// Defaults used when a scenario file omits the robot parameters.
inline constexpr double kDefaultDelta = 0.5;        // robot length, m
inline constexpr double kDefaultSensorRange = 1.0;  // m
inline constexpr double kDefaultSpeed = 10.0;       // m/s

struct Scenario {
  std::string name = "scenario";
  Bounds bounds;
  Point2 start;
  Point2 goal;
  std::vector<Obstacle> obstacles;
  double delta = kDefaultDelta;
  double sensor_range = kDefaultSensorRange;
  double speed = kDefaultSpeed;

  bool is_dynamic() const;
  /// Current obstacle outlines, in obstacle order.
  std::vector<Polygon> shapes() const;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Every violated scenario invariant, as readable messages. Empty means valid.
/// Reachability of the goal is not checked.
std::vector<std::string> validate_scenario(const Scenario& s);

/// Parses the JSON scenario format. Clockwise polygons are reversed. Throws
/// ScenarioError on syntax errors (with line/column), unknown or mistyped fields,
/// and failed validation.
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::filesystem::path& path);

/// Inverse of parse_scenario for any valid scenario.
std::string serialize_scenario(const Scenario& s);

// Built-in fixtures ---------------------------------------------------------

/// Names accepted by builtin_scenario, in a stable order.
const std::vector<std::string>& builtin_names();
/// Throws ScenarioError for an unknown name.
Scenario builtin_scenario(std::string_view name);

// Dynamics -------------------------------------------------------------------

/// Advances moving obstacles by v*dt. An obstacle that would leave the bounds is
/// pushed back inside and its velocity flips on the offending axis.
Scenario step_dynamics(const Scenario& s, double dt);

// Random worlds -----------------------------------------------------------------

enum class ShapeKind { rect, l_shape, triangle };

struct WorldGenSpec {
  int count = 10;
  double min_size = 1.0;
  double max_size = 4.0;
  std::set<ShapeKind> kinds{ShapeKind::rect, ShapeKind::l_shape, ShapeKind::triangle};
};

/// Deterministic seeded world on the default 25 x 25 m benchmark layout. Obstacles
/// are disjoint, keep 2*delta from each other, from the bounds and from start/goal,
/// and the goal is reachable on the delta/2 grid. Throws ScenarioError when
/// placement keeps failing.
Scenario generate_world(std::uint64_t seed, const WorldGenSpec& spec);

/// 8-connected reachability from start to goal on a grid of the given resolution
/// anchored at the start. Nodes and grid edges must stay off every obstacle.
bool grid_reachable(const Scenario& s, double resolution);

}  // namespace nspmr
