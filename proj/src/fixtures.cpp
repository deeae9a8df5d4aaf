#include "nspmr/world.hpp"

namespace nspmr {

namespace {

Polygon rect(double x0, double y0, double x1, double y1) {
  return {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
}

Obstacle fixed(Polygon shape) { return Obstacle{std::move(shape), std::nullopt}; }

Scenario scenario1() {
  Scenario s;
  s.name = "scenario1";
  s.bounds = {-5.0, -5.0, 30.0, 30.0};
  s.start = {0.0, 0.0};
  s.goal = {25.0, 25.0};
  s.obstacles = {
      fixed(rect(5.8, 1.0, 7.5, 9.8)),
      fixed(rect(1.0, 15.0, 13.5, 17.8)),
      fixed(rect(18.9, 12.0, 20.2, 22.0)),
  };
  return s;
}

// U-shaped cup opening towards the start, goal straight behind its base.
Scenario concave_trap() {
  Scenario s;
  s.name = "concave_trap";
  s.bounds = {-8.0, -3.0, 8.0, 16.0};
  s.start = {0.0, 0.0};
  s.goal = {0.0, 13.0};
  s.obstacles = {fixed({{-2.0, 3.0},
                        {-1.5, 3.0},
                        {-1.5, 7.7},
                        {1.5, 7.7},
                        {1.5, 3.0},
                        {2.0, 3.0},
                        {2.0, 8.2},
                        {-2.0, 8.2}})};
  return s;
}

// A corridor ending below a cross wall, goal straight behind the wall. Without
// memory the robot flips east/west forever under the wall.
Scenario corridor_loop() {
  Scenario s;
  s.name = "corridor_loop";
  s.bounds = {-7.0, -2.0, 7.0, 14.0};
  s.start = {0.0, 0.0};
  s.goal = {0.0, 12.0};
  s.obstacles = {
      fixed(rect(-2.0, 1.0, -1.5, 5.5)),
      fixed(rect(1.5, 1.0, 2.0, 5.5)),
      fixed(rect(-3.0, 7.2, 3.0, 7.7)),
  };
  return s;
}

// A narrow slot over a triangular block. Without memory the robot circles
// east, north-west, south through the same three lattice points.
Scenario triangle_loop() {
  Scenario s;
  s.name = "triangle_loop";
  s.bounds = {-5.0, -6.0, 5.0, 8.0};
  s.start = {0.0, -4.0};
  s.goal = {0.1, 6.0};
  s.obstacles = {
      fixed({{-1.5, 0.05},
             {-0.2, 0.05},
             {-0.2, 0.36},
             {0.2, 0.36},
             {0.2, 0.2},
             {1.5, 0.2},
             {1.5, 0.86},
             {-1.5, 0.86}}),
      fixed({{0.28, -0.05}, {1.5, -1.2}, {1.5, -0.05}}),
  };
  return s;
}

// Long walls with dead ends on the east side at different depths. Which side
// the robot picks at each wall depends on how far it can see.
Scenario office_like() {
  Scenario s;
  s.name = "office_like";
  s.bounds = {-12.0, -2.0, 30.0, 42.0};
  s.start = {10.0, 0.0};
  s.goal = {10.0, 40.0};
  s.obstacles = {
      fixed({{3.0, 8.2}, {24.0, 8.2}, {24.0, 4.0}, {24.5, 4.0}, {24.5, 8.7}, {3.0, 8.7}}),
      fixed(rect(0.0, 15.2, 9.8, 15.7)),
      fixed({{6.0, 25.2}, {14.0, 25.2}, {14.0, 22.0}, {14.5, 22.0}, {14.5, 25.7}, {6.0, 25.7}}),
  };
  return s;
}

Scenario dynamic_crossing() {
  Scenario s;
  s.name = "dynamic_crossing";
  s.bounds = {-3.0, -3.0, 23.0, 23.0};
  s.start = {0.0, 0.0};
  s.goal = {20.0, 20.0};
  s.obstacles = {
      fixed(rect(4.0, 6.0, 6.0, 8.0)),
      Obstacle{rect(9.0, 6.0, 11.0, 8.0), Velocity{-1.0, 1.0}},
  };
  return s;
}

}  // namespace

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names{"scenario1",     "concave_trap", "corridor_loop",
                                              "triangle_loop", "office_like",  "dynamic_crossing"};
  return names;
}

Scenario builtin_scenario(std::string_view name) {
  using Factory = Scenario (*)();
  static const std::pair<std::string_view, Factory> table[] = {
      {"scenario1", scenario1},         {"concave_trap", concave_trap},
      {"corridor_loop", corridor_loop}, {"triangle_loop", triangle_loop},
      {"office_like", office_like},     {"dynamic_crossing", dynamic_crossing},
  };
  for (const auto& [n, f] : table) {
    if (n == name) {
      Scenario s = f();
      for (auto& o : s.obstacles) {
        o.shape = make_ccw(o.shape);
      }
      return s;
    }
  }
  throw ScenarioError("unknown built-in scenario '" + std::string(name) + "'");
}

}  // namespace nspmr
