#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "nspmr/world.hpp"

using namespace nspmr;

namespace {

bool has_problem(const std::vector<std::string>& v, const std::string& needle) {
  return std::any_of(v.begin(), v.end(),
                     [&](const std::string& s) { return s.find(needle) != std::string::npos; });
}

std::vector<double> edge_lengths(const Polygon& p) {
  std::vector<double> out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    out.push_back(distance(p[i], p[(i + 1) % p.size()]));
  }
  return out;
}

double clearance(Point2 q, const Polygon& p) {
  if (point_in_polygon(q, p) != Containment::outside) {
    return 0.0;
  }
  double best = 1e300;
  for (std::size_t i = 0; i < p.size(); ++i) {
    best = std::min(best, point_segment_distance(q, p[i], p[(i + 1) % p.size()]));
  }
  return best;
}

constexpr const char* kMinimal = R"({
  "bounds": {"xmin": -1, "ymin": -1, "xmax": 10, "ymax": 10},
  "start": [0, 0],
  "goal": [5, 5]
})";

}  // namespace

TEST_CASE("scenario1 obstacle coordinates") {
  const Scenario s = builtin_scenario("scenario1");
  CHECK(validate_scenario(s).empty());
  CHECK(s.start == Point2{0, 0});
  CHECK(s.goal == Point2{25, 25});
  REQUIRE(s.obstacles.size() == 3);
  const std::vector<Polygon> table{
      {{5.8, 1}, {7.5, 1}, {7.5, 9.8}, {5.8, 9.8}},
      {{1, 15}, {13.5, 15}, {13.5, 17.8}, {1, 17.8}},
      {{18.9, 12}, {20.2, 12}, {20.2, 22}, {18.9, 22}},
  };
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(s.obstacles[i].shape == table[i]);
    CHECK_FALSE(s.obstacles[i].is_dynamic());
  }
  CHECK(s.delta == 0.5);
  CHECK(s.sensor_range == 1.0);
  CHECK(s.speed == 10.0);
}

TEST_CASE("every built-in fixture is valid and deterministic") {
  const auto& names = builtin_names();
  CHECK(names.size() == 6);
  for (const auto& name : names) {
    CAPTURE(name);
    const Scenario s = builtin_scenario(name);
    CHECK(s.name == name);
    CHECK(validate_scenario(s).empty());
    CHECK(builtin_scenario(name) == s);
    CHECK(grid_reachable(s, s.delta / 2));
  }
  CHECK_THROWS_AS(builtin_scenario("nope"), ScenarioError);
}

TEST_CASE("dynamic_crossing has exactly one moving obstacle") {
  const Scenario s = builtin_scenario("dynamic_crossing");
  CHECK(s.is_dynamic());
  const auto moving = std::count_if(s.obstacles.begin(), s.obstacles.end(),
                                    [](const Obstacle& o) { return o.is_dynamic(); });
  CHECK(moving == 1);
  for (const auto& name : builtin_names()) {
    if (name != "dynamic_crossing") {
      CHECK_FALSE(builtin_scenario(name).is_dynamic());
    }
  }
}

TEST_CASE("validate_scenario reports violations") {
  Scenario s = builtin_scenario("scenario1");
  s.delta = 2.0;
  s.sensor_range = 1.0;
  CHECK(has_problem(validate_scenario(s), "robot length must be below sensor range"));

  s = builtin_scenario("scenario1");
  s.obstacles.push_back({{{0, 0}, {1, 1}, {1, 0}, {0, 1}}, std::nullopt});
  CHECK(has_problem(validate_scenario(s), "OB4"));

  s = builtin_scenario("scenario1");
  s.start = {6.0, 5.0};
  CHECK(has_problem(validate_scenario(s), "start"));

  s = builtin_scenario("scenario1");
  s.goal = {100, 100};
  CHECK(has_problem(validate_scenario(s), "goal"));

  s = builtin_scenario("scenario1");
  s.bounds = {1, 1, 0, 0};
  CHECK_FALSE(validate_scenario(s).empty());

  s = builtin_scenario("scenario1");
  s.speed = 0.0;
  CHECK(has_problem(validate_scenario(s), "speed"));
}

TEST_CASE("parse_scenario applies defaults and reverses clockwise outlines") {
  Scenario s = parse_scenario(kMinimal);
  CHECK(s.delta == kDefaultDelta);
  CHECK(s.sensor_range == kDefaultSensorRange);
  CHECK(s.speed == kDefaultSpeed);
  CHECK(s.obstacles.empty());

  s = parse_scenario(R"({"name": "cw", "bounds": {"xmin": -1, "ymin": -1, "xmax": 10, "ymax": 10},
    "start": [0, 0], "goal": [5, 5],
    "obstacles": [{"vertices": [[2, 2], [2, 3], [3, 3], [3, 2]], "velocity": [0.5, 0]}]})");
  REQUIRE(s.obstacles.size() == 1);
  CHECK(signed_area(s.obstacles[0].shape) > 0);
  REQUIRE(s.obstacles[0].velocity);
  CHECK(s.obstacles[0].velocity->vx == 0.5);
}

TEST_CASE("parse_scenario rejects bad input") {
  SUBCASE("syntax error names the line") {
    try {
      parse_scenario("{\n  \"bounds\": {,\n}");
      FAIL("expected ScenarioError");
    } catch (const ScenarioError& e) {
      CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
  }
  SUBCASE("unknown field") {
    CHECK_THROWS_WITH_AS(parse_scenario(R"({"bounds": {"xmin": -1, "ymin": -1, "xmax": 10,
      "ymax": 10}, "start": [0, 0], "goal": [5, 5], "colour": "red"})"),
                         doctest::Contains("colour"), ScenarioError);
  }
  SUBCASE("unknown obstacle field") {
    CHECK_THROWS_AS(parse_scenario(R"({"bounds": {"xmin": -1, "ymin": -1, "xmax": 10,
      "ymax": 10}, "start": [0, 0], "goal": [5, 5],
      "obstacles": [{"vertices": [[2, 2], [3, 2], [3, 3]], "spin": 1}]})"),
                    ScenarioError);
  }
  SUBCASE("missing goal") {
    CHECK_THROWS_AS(parse_scenario(R"({"bounds": {"xmin": -1, "ymin": -1, "xmax": 10,
      "ymax": 10}, "start": [0, 0]})"),
                    ScenarioError);
  }
  SUBCASE("wrong type") {
    CHECK_THROWS_AS(parse_scenario(R"({"bounds": {"xmin": "a", "ymin": -1, "xmax": 10,
      "ymax": 10}, "start": [0, 0], "goal": [5, 5]})"),
                    ScenarioError);
  }
  SUBCASE("validation failure carries every problem") {
    try {
      parse_scenario(R"({"bounds": {"xmin": -1, "ymin": -1, "xmax": 10, "ymax": 10},
        "start": [20, 0], "goal": [5, 50], "delta": 2})");
      FAIL("expected ScenarioError");
    } catch (const ScenarioError& e) {
      CHECK(e.problems().size() == 3);
    }
  }
}

TEST_CASE("serialize then parse is the identity on built-in fixtures") {
  for (const auto& name : builtin_names()) {
    CAPTURE(name);
    const Scenario s = builtin_scenario(name);
    CHECK(parse_scenario(serialize_scenario(s)) == s);
  }
}

TEST_CASE("load_scenario reads files and reports missing ones") {
  const auto path = std::filesystem::temp_directory_path() / "nspmr_world_test.json";
  {
    std::ofstream f(path);
    f << serialize_scenario(builtin_scenario("office_like"));
  }
  CHECK(load_scenario(path) == builtin_scenario("office_like"));
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_scenario(path), ScenarioError);
}

TEST_CASE("step_dynamics examples") {
  Scenario s = parse_scenario(kMinimal);
  s.obstacles.push_back({{{2, 2}, {3, 2}, {3, 3}, {2, 3}}, Velocity{1, 0}});
  const Scenario next = step_dynamics(s, 0.5);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(next.obstacles[0].shape[i].x == doctest::Approx(s.obstacles[0].shape[i].x + 0.5));
    CHECK(next.obstacles[0].shape[i].y == s.obstacles[0].shape[i].y);
  }

  const Scenario still = builtin_scenario("scenario1");
  CHECK(step_dynamics(still, 3.0) == still);

  s.obstacles[0].shape = {{8.5, 2}, {9.5, 2}, {9.5, 3}, {8.5, 3}};
  const Scenario bounced = step_dynamics(s, 1.0);
  REQUIRE(bounced.obstacles[0].velocity);
  CHECK(bounced.obstacles[0].velocity->vx == -1.0);
  CHECK(bounced.obstacles[0].velocity->vy == 0.0);
  CHECK(bounding_box(bounced.obstacles[0].shape).xmax <= s.bounds.xmax);
}

TEST_CASE("step_dynamics is a rigid translation") {
  Scenario s = builtin_scenario("dynamic_crossing");
  s.obstacles.push_back({{{1, 1}, {2.5, 1}, {2.5, 1.5}, {1.5, 1.5}, {1.5, 2.5}, {1, 2.5}},
                         Velocity{3.3, -1.7}});
  const Scenario s0 = s;
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> dt(0.01, 0.7);
  for (int step = 0; step < 500; ++step) {
    s = step_dynamics(s, dt(rng));
    for (std::size_t k = 0; k < s.obstacles.size(); ++k) {
      const auto& a = s0.obstacles[k].shape;
      const auto& b = s.obstacles[k].shape;
      CHECK(signed_area(b) == doctest::Approx(signed_area(a)).epsilon(1e-9));
      const auto la = edge_lengths(a);
      const auto lb = edge_lengths(b);
      for (std::size_t e = 0; e < la.size(); ++e) {
        CHECK(lb[e] == doctest::Approx(la[e]).epsilon(1e-9));
      }
      const Box box = bounding_box(b);
      CHECK(box.xmin >= s.bounds.xmin - 1e-9);
      CHECK(box.xmax <= s.bounds.xmax + 1e-9);
      CHECK(box.ymin >= s.bounds.ymin - 1e-9);
      CHECK(box.ymax <= s.bounds.ymax + 1e-9);
    }
  }
}

TEST_CASE("generate_world examples") {
  WorldGenSpec empty;
  empty.count = 0;
  const Scenario e = generate_world(1, empty);
  CHECK(e.obstacles.empty());
  CHECK(validate_scenario(e).empty());

  CHECK(generate_world(3, {}) == generate_world(3, {}));
  CHECK_FALSE(generate_world(3, {}) == generate_world(4, {}));

  const Scenario w = generate_world(7, {});
  CHECK(w.obstacles.size() == 10);
  CHECK(grid_reachable(w, w.delta / 2));

  WorldGenSpec bad;
  bad.min_size = 3;
  bad.max_size = 1;
  CHECK_THROWS_AS(generate_world(1, bad), ScenarioError);
  bad = {};
  bad.kinds.clear();
  CHECK_THROWS_AS(generate_world(1, bad), ScenarioError);
}

TEST_CASE("generated worlds are valid, disjoint and solvable") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    CAPTURE(seed);
    WorldGenSpec spec;
    spec.count = static_cast<int>(seed % 13);
    if (seed % 3 == 0) {
      spec.kinds = {ShapeKind::triangle};
    }
    const Scenario w = generate_world(seed, spec);
    CHECK(w.obstacles.size() == static_cast<std::size_t>(spec.count));
    CHECK(validate_scenario(w).empty());
    CHECK(grid_reachable(w, w.delta / 2));
    for (std::size_t i = 0; i < w.obstacles.size(); ++i) {
      const Polygon& p = w.obstacles[i].shape;
      CHECK(clearance(w.start, p) >= 2 * w.delta - 1e-9);
      CHECK(clearance(w.goal, p) >= 2 * w.delta - 1e-9);
      for (std::size_t j = i + 1; j < w.obstacles.size(); ++j) {
        CHECK(polygon_distance(p, w.obstacles[j].shape) > 0.0);
      }
    }
  }
}

TEST_CASE("grid_reachable detects a boxed-in start") {
  Scenario s = parse_scenario(kMinimal);
  s.obstacles.push_back({{{-0.8, -0.8}, {0.8, -0.8}, {0.8, -0.6}, {-0.8, -0.6}}, std::nullopt});
  s.obstacles.push_back({{{0.6, -0.6}, {0.8, -0.6}, {0.8, 0.6}, {0.6, 0.6}}, std::nullopt});
  s.obstacles.push_back({{{-0.8, 0.6}, {0.8, 0.6}, {0.8, 0.8}, {-0.8, 0.8}}, std::nullopt});
  s.obstacles.push_back({{{-0.8, -0.6}, {-0.6, -0.6}, {-0.6, 0.6}, {-0.8, 0.6}}, std::nullopt});
  CHECK_FALSE(grid_reachable(s, 0.25));
  CHECK(grid_reachable(parse_scenario(kMinimal), 0.25));
}
