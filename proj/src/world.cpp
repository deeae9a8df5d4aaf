#include "nspmr/world.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace nspmr {

using nlohmann::json;

bool Scenario::is_dynamic() const {
  for (const auto& ob : obstacles) {
    if (ob.is_dynamic()) {
      return true;
    }
  }
  return false;
}

std::vector<Polygon> Scenario::shapes() const {
  std::vector<Polygon> out;
  out.reserve(obstacles.size());
  for (const auto& ob : obstacles) {
    out.push_back(ob.shape);
  }
  return out;
}

namespace {

std::string point_text(Point2 p) {
  std::ostringstream os;
  os << '(' << p.x << ", " << p.y << ')';
  return os.str();
}

std::string ob_label(std::size_t i) { return "OB" + std::to_string(i + 1); }

}  // namespace

std::vector<std::string> validate_scenario(const Scenario& s) {
  std::vector<std::string> v;
  const Bounds& b = s.bounds;
  if (!(std::isfinite(b.xmin) && std::isfinite(b.ymin) && std::isfinite(b.xmax) &&
        std::isfinite(b.ymax)) ||
      !(b.xmin < b.xmax && b.ymin < b.ymax)) {
    v.emplace_back("bounds must be a finite rectangle with xmin < xmax and ymin < ymax");
  }
  if (!(std::isfinite(s.delta) && s.delta > 0.0)) {
    v.emplace_back("robot length delta must be positive");
  }
  if (!(std::isfinite(s.sensor_range) && s.sensor_range > 0.0)) {
    v.emplace_back("sensor range must be positive");
  }
  if (s.delta > 0.0 && s.sensor_range > 0.0 && !(s.delta < s.sensor_range)) {
    v.emplace_back("robot length must be below sensor range");
  }
  if (!(std::isfinite(s.speed) && s.speed > 0.0)) {
    v.emplace_back("speed must be positive");
  }
  if (!is_finite(s.start)) {
    v.emplace_back("start must be finite");
  } else if (!b.contains(s.start)) {
    v.emplace_back("start " + point_text(s.start) + " is not inside the bounds");
  }
  if (!is_finite(s.goal)) {
    v.emplace_back("goal must be finite");
  } else if (!b.contains(s.goal)) {
    v.emplace_back("goal " + point_text(s.goal) + " is not inside the bounds");
  }

  for (std::size_t i = 0; i < s.obstacles.size(); ++i) {
    const Obstacle& ob = s.obstacles[i];
    const auto problems = polygon_problems(ob.shape);
    for (const auto& p : problems) {
      v.push_back(ob_label(i) + ": " + p);
    }
    if (ob.velocity && !(std::isfinite(ob.velocity->vx) && std::isfinite(ob.velocity->vy))) {
      v.push_back(ob_label(i) + ": velocity must be finite");
    }
    if (!problems.empty()) {
      continue;
    }
    const Box box = bounding_box(ob.shape);
    if (box.xmin < b.xmin || box.ymin < b.ymin || box.xmax > b.xmax || box.ymax > b.ymax) {
      v.push_back(ob_label(i) + ": lies outside the bounds");
    }
    if (is_finite(s.start) && point_in_polygon(s.start, ob.shape) != Containment::outside) {
      v.push_back("start " + point_text(s.start) + " is not strictly outside " + ob_label(i));
    }
    if (is_finite(s.goal) && point_in_polygon(s.goal, ob.shape) != Containment::outside) {
      v.push_back("goal " + point_text(s.goal) + " is not strictly outside " + ob_label(i));
    }
  }
  return v;
}

namespace {

std::string line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

[[noreturn]] void field_error(const std::string& where, const std::string& msg) {
  throw ScenarioError("scenario: field '" + where + "': " + msg);
}

void reject_unknown(const json& obj, std::initializer_list<std::string_view> allowed,
                    const std::string& where) {
  for (const auto& [key, _] : obj.items()) {
    bool known = false;
    for (auto a : allowed) {
      known = known || key == a;
    }
    if (!known) {
      field_error(where.empty() ? key : where + "." + key, "unknown field");
    }
  }
}

double number_at(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key)) {
    field_error(where, "missing");
  }
  const json& v = obj.at(key);
  if (!v.is_number()) {
    field_error(where, "expected a number");
  }
  return v.get<double>();
}

Point2 point_from(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    field_error(where, "expected [x, y]");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

}  // namespace

Scenario parse_scenario(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const std::size_t at = e.byte > 0 ? e.byte - 1 : 0;
    throw ScenarioError("scenario: syntax error at " + line_column(text, at) + ": " + e.what());
  }
  if (!doc.is_object()) {
    throw ScenarioError("scenario: top level must be an object");
  }
  reject_unknown(doc,
                 {"name", "bounds", "start", "goal", "delta", "sensor_range", "speed",
                  "obstacles"},
                 "");

  Scenario s;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) {
      field_error("name", "expected a string");
    }
    s.name = doc["name"].get<std::string>();
  }

  if (!doc.contains("bounds") || !doc["bounds"].is_object()) {
    field_error("bounds", "expected an object {xmin, ymin, xmax, ymax}");
  }
  const json& jb = doc["bounds"];
  reject_unknown(jb, {"xmin", "ymin", "xmax", "ymax"}, "bounds");
  s.bounds = {number_at(jb, "xmin", "bounds.xmin"), number_at(jb, "ymin", "bounds.ymin"),
              number_at(jb, "xmax", "bounds.xmax"), number_at(jb, "ymax", "bounds.ymax")};

  if (!doc.contains("start")) {
    field_error("start", "missing");
  }
  if (!doc.contains("goal")) {
    field_error("goal", "missing");
  }
  s.start = point_from(doc["start"], "start");
  s.goal = point_from(doc["goal"], "goal");

  if (doc.contains("delta")) {
    s.delta = number_at(doc, "delta", "delta");
  }
  if (doc.contains("sensor_range")) {
    s.sensor_range = number_at(doc, "sensor_range", "sensor_range");
  }
  if (doc.contains("speed")) {
    s.speed = number_at(doc, "speed", "speed");
  }

  if (doc.contains("obstacles")) {
    const json& jobs = doc["obstacles"];
    if (!jobs.is_array()) {
      field_error("obstacles", "expected an array");
    }
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      const std::string where = "obstacles[" + std::to_string(i) + "]";
      const json& jo = jobs[i];
      if (!jo.is_object()) {
        field_error(where, "expected an object");
      }
      reject_unknown(jo, {"vertices", "velocity"}, where);
      if (!jo.contains("vertices") || !jo["vertices"].is_array()) {
        field_error(where + ".vertices", "expected an array of [x, y]");
      }
      Obstacle ob;
      const json& jv = jo["vertices"];
      for (std::size_t k = 0; k < jv.size(); ++k) {
        ob.shape.push_back(point_from(jv[k], where + ".vertices[" + std::to_string(k) + "]"));
      }
      if (ob.shape.size() >= 3) {
        ob.shape = make_ccw(std::move(ob.shape));
      }
      if (jo.contains("velocity")) {
        const Point2 v = point_from(jo["velocity"], where + ".velocity");
        ob.velocity = Velocity{v.x, v.y};
      }
      s.obstacles.push_back(std::move(ob));
    }
  }

  auto violations = validate_scenario(s);
  if (!violations.empty()) {
    std::string msg = "scenario '" + s.name + "' is invalid: " + violations.front();
    throw ScenarioError(msg, std::move(violations));
  }
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ScenarioError("cannot read scenario file '" + path.string() + "'");
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string serialize_scenario(const Scenario& s) {
  json doc;
  doc["name"] = s.name;
  doc["bounds"] = {{"xmin", s.bounds.xmin},
                   {"ymin", s.bounds.ymin},
                   {"xmax", s.bounds.xmax},
                   {"ymax", s.bounds.ymax}};
  doc["start"] = {s.start.x, s.start.y};
  doc["goal"] = {s.goal.x, s.goal.y};
  doc["delta"] = s.delta;
  doc["sensor_range"] = s.sensor_range;
  doc["speed"] = s.speed;
  json obs = json::array();
  for (const auto& ob : s.obstacles) {
    json jo;
    json verts = json::array();
    for (const auto& p : ob.shape) {
      verts.push_back({p.x, p.y});
    }
    jo["vertices"] = std::move(verts);
    if (ob.velocity) {
      jo["velocity"] = {ob.velocity->vx, ob.velocity->vy};
    }
    obs.push_back(std::move(jo));
  }
  doc["obstacles"] = std::move(obs);
  return doc.dump(2) + "\n";
}

Scenario step_dynamics(const Scenario& s, double dt) {
  if (!(dt > 0.0)) {
    throw std::invalid_argument("step_dynamics: dt must be positive");
  }
  Scenario next = s;
  for (auto& ob : next.obstacles) {
    if (!ob.velocity) {
      continue;
    }
    Velocity& v = *ob.velocity;
    Point2 shift{v.vx * dt, v.vy * dt};
    const Box box = bounding_box(ob.shape);
    const Bounds& b = s.bounds;
    if (box.xmin + shift.x < b.xmin) {
      shift.x = b.xmin - box.xmin;
      v.vx = -v.vx;
    } else if (box.xmax + shift.x > b.xmax) {
      shift.x = b.xmax - box.xmax;
      v.vx = -v.vx;
    }
    if (box.ymin + shift.y < b.ymin) {
      shift.y = b.ymin - box.ymin;
      v.vy = -v.vy;
    } else if (box.ymax + shift.y > b.ymax) {
      shift.y = b.ymax - box.ymax;
      v.vy = -v.vy;
    }
    ob.shape = translate(ob.shape, shift);
  }
  return next;
}

}  // namespace nspmr
