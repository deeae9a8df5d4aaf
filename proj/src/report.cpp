#include "nspmr/report.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <tuple>

namespace nspmr {

namespace {

std::string fixed9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", v);
  std::string out = buf;
  if (out == "-0.000000000") {
    out.erase(0, 1);
  }
  return out;
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (const char c : line) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

double parse_number(const std::string& text, std::size_t line, const char* column) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc{} || ptr != end) {
    throw CsvError("line " + std::to_string(line) + ": bad " + column + " value '" + text + "'");
  }
  return v;
}

constexpr const char* kTrajectoryHeader = "iter,t_s,x_m,y_m,event,dir_deg";

}  // namespace

void write_trajectory_csv(std::ostream& os, const Trajectory& t) {
  os << kTrajectoryHeader << '\n';
  for (std::size_t i = 0; i < t.size(); ++i) {
    os << i << ',' << fixed9(t.timestamps[i]) << ',' << fixed9(t.waypoints[i].x) << ','
       << fixed9(t.waypoints[i].y) << ',' << to_string(t.events[i]) << ',';
    if (t.directions[i]) {
      os << fixed9(*t.directions[i]);
    }
    os << '\n';
  }
}

std::string trajectory_csv(const Trajectory& t) {
  std::ostringstream os;
  write_trajectory_csv(os, t);
  return os.str();
}

Trajectory read_trajectory_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kTrajectoryHeader) {
    throw CsvError("line 1: expected header '" + std::string(kTrajectoryHeader) + "'");
  }
  Trajectory t;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) {
      continue;
    }
    const auto cols = split(line, ',');
    if (cols.size() != 6) {
      throw CsvError("line " + std::to_string(lineno) + ": expected 6 columns, got " +
                     std::to_string(cols.size()));
    }
    if (parse_number(cols[0], lineno, "iter") != static_cast<double>(t.size())) {
      throw CsvError("line " + std::to_string(lineno) + ": iter out of sequence");
    }
    const auto event = event_from_string(cols[4]);
    if (!event) {
      throw CsvError("line " + std::to_string(lineno) + ": unknown event '" + cols[4] + "'");
    }
    std::optional<double> dir;
    if (!cols[5].empty()) {
      dir = parse_number(cols[5], lineno, "dir_deg");
    }
    t.push({parse_number(cols[2], lineno, "x_m"), parse_number(cols[3], lineno, "y_m")}, *event,
           dir, parse_number(cols[1], lineno, "t_s"));
  }
  return t;
}

std::string render_svg(const Scenario& s, std::span<const Trajectory> trajectories) {
  const double w = s.bounds.xmax - s.bounds.xmin;
  const double h = s.bounds.ymax - s.bounds.ymin;
  const double scale = 800.0 / std::max(w, h);
  const double stroke = 1.5 / scale;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fixed(w * scale, 1)
     << "\" height=\"" << fixed(h * scale, 1) << "\" viewBox=\"0 0 " << fixed(w * scale, 1) << ' '
     << fixed(h * scale, 1) << "\">\n";
  // World to picture: shift to the lower-left corner, scale, flip y.
  os << "<g transform=\"matrix(" << fixed(scale, 6) << " 0 0 " << fixed(-scale, 6) << ' '
     << fixed(-s.bounds.xmin * scale, 6) << ' ' << fixed(s.bounds.ymax * scale, 6) << ")\">\n";
  os << "<rect x=\"" << s.bounds.xmin << "\" y=\"" << s.bounds.ymin << "\" width=\"" << w
     << "\" height=\"" << h << "\" fill=\"white\" stroke=\"black\" stroke-width=\"" << stroke
     << "\"/>\n";
  for (const auto& o : s.obstacles) {
    os << "<polygon points=\"";
    for (std::size_t i = 0; i < o.shape.size(); ++i) {
      os << (i ? " " : "") << o.shape[i].x << ',' << o.shape[i].y;
    }
    os << "\" fill=\"" << (o.velocity ? "#e8b0b0" : "#b0b0b0") << "\" stroke=\"black\" stroke-width=\""
       << stroke << "\"/>\n";
  }
  static constexpr const char* kColours[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                             "#ff7f0e"};
  std::size_t k = 0;
  for (const auto& t : trajectories) {
    os << "<polyline points=\"";
    for (std::size_t i = 0; i < t.size(); ++i) {
      os << (i ? " " : "") << fixed(t.waypoints[i].x, 4) << ',' << fixed(t.waypoints[i].y, 4);
    }
    os << "\" fill=\"none\" stroke=\"" << kColours[k++ % std::size(kColours)]
       << "\" stroke-width=\"" << 2 * stroke << "\"/>\n";
  }
  const double r = 4.0 / scale;
  os << "<circle cx=\"" << s.start.x << "\" cy=\"" << s.start.y << "\" r=\"" << r
     << "\" fill=\"green\"/>\n";
  os << "<circle cx=\"" << s.goal.x << "\" cy=\"" << s.goal.y << "\" r=\"" << r
     << "\" fill=\"red\"/>\n";
  os << "</g>\n</svg>\n";
  return os.str();
}

BenchRow make_bench_row(const Scenario& s, PlannerKind planner, const RunResult& r,
                        std::optional<double> oracle, std::string label) {
  BenchRow row;
  row.scenario = s.name;
  row.sensor_range = s.sensor_range;
  row.planner = planner;
  row.outcome = r.outcome;
  row.length = r.length;
  row.travel_time = r.travel_time;
  row.iterations = r.iterations;
  row.oracle = oracle;
  if (oracle && *oracle > 0.0 && r.outcome == Outcome::goal_reached) {
    row.ratio = r.length / *oracle;
  }
  row.label = label.empty() ? s.name : std::move(label);
  return row;
}

void BenchReport::sort() {
  std::stable_sort(rows.begin(), rows.end(), [](const BenchRow& a, const BenchRow& b) {
    return std::tie(a.scenario, a.sensor_range, a.planner) <
           std::tie(b.scenario, b.sensor_range, b.planner);
  });
}

namespace {

std::vector<std::string> cells(const BenchRow& r) {
  return {r.label,
          std::string(to_string(r.planner)),
          std::string(to_string(r.outcome)),
          fixed(r.length, 3),
          fixed(r.travel_time, 3),
          std::to_string(r.iterations),
          r.oracle ? fixed(*r.oracle, 3) : "",
          r.ratio ? fixed(*r.ratio, 3) : ""};
}

const std::vector<std::string> kBenchHeader{"scenario", "planner", "outcome", "length_m",
                                            "time_s",   "iters",   "oracle_m", "ratio"};

}  // namespace

std::string BenchReport::csv() const {
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& c) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      os << (i ? "," : "") << c[i];
    }
    os << '\n';
  };
  line(kBenchHeader);
  for (const auto& r : rows) {
    line(cells(r));
  }
  return os.str();
}

std::string BenchReport::table() const {
  std::vector<std::vector<std::string>> all{kBenchHeader};
  for (const auto& r : rows) {
    all.push_back(cells(r));
  }
  std::vector<std::size_t> width(kBenchHeader.size(), 0);
  for (const auto& row : all) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      width[i] = std::max(width[i], row[i].size());
    }
  }
  std::ostringstream os;
  for (const auto& row : all) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      // Text columns flush left, numbers flush right.
      const bool left = i < 3;
      const std::string pad(width[i] - row[i].size(), ' ');
      line += (i ? "  " : "") + (left ? row[i] + pad : pad + row[i]);
    }
    while (!line.empty() && line.back() == ' ') {
      line.pop_back();
    }
    os << line << '\n';
  }
  return os.str();
}

}  // namespace nspmr
