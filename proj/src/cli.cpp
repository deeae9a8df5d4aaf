#include "nspmr/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include "nspmr/report.hpp"
#include "nspmr/sim.hpp"
#include "nspmr/world.hpp"

namespace nspmr {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitNotReached = 2;

/// Input problems the user can fix; reported as "error: ..." with exit code 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Scenario resolve_scenario(const std::string& spec, std::uint64_t seed) {
  constexpr std::string_view kBuiltin = "builtin:";
  if (spec.starts_with(kBuiltin)) {
    return builtin_scenario(std::string_view(spec).substr(kBuiltin.size()));
  }
  if (spec == "generated") {
    return generate_world(seed, {});
  }
  return load_scenario(spec);
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    throw UsageError("cannot open '" + path + "' for writing");
  }
  f << content;
  if (!f.flush()) {
    throw UsageError("failed writing '" + path + "'");
  }
}

std::string fmt3(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

struct RunFlags {
  std::string scenario;
  std::string planner = "nspmr";
  std::optional<double> sensor_range;
  std::optional<double> delta;
  std::size_t max_iters = 0;
  std::string out_csv;
  std::string out_svg;
  std::uint64_t seed = 1;
};

int cmd_run(const RunFlags& f, std::ostream& out) {
  const auto planner = planner_from_string(f.planner);
  if (!planner) {
    throw UsageError("unknown planner '" + f.planner + "' (expected nspmr, bug1 or bug2)");
  }
  Scenario s = resolve_scenario(f.scenario, f.seed);
  if (f.sensor_range) {
    s.sensor_range = *f.sensor_range;
  }
  if (f.delta) {
    s.delta = *f.delta;
  }
  RunOptions options;
  options.max_iters = f.max_iters;
  const RunOutput result = run(s, *planner, options);
  if (!f.out_csv.empty()) {
    write_file(f.out_csv, trajectory_csv(result.trajectory));
  }
  if (!f.out_svg.empty()) {
    write_file(f.out_svg, render_svg(s, std::span(&result.trajectory, 1)));
  }
  const RunResult& r = result.result;
  out << to_string(r.outcome) << ' ' << fmt3(r.length) << ' ' << fmt3(r.travel_time) << ' '
      << r.iterations << '\n';
  return r.outcome == Outcome::goal_reached ? kExitOk : kExitNotReached;
}

struct BenchFlags {
  std::string suite = "paper";
  std::size_t seeds = 10;
  std::uint64_t seed = 1;
  std::vector<std::string> planners{"nspmr", "bug1", "bug2"};
  std::vector<double> ranges;
  std::string out;
  unsigned jobs = 0;
};

struct BenchJob {
  Scenario scenario;
  PlannerKind planner;
  std::string label;
};

std::string range_label(const std::string& name, double d) {
  std::ostringstream os;
  os << name << "@d=" << d;
  return os.str();
}

int cmd_bench(const BenchFlags& f, std::ostream& out, std::ostream& err) {
  std::vector<PlannerKind> planners;
  for (const auto& name : f.planners) {
    if (name.empty()) {
      continue;
    }
    const auto p = planner_from_string(name);
    if (!p) {
      throw UsageError("unknown planner '" + name + "'");
    }
    if (std::find(planners.begin(), planners.end(), *p) == planners.end()) {
      planners.push_back(*p);
    }
  }
  if (planners.empty()) {
    throw UsageError("planner list is empty");
  }
  for (const double d : f.ranges) {
    if (!(d > 0.0)) {
      throw UsageError("sensor ranges must be positive");
    }
  }

  std::vector<Scenario> worlds;
  if (f.suite == "paper") {
    for (const auto& name : builtin_names()) {
      worlds.push_back(builtin_scenario(name));
    }
  } else if (f.suite == "random") {
    if (f.seeds == 0) {
      throw UsageError("random suite needs at least one seed");
    }
    for (std::size_t i = 0; i < f.seeds; ++i) {
      worlds.push_back(generate_world(f.seed + i, {}));
    }
  } else {
    throw UsageError("unknown suite '" + f.suite + "' (expected paper or random)");
  }

  std::vector<BenchJob> jobs;
  for (const auto& w : worlds) {
    std::vector<std::pair<Scenario, std::string>> variants;
    if (f.ranges.empty()) {
      variants.emplace_back(w, w.name);
    }
    for (const double d : f.ranges) {
      Scenario v = w;
      v.sensor_range = d;
      variants.emplace_back(std::move(v), range_label(w.name, d));
    }
    for (auto& [v, label] : variants) {
      for (const auto p : planners) {
        if (p != PlannerKind::nspmr && v.is_dynamic()) {
          err << "note: skipping " << to_string(p) << " on dynamic scenario " << label << '\n';
          continue;
        }
        jobs.push_back({v, p, label});
      }
    }
  }

  // Workers fill their own slots; all output is written after they finish.
  std::vector<std::optional<BenchRow>> rows(jobs.size());
  std::vector<std::string> failures(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      const auto& job = jobs[i];
      try {
        const RunOutput r = run(job.scenario, job.planner);
        rows[i] = make_bench_row(job.scenario, job.planner, r.result,
                                 grid_oracle(job.scenario, job.scenario.delta / 2.0), job.label);
      } catch (const std::exception& e) {
        failures[i] = job.label + " " + std::string(to_string(job.planner)) + ": " + e.what();
      }
    }
  };
  const unsigned n_threads = std::max(
      1u, std::min<unsigned>(f.jobs ? f.jobs : std::thread::hardware_concurrency(),
                             static_cast<unsigned>(jobs.size())));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < n_threads; ++t) {
      pool.emplace_back(worker);
    }
  }

  BenchReport report;
  bool failed = false;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    if (rows[i]) {
      report.rows.push_back(std::move(*rows[i]));
    } else {
      err << "error: " << failures[i] << '\n';
      failed = true;
    }
  }
  report.sort();
  if (!f.out.empty()) {
    write_file(f.out, report.csv());
  }
  out << report.table();
  return failed ? kExitError : kExitOk;
}

struct GenFlags {
  std::uint64_t seed = 1;
  int count = 10;
  std::string out;
};

int cmd_gen(const GenFlags& f, std::ostream& out) {
  WorldGenSpec spec;
  spec.count = f.count;
  const std::string text = serialize_scenario(generate_world(f.seed, spec));
  if (f.out.empty()) {
    out << text;
  } else {
    write_file(f.out, text);
  }
  return kExitOk;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sensor-based local path planning simulator", "nspmr"};
  app.require_subcommand(1);

  RunFlags rf;
  auto* run_cmd = app.add_subcommand("run", "Run one planner on one scenario");
  run_cmd
      ->add_option("--scenario", rf.scenario,
                   "Scenario file, builtin:NAME, or 'generated' (uses --seed)")
      ->required();
  run_cmd->add_option("--planner", rf.planner, "nspmr, bug1 or bug2")->capture_default_str();
  run_cmd->add_option("--sensor-range", rf.sensor_range, "Override sensor range d (m)");
  run_cmd->add_option("--delta", rf.delta, "Override robot size delta (m)");
  run_cmd->add_option("--max-iters", rf.max_iters, "Iteration budget")
      ->check(CLI::PositiveNumber);
  run_cmd->add_option("--out-csv", rf.out_csv, "Write the trajectory as CSV");
  run_cmd->add_option("--out-svg", rf.out_svg, "Write an SVG rendering");
  run_cmd->add_option("--seed", rf.seed, "Seed for generated scenarios")->envname("NSPMR_SEED");

  BenchFlags bf;
  auto* bench_cmd = app.add_subcommand("bench", "Run a benchmark suite");
  bench_cmd->add_option("--suite", bf.suite, "paper or random")->capture_default_str();
  bench_cmd->add_option("--seeds", bf.seeds, "Number of random worlds")->capture_default_str();
  bench_cmd->add_option("--seed", bf.seed, "First random seed")->envname("NSPMR_SEED");
  bench_cmd->add_option("--planners", bf.planners, "Comma-separated planner list")
      ->delimiter(',')
      ->capture_default_str();
  bench_cmd->add_option("--ranges", bf.ranges, "Comma-separated sensor ranges (m)")
      ->delimiter(',');
  bench_cmd->add_option("--out", bf.out, "Write the report as CSV");
  bench_cmd->add_option("--jobs", bf.jobs, "Worker threads (default: all cores)");

  GenFlags gf;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a random solvable world");
  gen_cmd->add_option("--seed", gf.seed, "World seed")->envname("NSPMR_SEED");
  gen_cmd->add_option("--count", gf.count, "Number of obstacles")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  gen_cmd->add_option("--out", gf.out, "Output file (default: stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*run_cmd) {
      return cmd_run(rf, out);
    }
    if (*bench_cmd) {
      return cmd_bench(bf, out, err);
    }
    return cmd_gen(gf, out);
  } catch (const ScenarioError& e) {
    err << "error: " << e.what() << '\n';
    for (const auto& p : e.problems()) {
      err << "  " << p << '\n';
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return kExitError;
}

}  // namespace nspmr
