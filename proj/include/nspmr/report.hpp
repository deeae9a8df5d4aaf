#pragma once

// Output artifacts: trajectory CSV, SVG renderings and benchmark tables.

#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "nspmr/sim.hpp"
#include "nspmr/trajectory.hpp"
#include "nspmr/world.hpp"

namespace nspmr {

class CsvError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Columns iter,t_s,x_m,y_m,event,dir_deg with a header row. Numbers use fixed
/// 9-decimal formatting; dir_deg is empty when the waypoint has no heading.
void write_trajectory_csv(std::ostream& os, const Trajectory& t);
std::string trajectory_csv(const Trajectory& t);
/// Inverse of write_trajectory_csv. Throws CsvError with the offending line number.
Trajectory read_trajectory_csv(std::istream& is);

/// One <polygon> per obstacle (initial pose), one <polyline> per trajectory.
/// World y grows upwards in the picture.
std::string render_svg(const Scenario& s, std::span<const Trajectory> trajectories);

struct BenchRow {
  std::string scenario;
  double sensor_range = 0.0;
  PlannerKind planner = PlannerKind::nspmr;
  Outcome outcome = Outcome::iteration_limit;
  double length = 0.0;
  double travel_time = 0.0;
  std::size_t iterations = 0;
  std::optional<double> oracle;
  std::optional<double> ratio;
  /// Scenario column text; carries the sensor range when a sweep is requested.
  std::string label;
};

struct BenchReport {
  std::vector<BenchRow> rows;

  /// Orders rows by scenario, then sensor range, then planner.
  void sort();
  /// Header scenario,planner,outcome,length_m,time_s,iters,oracle_m,ratio.
  std::string csv() const;
  /// Same content as a whitespace-aligned table for terminals.
  std::string table() const;
};

BenchRow make_bench_row(const Scenario& s, PlannerKind planner, const RunResult& r,
                        std::optional<double> oracle, std::string label);

}  // namespace nspmr
