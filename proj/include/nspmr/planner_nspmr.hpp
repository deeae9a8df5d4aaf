#pragma once

// The NSPMR step planner: head for the goal along the closest of eight lattice
// directions, and break loops with three priority rules:
//   I   never reverse the previous move,
//   II  never leave a cell twice in the same direction,
//   III when nothing is left, mark the cell dead and step back along the trail.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "nspmr/geometry.hpp"
#include "nspmr/sensing.hpp"
#include "nspmr/world.hpp"

namespace nspmr {

/// Node of the delta/2 lattice nearest to a position.
struct CellId {
  std::int64_t ix = 0;
  std::int64_t iy = 0;

  friend bool operator==(const CellId&, const CellId&) = default;
};

struct CellIdHash {
  std::size_t operator()(const CellId& c) const noexcept {
    const auto ux = static_cast<std::uint64_t>(c.ix);
    const auto uy = static_cast<std::uint64_t>(c.iy);
    return std::hash<std::uint64_t>{}(ux * 0x9E3779B97F4A7C15ULL ^ (uy + 0x632BE59BD9B4E019ULL));
  }
};

CellId quantize(Point2 pos, double delta);

/// Toggles for the loop-escape rules. Disabling them is only useful for control runs.
struct NspmrRules {
  bool no_reversal = true;       // rule I
  bool used_directions = true;   // rule II
  bool backtracking = true;      // rule III

  static NspmrRules none() { return {false, false, false}; }
};

/// Bit k set = direction k already used to leave the cell.
using DirectionSet = std::uint8_t;

struct NspmrState {
  Point2 pos;
  std::optional<CompassAngle> prev_dir;
  std::size_t iteration = 0;
  std::unordered_map<CellId, DirectionSet, CellIdHash> used;
  std::unordered_set<CellId, CellIdHash> dead;
  std::vector<Point2> trail;  // back() is the current position

  static NspmrState at(Point2 start);

  bool was_used(CellId cell, int k) const;
};

enum class StepKind { moved, backtracked, goal_reached, stuck };

struct StepEvent {
  StepKind kind = StepKind::stuck;
  std::optional<CompassAngle> direction;
  Point2 new_pos;
};

/// Compass bearing from pos to goal. Throws GeometryError when pos == goal.
CompassAngle desired_angle(Point2 pos, Point2 goal);

/// Lattice move: one delta/2 step per axis as the direction requires.
/// Throws GeometryError for headings that are not multiples of 45 deg.
Point2 apply_move(Point2 pos, CompassAngle dir, double delta);

/// Directions that survive the sensors and the enabled rules, in sensor order.
std::vector<CompassAngle> filter_candidates(const SensorScan& scan, const NspmrState& state,
                                            double delta, const NspmrRules& rules = {});

/// Candidate closest to theta_d (circular distance). Ties go to the longer free
/// sensor reading, then to the lower sensor index. Throws std::invalid_argument
/// for an empty candidate list.
CompassAngle select_direction(std::span<const CompassAngle> candidates, CompassAngle theta_d,
                              const SensorScan& scan);

/// One iteration of the planner against the current world. Mutates state.
StepEvent nspmr_step(NspmrState& state, const Scenario& world, const NspmrRules& rules = {});

}  // namespace nspmr
