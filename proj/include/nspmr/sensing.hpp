#pragma once

// Eight fixed range sensors. Sensor k (0-based here, I_{k+1} in the usual
// numbering) looks along compass heading 45*k deg: north first, then clockwise.

#include <array>

#include "nspmr/geometry.hpp"
#include "nspmr/world.hpp"

namespace nspmr {

inline constexpr int kDirectionCount = 8;

/// Heading of sensor / move direction k, k in [0, 8).
CompassAngle direction_angle(int k);
/// Index of a lattice heading; throws GeometryError for anything that is not a multiple of 45 deg.
int direction_index(CompassAngle a);

/// Length of one lattice move along direction k: delta/2 for cardinals, delta*sqrt(2)/2 for diagonals.
double step_length(int k, double delta);
/// Hits closer than this block direction k: one step plus a delta/4 margin.
double blocking_threshold(int k, double delta);

struct SensorReading {
  bool free = true;
  double dist = 0.0;  // clipped to the sensor range

  friend bool operator==(const SensorReading&, const SensorReading&) = default;
};

struct SensorScan {
  std::array<SensorReading, kDirectionCount> readings{};

  const SensorReading& operator[](int k) const { return readings.at(static_cast<std::size_t>(k)); }
  SensorReading& operator[](int k) { return readings.at(static_cast<std::size_t>(k)); }

  friend bool operator==(const SensorScan&, const SensorScan&) = default;
};

/// Reads all eight sensors at pos. The bounds rectangle is sensed like a wall.
/// Throws InvalidStateError when pos is inside an obstacle, std::invalid_argument
/// unless sensor_range > delta > 0.
SensorScan scan(Point2 pos, const Scenario& world, double sensor_range, double delta);

}  // namespace nspmr
