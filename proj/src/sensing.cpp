#include "nspmr/sensing.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nspmr {

CompassAngle direction_angle(int k) {
  if (k < 0 || k >= kDirectionCount) {
    throw GeometryError("direction index out of range");
  }
  return CompassAngle(45.0 * k);
}

int direction_index(CompassAngle a) {
  const double k = a.degrees() / 45.0;
  const double r = std::round(k);
  if (std::abs(k - r) > 1e-9) {
    throw GeometryError("heading is not one of the eight lattice directions");
  }
  return static_cast<int>(r) % kDirectionCount;
}

double step_length(int k, double delta) {
  return (k % 2 == 0) ? delta / 2.0 : delta * std::numbers::sqrt2 / 2.0;
}

double blocking_threshold(int k, double delta) { return step_length(k, delta) + delta / 4.0; }

SensorScan scan(Point2 pos, const Scenario& world, double sensor_range, double delta) {
  if (!(delta > 0.0) || !(sensor_range > delta)) {
    throw std::invalid_argument("scan: requires sensor_range > delta > 0");
  }
  const auto shapes = world.shapes();
  for (const auto& poly : shapes) {
    if (point_in_polygon(pos, poly) == Containment::inside) {
      throw InvalidStateError("scan: robot position is inside an obstacle");
    }
  }
  const Polygon walls = world.bounds.polygon();

  SensorScan out;
  for (int k = 0; k < kDirectionCount; ++k) {
    const CompassAngle dir = direction_angle(k);
    auto hit = ray_cast(pos, dir, sensor_range, shapes);
    if (const auto wall = ray_cast_edges(pos, dir, sensor_range, walls);
        wall && (!hit || wall->distance < hit->distance)) {
      hit = wall;
    }
    SensorReading& r = out[k];
    r.dist = hit ? std::min(hit->distance, sensor_range) : sensor_range;
    r.free = !(hit && hit->distance <= blocking_threshold(k, delta));
  }
  return out;
}

}  // namespace nspmr
