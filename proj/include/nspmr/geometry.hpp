#pragma once

// 2D primitives used by the planners and the simulator.
//
// Angles used by the planner are compass angles: 0 deg points to +y and the
// angle grows clockwise, so 90 deg points to +x. Polygons are stored
// counterclockwise in the usual math frame.

#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace nspmr {

/// Tolerance (meters) for on-boundary and degeneracy decisions.
inline constexpr double kGeomEps = 1e-9;

class GeometryError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when the robot ends up somewhere it can never legally be, e.g. inside an obstacle.
class InvalidStateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(Point2 a, double s) { return {a.x * s, a.y * s}; }
inline Point2 operator*(double s, Point2 a) { return a * s; }
inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }
inline bool is_finite(Point2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }

/// Heading in the compass convention, always normalized to [0, 360).
class CompassAngle {
 public:
  constexpr CompassAngle() = default;
  explicit CompassAngle(double degrees);

  double degrees() const { return degrees_; }

  friend bool operator==(CompassAngle, CompassAngle) = default;

 private:
  double degrees_ = 0.0;
};

/// Smallest rotation between two headings, in [0, 180].
double circular_diff(CompassAngle a, CompassAngle b);

/// Converts a counterclockwise-from-+x angle to a compass heading: (90 - math) mod 360.
CompassAngle math_to_compass(double math_degrees);
/// Inverse of math_to_compass, result in [0, 360).
double compass_to_math(CompassAngle a);

/// Unit vector pointing along a compass heading.
Point2 heading_vector(CompassAngle a);

using Polygon = std::vector<Point2>;

double signed_area(const Polygon& poly);
bool is_simple(const Polygon& poly);
/// Human-readable list of broken polygon invariants (too few vertices, non-finite,
/// self-intersecting, clockwise, zero area). Empty when the polygon is usable.
std::vector<std::string> polygon_problems(const Polygon& poly);
/// Reverses clockwise input so the result is counterclockwise.
Polygon make_ccw(Polygon poly);
Polygon translate(const Polygon& poly, Point2 offset);

struct Segment {
  Point2 a;
  Point2 b;
};

struct SegmentIntersection {
  enum class Kind { none, point, collinear };

  Kind kind = Kind::none;
  /// Crossing point; for collinear overlaps the overlap endpoint nearest the first segment's start.
  Point2 point{};
  /// Far end of the overlap (collinear only).
  Point2 overlap_end{};
};

/// Intersection of closed segments a1-a2 and b1-b2. Endpoint touches count as a point
/// intersection. Throws GeometryError for a zero-length segment.
SegmentIntersection segment_intersection(Point2 a1, Point2 a2, Point2 b1, Point2 b2);

/// Distance from p to the closed segment a-b.
double point_segment_distance(Point2 p, Point2 a, Point2 b);
Point2 closest_point_on_segment(Point2 p, Point2 a, Point2 b);

enum class Containment { inside, on_boundary, outside };

Containment point_in_polygon(Point2 p, const Polygon& poly);

struct RayHit {
  double distance = 0.0;
  Point2 point{};
};

/// First hit of a ray against the edges of a single polygon, ignoring which side the
/// origin is on. Grazing an edge counts as a hit at the start of the overlap.
std::optional<RayHit> ray_cast_edges(Point2 origin, CompassAngle dir, double max_range,
                                     const Polygon& poly);

/// Nearest obstacle hit along dir within max_range. Throws InvalidStateError if the
/// origin is strictly inside an obstacle.
std::optional<RayHit> ray_cast(Point2 origin, CompassAngle dir, double max_range,
                               std::span<const Polygon> obstacles);

/// Outward offset by c with mitered joins. Throws GeometryError when c is negative, too
/// large for the shortest edge, or the offset folds over itself.
Polygon polygon_offset(const Polygon& poly, double c);

/// True when the segment touches the closed polygon (boundary or interior).
bool segment_touches_polygon(Point2 a, Point2 b, const Polygon& poly);

/// Axis-aligned box of a polygon.
struct Box {
  double xmin = 0.0;
  double ymin = 0.0;
  double xmax = 0.0;
  double ymax = 0.0;
};
Box bounding_box(const Polygon& poly);

/// Minimum distance between two polygon boundaries (0 if they cross or one contains the other).
double polygon_distance(const Polygon& a, const Polygon& b);

}  // namespace nspmr
