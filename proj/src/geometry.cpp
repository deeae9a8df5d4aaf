#include "nspmr/geometry.hpp"

#include <algorithm>
#include <limits>
#include <numbers>

namespace nspmr {

CompassAngle::CompassAngle(double degrees) {
  if (!std::isfinite(degrees)) {
    throw GeometryError("compass angle must be finite");
  }
  double d = std::fmod(degrees, 360.0);
  if (d < 0.0) {
    d += 360.0;
  }
  // fmod of a tiny negative number can round up to exactly 360.
  if (d >= 360.0) {
    d = 0.0;
  }
  degrees_ = d;
}

double circular_diff(CompassAngle a, CompassAngle b) {
  const double diff = std::abs(a.degrees() - b.degrees());
  return std::min(diff, 360.0 - diff);
}

CompassAngle math_to_compass(double math_degrees) { return CompassAngle(90.0 - math_degrees); }

double compass_to_math(CompassAngle a) { return CompassAngle(90.0 - a.degrees()).degrees(); }

Point2 heading_vector(CompassAngle a) {
  // The eight lattice headings get exact components so lattice motion stays exact.
  static constexpr double kHalfSqrt2 = 0.70710678118654752440;
  const double deg = a.degrees();
  const double k = deg / 45.0;
  if (std::abs(k - std::round(k)) < 1e-12) {
    switch (static_cast<int>(std::lround(k)) % 8) {
      case 0: return {0.0, 1.0};
      case 1: return {kHalfSqrt2, kHalfSqrt2};
      case 2: return {1.0, 0.0};
      case 3: return {kHalfSqrt2, -kHalfSqrt2};
      case 4: return {0.0, -1.0};
      case 5: return {-kHalfSqrt2, -kHalfSqrt2};
      case 6: return {-1.0, 0.0};
      default: return {-kHalfSqrt2, kHalfSqrt2};
    }
  }
  const double rad = deg * std::numbers::pi / 180.0;
  return {std::sin(rad), std::cos(rad)};
}

double signed_area(const Polygon& poly) {
  double twice = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    twice += cross(poly[i], poly[(i + 1) % poly.size()]);
  }
  return 0.5 * twice;
}

SegmentIntersection segment_intersection(Point2 a1, Point2 a2, Point2 b1, Point2 b2) {
  const Point2 r = a2 - a1;
  const Point2 s = b2 - b1;
  const double rlen = norm(r);
  const double slen = norm(s);
  if (rlen <= kGeomEps || slen <= kGeomEps) {
    throw GeometryError("segment_intersection: zero-length segment");
  }

  SegmentIntersection out;
  const Point2 qp = b1 - a1;
  const double denom = cross(r, s);

  if (std::abs(denom) <= kGeomEps * rlen * slen) {
    // Parallel. Only collinear segments can still meet.
    if (std::abs(cross(qp, r)) > kGeomEps * rlen) {
      return out;
    }
    const double rr = rlen * rlen;
    const double t0 = dot(b1 - a1, r) / rr;
    const double t1 = dot(b2 - a1, r) / rr;
    const double lo = std::max(0.0, std::min(t0, t1));
    const double hi = std::min(1.0, std::max(t0, t1));
    const double tol = kGeomEps / rlen;
    if (lo > hi + tol) {
      return out;
    }
    if ((hi - lo) * rlen <= kGeomEps) {
      out.kind = SegmentIntersection::Kind::point;
      out.point = a1 + r * std::clamp(lo, 0.0, 1.0);
      return out;
    }
    out.kind = SegmentIntersection::Kind::collinear;
    out.point = a1 + r * lo;
    out.overlap_end = a1 + r * hi;
    return out;
  }

  const double t = cross(qp, s) / denom;
  const double u = cross(qp, r) / denom;
  const double tol_t = kGeomEps / rlen;
  const double tol_u = kGeomEps / slen;
  if (t < -tol_t || t > 1.0 + tol_t || u < -tol_u || u > 1.0 + tol_u) {
    return out;
  }
  out.kind = SegmentIntersection::Kind::point;
  out.point = a1 + r * std::clamp(t, 0.0, 1.0);
  return out;
}

Point2 closest_point_on_segment(Point2 p, Point2 a, Point2 b) {
  const Point2 ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 == 0.0) {
    return a;
  }
  const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return a + ab * t;
}

double point_segment_distance(Point2 p, Point2 a, Point2 b) {
  return distance(p, closest_point_on_segment(p, a, b));
}

bool is_simple(const Polygon& poly) {
  const std::size_t n = poly.size();
  if (n < 3) {
    return false;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (distance(poly[i], poly[(i + 1) % n]) <= kGeomEps) {
      return false;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a1 = poly[i];
    const Point2 a2 = poly[(i + 1) % n];
    for (std::size_t j = i + 1; j < n; ++j) {
      const Point2 b1 = poly[j];
      const Point2 b2 = poly[(j + 1) % n];
      const auto hit = segment_intersection(a1, a2, b1, b2);
      const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      if (adjacent) {
        // Neighbours share exactly one vertex; a fold-back shows up as an overlap.
        if (hit.kind == SegmentIntersection::Kind::collinear) {
          return false;
        }
        continue;
      }
      if (hit.kind != SegmentIntersection::Kind::none) {
        return false;
      }
    }
  }
  return true;
}

std::vector<std::string> polygon_problems(const Polygon& poly) {
  std::vector<std::string> problems;
  if (poly.size() < 3) {
    problems.emplace_back("polygon needs at least 3 vertices");
    return problems;
  }
  for (const auto& p : poly) {
    if (!is_finite(p)) {
      problems.emplace_back("polygon has a non-finite coordinate");
      return problems;
    }
  }
  if (!is_simple(poly)) {
    problems.emplace_back("polygon is self-intersecting");
  }
  const double area = signed_area(poly);
  if (std::abs(area) <= kGeomEps) {
    problems.emplace_back("polygon has zero area");
  } else if (area < 0.0) {
    problems.emplace_back("polygon is clockwise");
  }
  return problems;
}

Polygon make_ccw(Polygon poly) {
  if (signed_area(poly) < 0.0) {
    std::reverse(poly.begin(), poly.end());
  }
  return poly;
}

Polygon translate(const Polygon& poly, Point2 offset) {
  Polygon out;
  out.reserve(poly.size());
  for (const auto& p : poly) {
    out.push_back(p + offset);
  }
  return out;
}

Containment point_in_polygon(Point2 p, const Polygon& poly) {
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (point_segment_distance(p, poly[i], poly[(i + 1) % n]) <= kGeomEps) {
      return Containment::on_boundary;
    }
  }
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point2 a = poly[i];
    const Point2 b = poly[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x_cross = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x_cross) {
        inside = !inside;
      }
    }
  }
  return inside ? Containment::inside : Containment::outside;
}

std::optional<RayHit> ray_cast_edges(Point2 origin, CompassAngle dir, double max_range,
                                     const Polygon& poly) {
  if (!(max_range > 0.0)) {
    throw GeometryError("ray_cast: max_range must be positive");
  }
  const Point2 u = heading_vector(dir);
  const Point2 end = origin + u * max_range;
  std::optional<RayHit> best;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a = poly[i];
    const Point2 b = poly[(i + 1) % n];
    const auto hit = segment_intersection(origin, end, a, b);
    if (hit.kind == SegmentIntersection::Kind::none) {
      continue;
    }
    // Measure along the unit ray so the distance does not depend on max_range.
    double d = distance(origin, hit.point);
    if (hit.kind == SegmentIntersection::Kind::point) {
      const double den = cross(u, b - a);
      if (std::abs(den) > kGeomEps) {
        d = std::clamp(cross(a - origin, b - a) / den, 0.0, max_range);
      }
    }
    if (!best || d < best->distance) {
      best = RayHit{d, origin + u * d};
    }
  }
  return best;
}

std::optional<RayHit> ray_cast(Point2 origin, CompassAngle dir, double max_range,
                               std::span<const Polygon> obstacles) {
  std::optional<RayHit> best;
  for (const auto& poly : obstacles) {
    if (point_in_polygon(origin, poly) == Containment::inside) {
      throw InvalidStateError("ray_cast: origin lies inside an obstacle");
    }
    const auto hit = ray_cast_edges(origin, dir, max_range, poly);
    if (hit && (!best || hit->distance < best->distance)) {
      best = hit;
    }
  }
  return best;
}

Polygon polygon_offset(const Polygon& poly, double c) {
  if (!(c >= 0.0)) {
    throw GeometryError("polygon_offset: clearance must be non-negative");
  }
  if (!polygon_problems(poly).empty()) {
    throw GeometryError("polygon_offset: input polygon is not simple and counterclockwise");
  }
  if (c == 0.0) {
    return poly;
  }
  const std::size_t n = poly.size();
  double min_edge = std::numeric_limits<double>::infinity();
  std::vector<Point2> dirs(n);
  std::vector<Point2> base(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 e = poly[(i + 1) % n] - poly[i];
    const double len = norm(e);
    min_edge = std::min(min_edge, len);
    dirs[i] = e * (1.0 / len);
    // Right-hand normal points away from the interior of a counterclockwise polygon.
    base[i] = poly[i] + Point2{dirs[i].y, -dirs[i].x} * c;
  }
  if (c >= min_edge) {
    throw GeometryError("polygon_offset: clearance is not small relative to the shortest edge");
  }

  Polygon out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t prev = (i + n - 1) % n;
    const double turn = cross(dirs[prev], dirs[i]);
    if (std::abs(turn) < 1e-12) {
      out[i] = poly[i] + Point2{dirs[i].y, -dirs[i].x} * c;
      continue;
    }
    const double t = cross(base[i] - base[prev], dirs[i]) / turn;
    out[i] = base[prev] + dirs[prev] * t;
  }

  for (std::size_t i = 0; i < n; ++i) {
    const Point2 e = out[(i + 1) % n] - out[i];
    if (dot(e, dirs[i]) <= 0.0) {
      throw GeometryError("polygon_offset: an edge collapsed; clearance too large for this shape");
    }
  }
  if (!is_simple(out) || signed_area(out) <= 0.0) {
    throw GeometryError("polygon_offset: offset polygon self-intersects");
  }
  return out;
}

bool segment_touches_polygon(Point2 a, Point2 b, const Polygon& poly) {
  if (point_in_polygon(a, poly) != Containment::outside) {
    return true;
  }
  if (distance(a, b) <= kGeomEps) {
    return false;
  }
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (segment_intersection(a, b, poly[i], poly[(i + 1) % n]).kind !=
        SegmentIntersection::Kind::none) {
      return true;
    }
  }
  return false;
}

Box bounding_box(const Polygon& poly) {
  Box box{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
          -std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const auto& p : poly) {
    box.xmin = std::min(box.xmin, p.x);
    box.ymin = std::min(box.ymin, p.y);
    box.xmax = std::max(box.xmax, p.x);
    box.ymax = std::max(box.ymax, p.y);
  }
  return box;
}

double polygon_distance(const Polygon& a, const Polygon& b) {
  const std::size_t na = a.size();
  const std::size_t nb = b.size();
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t j = 0; j < nb; ++j) {
      if (segment_intersection(a[i], a[(i + 1) % na], b[j], b[(j + 1) % nb]).kind !=
          SegmentIntersection::Kind::none) {
        return 0.0;
      }
    }
  }
  if (point_in_polygon(a.front(), b) != Containment::outside ||
      point_in_polygon(b.front(), a) != Containment::outside) {
    return 0.0;
  }
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t j = 0; j < nb; ++j) {
      best = std::min(best, point_segment_distance(a[i], b[j], b[(j + 1) % nb]));
      best = std::min(best, point_segment_distance(b[j], a[i], a[(i + 1) % na]));
    }
  }
  return best;
}

}  // namespace nspmr
