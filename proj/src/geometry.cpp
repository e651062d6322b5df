#include "scpo/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace scpo {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::InvalidPolygon: return "InvalidPolygon";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::PointOutsideArea: return "PointOutsideArea";
    case ErrorKind::PointInsideObstacle: return "PointInsideObstacle";
    case ErrorKind::UnknownPointId: return "UnknownPointId";
    case ErrorKind::Unreachable: return "Unreachable";
    case ErrorKind::EmptyRegion: return "EmptyRegion";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::EmptyDataset: return "EmptyDataset";
    case ErrorKind::UnknownScenario: return "UnknownScenario";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

Point::Point(double x_, double y_) : x(x_), y(y_) {
  if (!std::isfinite(x_) || !std::isfinite(y_)) {
    throw Error(ErrorKind::InvalidInput, "point coordinates must be finite");
  }
}

double distance(Point a, Point b) { return std::hypot(b.x - a.x, b.y - a.y); }

Point midpoint(Point a, Point b) {
  return {a.x + 0.5 * (b.x - a.x), a.y + 0.5 * (b.y - a.y)};
}

Segment::Segment(Point a, Point b) : a_(a), b_(b) {
  if (a == b) {
    throw Error(ErrorKind::InvalidInput, "degenerate segment");
  }
}

Rect::Rect(double x_lo, double y_lo, double x_hi, double y_hi)
    : x_lo_(x_lo), y_lo_(y_lo), x_hi_(x_hi), y_hi_(y_hi) {
  if (!std::isfinite(x_lo) || !std::isfinite(y_lo) || !std::isfinite(x_hi) ||
      !std::isfinite(y_hi) || !(x_lo < x_hi) || !(y_lo < y_hi)) {
    throw Error(ErrorKind::InvalidInput, "rectangle requires x_lo < x_hi and y_lo < y_hi");
  }
}

Orientation orientation(Point p, Point q, Point r) {
  const double cross = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
  if (cross > 0.0) return Orientation::CounterClockwise;
  if (cross < 0.0) return Orientation::Clockwise;
  return Orientation::Collinear;
}

namespace {

bool within_box(Point p, Point a, Point b) {
  return p.x >= std::min(a.x, b.x) && p.x <= std::max(a.x, b.x) &&
         p.y >= std::min(a.y, b.y) && p.y <= std::max(a.y, b.y);
}

// Parameter of p along a->b, assuming p is on the supporting line.
double param_along(Point p, Point a, Point b) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  return ((p.x - a.x) * dx + (p.y - a.y) * dy) / (dx * dx + dy * dy);
}

}  // namespace

bool on_segment(Point p, const Segment& s) {
  return orientation(s.a(), s.b(), p) == Orientation::Collinear &&
         within_box(p, s.a(), s.b());
}

SegmentContact segments_intersect(const Segment& s1, const Segment& s2) {
  const Point a = s1.a(), b = s1.b(), c = s2.a(), d = s2.b();
  const Orientation o1 = orientation(a, b, c);
  const Orientation o2 = orientation(a, b, d);
  const Orientation o3 = orientation(c, d, a);
  const Orientation o4 = orientation(c, d, b);

  if (o1 != Orientation::Collinear && o2 != Orientation::Collinear &&
      o3 != Orientation::Collinear && o4 != Orientation::Collinear) {
    return (o1 != o2 && o3 != o4) ? SegmentContact::Proper : SegmentContact::None;
  }
  if ((o1 == Orientation::Collinear && within_box(c, a, b)) ||
      (o2 == Orientation::Collinear && within_box(d, a, b)) ||
      (o3 == Orientation::Collinear && within_box(a, c, d)) ||
      (o4 == Orientation::Collinear && within_box(b, c, d))) {
    return SegmentContact::Touching;
  }
  return SegmentContact::None;
}

std::string_view to_string(PolygonDefect defect) {
  switch (defect) {
    case PolygonDefect::TooFewVertices: return "fewer than 3 vertices";
    case PolygonDefect::RepeatedVertex: return "repeated vertex";
    case PolygonDefect::SelfIntersecting: return "self-intersection";
    case PolygonDefect::ZeroArea: return "zero area";
  }
  return "unknown defect";
}

double signed_area(std::span<const Point> ring) {
  double twice = 0.0;
  for (std::size_t i = 0, n = ring.size(); i < n; ++i) {
    const Point p = ring[i];
    const Point q = ring[(i + 1) % n];
    twice += p.x * q.y - q.x * p.y;
  }
  return 0.5 * twice;
}

std::optional<PolygonDefect> check_polygon(std::span<const Point> ring) {
  const std::size_t n = ring.size();
  if (n < 3) return PolygonDefect::TooFewVertices;

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (ring[i] == ring[j]) return PolygonDefect::RepeatedVertex;
    }
  }
  const auto edge = [&](std::size_t i) { return Segment(ring[i], ring[(i + 1) % n]); };
  for (std::size_t i = 0; i < n; ++i) {
    const Segment ei = edge(i);
    for (std::size_t j = i + 1; j < n; ++j) {
      const Segment ej = edge(j);
      const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      if (adjacent) {
        // Adjacent edges share one vertex; they may not fold back onto each other.
        const Point shared = (j == i + 1) ? ei.b() : ei.a();
        const Point ei_far = (shared == ei.a()) ? ei.b() : ei.a();
        const Point ej_far = (shared == ej.a()) ? ej.b() : ej.a();
        if (on_segment(ej_far, ei) || on_segment(ei_far, ej)) {
          return PolygonDefect::SelfIntersecting;
        }
      } else if (segments_intersect(ei, ej) != SegmentContact::None) {
        return PolygonDefect::SelfIntersecting;
      }
    }
  }
  if (signed_area(ring) == 0.0) return PolygonDefect::ZeroArea;
  return std::nullopt;
}

namespace {

Rect bounding_rect(std::span<const Point> pts) {
  double x_lo = pts[0].x, x_hi = pts[0].x, y_lo = pts[0].y, y_hi = pts[0].y;
  for (const Point& p : pts) {
    x_lo = std::min(x_lo, p.x);
    x_hi = std::max(x_hi, p.x);
    y_lo = std::min(y_lo, p.y);
    y_hi = std::max(y_hi, p.y);
  }
  return {x_lo, y_lo, x_hi, y_hi};
}

std::vector<Point> validated(std::vector<Point> vertices) {
  if (auto defect = check_polygon(vertices)) {
    throw Error(ErrorKind::InvalidPolygon,
                "invalid polygon: " + std::string(to_string(*defect)));
  }
  if (signed_area(vertices) < 0.0) std::reverse(vertices.begin(), vertices.end());
  return vertices;
}

}  // namespace

Polygon::Polygon(std::vector<Point> vertices)
    : vertices_(validated(std::move(vertices))), bounds_(bounding_rect(vertices_)) {}

ObstacleSet::ObstacleSet(std::vector<Polygon> obstacles) : obstacles_(std::move(obstacles)) {
  for (const Polygon& p : obstacles_) total_vertex_count_ += p.size();
}

std::string_view to_string(Containment c) {
  switch (c) {
    case Containment::Inside: return "inside";
    case Containment::Outside: return "outside";
    case Containment::OnBoundary: return "on_boundary";
  }
  return "unknown";
}

Containment point_in_polygon(Point p, const Polygon& poly) {
  const auto verts = poly.vertices();
  const std::size_t n = verts.size();

  for (std::size_t i = 0; i < n; ++i) {
    const Point a = verts[i];
    const Point b = verts[(i + 1) % n];
    if (orientation(a, b, p) == Orientation::Collinear && within_box(p, a, b)) {
      return Containment::OnBoundary;
    }
  }

  // Half-open rule: an edge counts iff exactly one endpoint is strictly above p.
  bool inside = false;
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = verts[i];
    const Point b = verts[(i + 1) % n];
    if ((a.y > p.y) == (b.y > p.y)) continue;
    const Orientation o = orientation(a, b, p);
    const bool crosses_right =
        (b.y > a.y) ? o == Orientation::CounterClockwise : o == Orientation::Clockwise;
    if (crosses_right) inside = !inside;
  }
  return inside ? Containment::Inside : Containment::Outside;
}

bool inside_any_obstacle(Point p, const ObstacleSet& obs) {
  for (const Polygon& poly : obs.obstacles()) {
    if (poly.bounds().contains(p) && point_in_polygon(p, poly) == Containment::Inside) {
      return true;
    }
  }
  return false;
}

bool segment_blocked(const Segment& s, const Polygon& poly) {
  const Point a = s.a(), b = s.b();
  const Rect& box = poly.bounds();
  if (std::max(a.x, b.x) < box.x_lo() || std::min(a.x, b.x) > box.x_hi() ||
      std::max(a.y, b.y) < box.y_lo() || std::min(a.y, b.y) > box.y_hi()) {
    return false;
  }

  // Parameters along s where it touches the boundary without crossing it.
  // Between consecutive contacts s is wholly inside, wholly outside, or runs
  // along an edge (an overlap interval, which is boundary, never interior).
  std::vector<double> contacts{0.0, 1.0};
  std::vector<std::pair<double, double>> overlaps;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Segment e = poly.edge(i);
    switch (segments_intersect(s, e)) {
      case SegmentContact::Proper:
        return true;
      case SegmentContact::Touching: {
        const bool a_on = on_segment(e.a(), s);
        const bool b_on = on_segment(e.b(), s);
        if (a_on) contacts.push_back(param_along(e.a(), a, b));
        if (b_on) contacts.push_back(param_along(e.b(), a, b));
        if (orientation(a, b, e.a()) == Orientation::Collinear &&
            orientation(a, b, e.b()) == Orientation::Collinear) {
          const double ta = std::clamp(param_along(e.a(), a, b), 0.0, 1.0);
          const double tb = std::clamp(param_along(e.b(), a, b), 0.0, 1.0);
          overlaps.emplace_back(std::min(ta, tb), std::max(ta, tb));
        }
        break;
      }
      case SegmentContact::None:
        break;
    }
  }

  std::sort(contacts.begin(), contacts.end());
  for (std::size_t i = 0; i + 1 < contacts.size(); ++i) {
    if (contacts[i + 1] <= contacts[i]) continue;
    const double t = 0.5 * (contacts[i] + contacts[i + 1]);
    const bool along_edge = std::any_of(overlaps.begin(), overlaps.end(), [t](const auto& o) {
      return t >= o.first && t <= o.second;
    });
    if (along_edge) continue;
    const Point probe = (t == 0.5) ? midpoint(a, b)
                                   : Point{a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
    if (point_in_polygon(probe, poly) == Containment::Inside) return true;
  }
  return false;
}

bool segment_blocked(const Segment& s, const ObstacleSet& obs) {
  for (const Polygon& poly : obs.obstacles()) {
    if (segment_blocked(s, poly)) return true;
  }
  return false;
}

namespace {

std::array<Point, 4> corners(const Rect& r) {
  return {Point{r.x_lo(), r.y_lo()}, Point{r.x_hi(), r.y_lo()}, Point{r.x_hi(), r.y_hi()},
          Point{r.x_lo(), r.y_hi()}};
}

bool boxes_overlap(const Rect& a, const Rect& b) {
  return a.x_lo() <= b.x_hi() && b.x_lo() <= a.x_hi() && a.y_lo() <= b.y_hi() &&
         b.y_lo() <= a.y_hi();
}

bool segment_touches_rect_sides(const Segment& s, const std::array<Point, 4>& c) {
  for (std::size_t k = 0; k < 4; ++k) {
    if (segments_intersect(s, Segment(c[k], c[(k + 1) % 4])) != SegmentContact::None) {
      return true;
    }
  }
  return false;
}

}  // namespace

bool segment_intersects_rect(const Segment& s, const Rect& r) {
  if (r.contains(s.a()) || r.contains(s.b())) return true;
  return segment_touches_rect_sides(s, corners(r));
}

bool rect_intersects_polygon(const Rect& r, const Polygon& poly) {
  if (!boxes_overlap(r, poly.bounds())) return false;
  const auto c = corners(r);
  for (std::size_t i = 0; i < poly.size(); ++i) {
    if (segment_touches_rect_sides(poly.edge(i), c)) return true;
  }
  for (Point corner : c) {
    if (point_in_polygon(corner, poly) != Containment::Outside) return true;
  }
  for (Point v : poly.vertices()) {
    if (r.contains(v)) return true;
  }
  return false;
}

}  // namespace scpo
