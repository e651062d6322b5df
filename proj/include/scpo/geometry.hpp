#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "scpo/error.hpp"

namespace scpo {

// A location in the spatial area. Coordinates are always finite.
struct Point {
  double x = 0.0;
  double y = 0.0;

  constexpr Point() = default;
  Point(double x_, double y_);

  friend bool operator==(const Point&, const Point&) = default;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }

double distance(Point a, Point b);
Point midpoint(Point a, Point b);

// Non-degenerate segment (a != b).
class Segment {
 public:
  Segment(Point a, Point b);

  Point a() const { return a_; }
  Point b() const { return b_; }
  double length() const { return distance(a_, b_); }

 private:
  Point a_;
  Point b_;
};

// Axis-aligned rectangle with x_lo < x_hi and y_lo < y_hi.
class Rect {
 public:
  Rect(double x_lo, double y_lo, double x_hi, double y_hi);

  double x_lo() const { return x_lo_; }
  double y_lo() const { return y_lo_; }
  double x_hi() const { return x_hi_; }
  double y_hi() const { return y_hi_; }
  double width() const { return x_hi_ - x_lo_; }
  double height() const { return y_hi_ - y_lo_; }

  // Closed containment.
  bool contains(Point p) const {
    return p.x >= x_lo_ && p.x <= x_hi_ && p.y >= y_lo_ && p.y <= y_hi_;
  }

  friend bool operator==(const Rect&, const Rect&) = default;

 private:
  double x_lo_;
  double y_lo_;
  double x_hi_;
  double y_hi_;
};

enum class Orientation { Clockwise, CounterClockwise, Collinear };

// Sign of (q - p) x (r - p), no tolerance.
Orientation orientation(Point p, Point q, Point r);

enum class SegmentContact { None, Proper, Touching };

SegmentContact segments_intersect(const Segment& s1, const Segment& s2);

// Closed-segment test for a point known to be collinear-or-not.
bool on_segment(Point p, const Segment& s);

enum class PolygonDefect {
  TooFewVertices,
  RepeatedVertex,
  SelfIntersecting,
  ZeroArea,
};

std::string_view to_string(PolygonDefect defect);

// Returns the first violated invariant, or nullopt when the ring is a valid
// simple polygon (either orientation, closure implicit).
std::optional<PolygonDefect> check_polygon(std::span<const Point> ring);

double signed_area(std::span<const Point> ring);

// Simple polygon, stored counter-clockwise. Construction validates and
// normalizes orientation; throws Error(InvalidPolygon) on a defect.
class Polygon {
 public:
  explicit Polygon(std::vector<Point> vertices);

  std::span<const Point> vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  Point vertex(std::size_t i) const { return vertices_[i]; }
  // Edge i runs from vertex i to vertex i+1 (mod size).
  Segment edge(std::size_t i) const {
    return {vertices_[i], vertices_[(i + 1) % vertices_.size()]};
  }
  const Rect& bounds() const { return bounds_; }
  double area() const { return signed_area(vertices_); }

 private:
  std::vector<Point> vertices_;
  Rect bounds_;
};

class ObstacleSet {
 public:
  ObstacleSet() = default;
  explicit ObstacleSet(std::vector<Polygon> obstacles);

  std::span<const Polygon> obstacles() const { return obstacles_; }
  std::size_t size() const { return obstacles_.size(); }
  bool empty() const { return obstacles_.empty(); }
  std::size_t total_vertex_count() const { return total_vertex_count_; }

 private:
  std::vector<Polygon> obstacles_;
  std::size_t total_vertex_count_ = 0;
};

enum class Containment { Inside, Outside, OnBoundary };

std::string_view to_string(Containment c);

// Ray crossings with a boundary pre-pass.
Containment point_in_polygon(Point p, const Polygon& poly);

// True when p is strictly inside at least one obstacle.
bool inside_any_obstacle(Point p, const ObstacleSet& obs);

bool segment_blocked(const Segment& s, const ObstacleSet& obs);
bool segment_blocked(const Segment& s, const Polygon& poly);

// Closed-region intersection.
bool rect_intersects_polygon(const Rect& r, const Polygon& poly);

// Closed segment vs closed rectangle.
bool segment_intersects_rect(const Segment& s, const Rect& r);

}  // namespace scpo
