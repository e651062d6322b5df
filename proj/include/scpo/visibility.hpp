#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "scpo/geometry.hpp"

namespace scpo {

// p and q see each other when the segment between them is not blocked.
// Identical points are trivially visible.
bool mutually_visible(Point p, Point q, const ObstacleSet& obs);

struct VisibilityEdge {
  std::size_t to;
  double length;

  friend bool operator==(const VisibilityEdge&, const VisibilityEdge&) = default;
};

// Visibility graph over all obstacle vertices. Vertex order is obstacle order,
// then each polygon's (counter-clockwise) vertex order. Immutable once built.
class VisibilityGraph {
 public:
  explicit VisibilityGraph(ObstacleSet obstacles);

  std::span<const Point> vertices() const { return vertices_; }
  std::span<const VisibilityEdge> neighbors(std::size_t v) const { return adjacency_[v]; }
  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const;
  const ObstacleSet& obstacles() const { return obstacles_; }

 private:
  ObstacleSet obstacles_;
  std::vector<Point> vertices_;
  std::vector<std::vector<VisibilityEdge>> adjacency_;
};

VisibilityGraph build_visibility_graph(const ObstacleSet& obs);

struct PathResult {
  double length = 0.0;
  std::vector<Point> waypoints;
};

// Shortest obstacle-avoiding path. Throws PointInsideObstacle when either
// endpoint is strictly inside an obstacle.
PathResult obstructed_distance(Point p, Point q, const VisibilityGraph& g);

// All-pairs obstructed distances among `points`, sharing one augmentation of
// the graph. Row-major, size points.size()^2.
std::vector<double> obstructed_distance_matrix(std::span<const Point> points,
                                               const VisibilityGraph& g);

}  // namespace scpo
