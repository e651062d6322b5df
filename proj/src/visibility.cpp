#include "scpo/visibility.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <limits>
#include <queue>
#include <utility>

namespace scpo {

bool mutually_visible(Point p, Point q, const ObstacleSet& obs) {
  if (p == q) return true;
  return !segment_blocked(Segment(p, q), obs);
}

VisibilityGraph::VisibilityGraph(ObstacleSet obstacles) : obstacles_(std::move(obstacles)) {
  vertices_.reserve(obstacles_.total_vertex_count());
  for (const Polygon& poly : obstacles_.obstacles()) {
    for (Point v : poly.vertices()) vertices_.push_back(v);
  }
  const std::size_t n = vertices_.size();
  adjacency_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      // Vertices shared by two touching obstacles collapse to one location.
      if (vertices_[i] == vertices_[j]) {
        adjacency_[i].push_back({j, 0.0});
        adjacency_[j].push_back({i, 0.0});
        continue;
      }
      if (mutually_visible(vertices_[i], vertices_[j], obstacles_)) {
        const double len = distance(vertices_[i], vertices_[j]);
        adjacency_[i].push_back({j, len});
        adjacency_[j].push_back({i, len});
      }
    }
  }
}

std::size_t VisibilityGraph::edge_count() const {
  std::size_t twice = 0;
  for (const auto& row : adjacency_) twice += row.size();
  return twice / 2;
}

VisibilityGraph build_visibility_graph(const ObstacleSet& obs) { return VisibilityGraph(obs); }

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Graph vertices followed by extra query points. Edges among extra points
// and from extra points to graph vertices are resolved up front.
class AugmentedGraph {
 public:
  AugmentedGraph(const VisibilityGraph& g, std::span<const Point> extra)
      : g_(g), extra_(extra.begin(), extra.end()) {
    const std::size_t base = g.vertex_count();
    const ObstacleSet& obs = g.obstacles();
    const std::size_t k_count = extra_.size();
    extra_adj_.resize(k_count);
    to_extra_.resize(base);
    extra_visible_.assign(k_count * k_count, 0);
    for (std::size_t k = 0; k < k_count; ++k) {
      for (std::size_t v = 0; v < base; ++v) {
        if (mutually_visible(extra_[k], g.vertices()[v], obs)) {
          const double len = distance(extra_[k], g.vertices()[v]);
          extra_adj_[k].push_back({v, len});
          to_extra_[v].push_back({base + k, len});
        }
      }
    }
    for (std::size_t k = 0; k < k_count; ++k) {
      extra_visible_[k * k_count + k] = 1;
      for (std::size_t l = k + 1; l < k_count; ++l) {
        if (mutually_visible(extra_[k], extra_[l], obs)) {
          const double len = distance(extra_[k], extra_[l]);
          extra_adj_[k].push_back({base + l, len});
          extra_adj_[l].push_back({base + k, len});
          extra_visible_[k * k_count + l] = extra_visible_[l * k_count + k] = 1;
        }
      }
    }
  }

  bool extra_visible(std::size_t k, std::size_t l) const {
    return extra_visible_[k * extra_.size() + l] != 0;
  }

  std::size_t size() const { return g_.vertex_count() + extra_.size(); }
  Point position(std::size_t v) const {
    return v < g_.vertex_count() ? g_.vertices()[v] : extra_[v - g_.vertex_count()];
  }

  template <typename Visit>
  void for_each_neighbor(std::size_t v, Visit&& visit) const {
    const std::size_t base = g_.vertex_count();
    if (v < base) {
      for (const VisibilityEdge& e : g_.neighbors(v)) visit(e);
      for (const VisibilityEdge& e : to_extra_[v]) visit(e);
    } else {
      for (const VisibilityEdge& e : extra_adj_[v - base]) visit(e);
    }
  }

  // Single-source Dijkstra; ties in distance pop the smaller index first and
  // a predecessor is only replaced on strict improvement.
  void shortest_paths(std::size_t source, std::vector<double>& dist,
                      std::vector<std::size_t>& pred) const {
    const std::size_t n = size();
    dist.assign(n, kInf);
    pred.assign(n, n);
    using Entry = std::pair<double, std::size_t>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
    dist[source] = 0.0;
    open.emplace(0.0, source);
    while (!open.empty()) {
      const auto [d, v] = open.top();
      open.pop();
      if (d > dist[v]) continue;
      for_each_neighbor(v, [&](const VisibilityEdge& e) {
        const double nd = d + e.length;
        if (nd < dist[e.to]) {
          dist[e.to] = nd;
          pred[e.to] = v;
          open.emplace(nd, e.to);
        }
      });
    }
  }

 private:
  const VisibilityGraph& g_;
  std::vector<Point> extra_;
  std::vector<std::vector<VisibilityEdge>> extra_adj_;
  std::vector<std::vector<VisibilityEdge>> to_extra_;
  std::vector<char> extra_visible_;
};

void require_free(Point p, const ObstacleSet& obs) {
  if (inside_any_obstacle(p, obs)) {
    throw Error(ErrorKind::PointInsideObstacle,
                "query point (" + std::to_string(p.x) + ", " + std::to_string(p.y) +
                    ") lies strictly inside an obstacle");
  }
}

}  // namespace

PathResult obstructed_distance(Point p, Point q, const VisibilityGraph& g) {
  const ObstacleSet& obs = g.obstacles();
  require_free(p, obs);
  require_free(q, obs);

  if (p == q) return {0.0, {p}};
  if (mutually_visible(p, q, obs)) return {distance(p, q), {p, q}};

  const std::array<Point, 2> ends{p, q};
  const AugmentedGraph aug(g, ends);
  const std::size_t source = g.vertex_count();
  const std::size_t target = source + 1;
  std::vector<double> dist;
  std::vector<std::size_t> pred;
  aug.shortest_paths(source, dist, pred);
  if (dist[target] == kInf) {
    throw Error(ErrorKind::Unreachable, "no obstacle-free path between query points");
  }

  PathResult result;
  result.length = dist[target];
  for (std::size_t v = target; v != source; v = pred[v]) {
    result.waypoints.push_back(aug.position(v));
  }
  result.waypoints.push_back(p);
  std::reverse(result.waypoints.begin(), result.waypoints.end());
  return result;
}

std::vector<double> obstructed_distance_matrix(std::span<const Point> points,
                                               const VisibilityGraph& g) {
  const ObstacleSet& obs = g.obstacles();
  for (Point p : points) require_free(p, obs);

  const std::size_t k = points.size();
  std::vector<double> matrix(k * k, 0.0);
  if (k == 0) return matrix;

  const AugmentedGraph aug(g, points);
  const std::size_t base = g.vertex_count();
  std::vector<double> dist;
  std::vector<std::size_t> pred;
  for (std::size_t i = 0; i < k; ++i) {
    aug.shortest_paths(base + i, dist, pred);
    for (std::size_t j = 0; j < k; ++j) {
      if (i == j || points[i] == points[j]) {
        matrix[i * k + j] = 0.0;
      } else if (dist[base + j] == kInf) {
        throw Error(ErrorKind::Unreachable, "no obstacle-free path between query points");
      } else {
        matrix[i * k + j] = dist[base + j];
      }
    }
  }
  // Dijkstra from each side can differ in the last bit; pin symmetry and the
  // straight-line value for visible pairs.
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      if (points[i] == points[j]) continue;
      double d = std::min(matrix[i * k + j], matrix[j * k + i]);
      if (aug.extra_visible(i, j)) d = distance(points[i], points[j]);
      matrix[i * k + j] = matrix[j * k + i] = d;
    }
  }
  return matrix;
}

}  // namespace scpo
