#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace topotess {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }
inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double squared_distance(Point2 a, Point2 b) { return dot(a - b, a - b); }

/// Axis-aligned rectangle [xmin, xmax] x [ymin, ymax].
struct Box {
  double xmin = 0.0;
  double ymin = 0.0;
  double xmax = 1.0;
  double ymax = 1.0;

  double width() const { return xmax - xmin; }
  double height() const { return ymax - ymin; }
  double area() const { return width() * height(); }
  bool contains(Point2 p) const { return p.x >= xmin && p.x <= xmax && p.y >= ymin && p.y <= ymax; }
};

struct Circle {
  Point2 center;
  double radius_sq = 0.0;
};

/// Throws Errc::Collinear when the triangle is degenerate relative to its longest side.
Circle circumcircle(Point2 a, Point2 b, Point2 c);

/// Signed shoelace area; positive for counter-clockwise rings.
double signed_area(std::span<const Point2> ring);

/// A convex, counter-clockwise polygon with positive area.
///
/// Clockwise input is reversed. Consecutive collinear vertices are tolerated,
/// reflex vertices are not (Errc::NonConvexPolygon); zero area gives
/// Errc::DegeneratePolygon.
class ConvexPolygon {
public:
  explicit ConvexPolygon(std::vector<Point2> vertices);

  const std::vector<Point2>& vertices() const { return vertices_; }
  double area() const { return area_; }

private:
  std::vector<Point2> vertices_;
  double area_ = 0.0;
};

Point2 polygon_centroid(const ConvexPolygon& polygon);

/// Delaunay triangulation of a point set. Vertex ids are input indices.
class Triangulation {
public:
  Triangulation(std::vector<Point2> points, std::vector<std::array<int, 3>> triangles,
                std::size_t hull_size);

  const std::vector<Point2>& points() const { return points_; }
  /// Counter-clockwise triangles, canonically rotated and sorted.
  const std::vector<std::array<int, 3>>& triangles() const { return triangles_; }
  /// Sorted (a < b) edge list.
  const std::vector<std::array<int, 2>>& edges() const { return edges_; }
  /// For edges()[i], the vertices opposite to it in its one or two triangles (-1 if absent).
  const std::vector<std::array<int, 2>>& edge_opposites() const { return edge_opposites_; }
  /// Number of vertices on the convex hull boundary.
  std::size_t hull_size() const { return hull_size_; }
  /// Delaunay neighbours of vertex v, ascending.
  std::vector<int> neighbors(int v) const;

private:
  std::vector<Point2> points_;
  std::vector<std::array<int, 3>> triangles_;
  std::vector<std::array<int, 2>> edges_;
  std::vector<std::array<int, 2>> edge_opposites_;
  std::vector<std::vector<int>> adjacency_;
  std::size_t hull_size_ = 0;
};

/// Incremental Bowyer-Watson triangulation.
///
/// Errors: FewerThanThreePoints, AllCollinear, DuplicatePoints, NonFinitePoint.
/// Cocircular ties are broken by a symbolic lift perturbation that grows with
/// the input index, so the result does not depend on insertion order.
Triangulation delaunay(std::span<const Point2> points);

/// Voronoi regions clipped to `box`, one per input point, in input order.
std::vector<ConvexPolygon> voronoi_cells(std::span<const Point2> points, const Box& box);

/// Same, reusing an existing triangulation of `points`.
std::vector<ConvexPolygon> voronoi_cells(const Triangulation& dt, const Box& box);

} // namespace topotess
