#include "topotess/geometry.hpp"

#include "topotess/errors.hpp"
#include "topotess/predicates.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace topotess {

Circle circumcircle(Point2 a, Point2 b, Point2 c) {
  if (predicates::orient(a, b, c) == 0) throw Error(Errc::Collinear, "circumcircle of collinear points");
  // Solve relative to a for accuracy.
  const long double bx = static_cast<long double>(b.x) - a.x, by = static_cast<long double>(b.y) - a.y;
  const long double cx = static_cast<long double>(c.x) - a.x, cy = static_cast<long double>(c.y) - a.y;
  const long double d = 2.0L * (bx * cy - by * cx);
  const long double b2 = bx * bx + by * by;
  const long double c2 = cx * cx + cy * cy;
  const long double ux = (cy * b2 - by * c2) / d;
  const long double uy = (bx * c2 - cx * b2) / d;
  return {{static_cast<double>(a.x + ux), static_cast<double>(a.y + uy)},
          static_cast<double>(ux * ux + uy * uy)};
}

double signed_area(std::span<const Point2> ring) {
  if (ring.size() < 3) return 0.0;
  // Shoelace relative to the first vertex.
  const Point2 o = ring[0];
  long double twice = 0.0L;
  for (std::size_t i = 1; i + 1 < ring.size(); ++i)
    twice += static_cast<long double>(cross(ring[i] - o, ring[i + 1] - o));
  return static_cast<double>(twice / 2.0L);
}

ConvexPolygon::ConvexPolygon(std::vector<Point2> vertices) : vertices_(std::move(vertices)) {
  for (const auto& p : vertices_)
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw Error(Errc::NonFinitePoint, "polygon vertex");
  if (vertices_.size() < 3) throw Error(Errc::DegeneratePolygon, "fewer than three vertices");
  double area = signed_area(vertices_);
  if (area < 0) {
    std::reverse(vertices_.begin(), vertices_.end());
    area = -area;
  }
  double scale = 0.0;
  for (const auto& p : vertices_) scale = std::max(scale, squared_distance(p, vertices_[0]));
  if (!(area > predicates::kDegenerateTolerance * scale)) throw Error(Errc::DegeneratePolygon, "zero area");
  const std::size_t n = vertices_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a = vertices_[i], b = vertices_[(i + 1) % n], c = vertices_[(i + 2) % n];
    if (cross(b - a, c - b) < -predicates::kDegenerateTolerance * scale)
      throw Error(Errc::NonConvexPolygon, "reflex vertex");
  }
  area_ = area;
}

Point2 polygon_centroid(const ConvexPolygon& polygon) {
  const auto& v = polygon.vertices();
  const Point2 o = v[0];
  long double twice = 0.0L, cx = 0.0L, cy = 0.0L;
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    const Point2 p = v[i] - o, q = v[i + 1] - o;
    const long double w = cross(p, q);
    twice += w;
    cx += w * (static_cast<long double>(p.x) + q.x);
    cy += w * (static_cast<long double>(p.y) + q.y);
  }
  if (!(twice > 0)) throw Error(Errc::DegeneratePolygon, "centroid of zero-area polygon");
  return {static_cast<double>(o.x + cx / (3.0L * twice)), static_cast<double>(o.y + cy / (3.0L * twice))};
}

Triangulation::Triangulation(std::vector<Point2> points, std::vector<std::array<int, 3>> triangles,
                             std::size_t hull_size)
    : points_(std::move(points)), triangles_(std::move(triangles)), hull_size_(hull_size) {
  std::map<std::array<int, 2>, std::array<int, 2>> opposite;
  for (const auto& t : triangles_) {
    for (int k = 0; k < 3; ++k) {
      int a = t[k], b = t[(k + 1) % 3];
      if (a > b) std::swap(a, b);
      auto [it, fresh] = opposite.try_emplace({a, b}, std::array<int, 2>{-1, -1});
      auto& slot = it->second;
      (slot[0] < 0 ? slot[0] : slot[1]) = t[(k + 2) % 3];
    }
  }
  adjacency_.resize(points_.size());
  edges_.reserve(opposite.size());
  edge_opposites_.reserve(opposite.size());
  for (const auto& [e, opp] : opposite) {
    edges_.push_back(e);
    edge_opposites_.push_back(opp);
    adjacency_[e[0]].push_back(e[1]);
    adjacency_[e[1]].push_back(e[0]);
  }
  for (auto& adj : adjacency_) std::sort(adj.begin(), adj.end());
}

std::vector<int> Triangulation::neighbors(int v) const { return adjacency_.at(static_cast<std::size_t>(v)); }

namespace {

// Keep the part of `poly` on the side of p's bisector with q that contains p.
std::vector<Point2> clip_halfplane(const std::vector<Point2>& poly, Point2 p, Point2 q) {
  const Point2 normal = q - p;
  const Point2 mid = 0.5 * (p + q);
  auto side = [&](Point2 x) { return dot(x - mid, normal); };
  std::vector<Point2> out;
  out.reserve(poly.size() + 1);
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point2 cur = poly[i], nxt = poly[(i + 1) % poly.size()];
    const double sc = side(cur), sn = side(nxt);
    if (sc <= 0) out.push_back(cur);
    if ((sc < 0 && sn > 0) || (sc > 0 && sn < 0)) {
      const double t = sc / (sc - sn);
      out.push_back(cur + t * (nxt - cur));
    }
  }
  return out;
}

std::vector<Point2> drop_repeats(std::vector<Point2> ring, double eps_sq) {
  std::vector<Point2> out;
  out.reserve(ring.size());
  for (const auto& p : ring)
    if (out.empty() || squared_distance(out.back(), p) > eps_sq) out.push_back(p);
  while (out.size() > 1 && squared_distance(out.front(), out.back()) <= eps_sq) out.pop_back();
  return out;
}

std::vector<Point2> box_ring(const Box& box) {
  return {{box.xmin, box.ymin}, {box.xmax, box.ymin}, {box.xmax, box.ymax}, {box.xmin, box.ymax}};
}

void check_inside(std::span<const Point2> points, const Box& box) {
  for (const auto& p : points)
    if (!box.contains(p)) throw Error(Errc::PointOutsideBox, "Voronoi generator outside clipping box");
}

} // namespace

std::vector<ConvexPolygon> voronoi_cells(const Triangulation& dt, const Box& box) {
  const auto& pts = dt.points();
  check_inside(pts, box);
  const double eps_sq = 1e-24 * (box.width() * box.width() + box.height() * box.height());
  std::vector<ConvexPolygon> cells;
  cells.reserve(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    auto ring = box_ring(box);
    for (int j : dt.neighbors(static_cast<int>(i))) ring = clip_halfplane(ring, pts[i], pts[j]);
    cells.emplace_back(drop_repeats(std::move(ring), eps_sq));
  }
  return cells;
}

std::vector<ConvexPolygon> voronoi_cells(std::span<const Point2> points, const Box& box) {
  if (points.size() >= 3) return voronoi_cells(delaunay(points), box);
  check_inside(points, box);
  std::vector<ConvexPolygon> cells;
  if (points.size() == 1) {
    cells.emplace_back(box_ring(box));
  } else if (points.size() == 2) {
    if (points[0] == points[1]) throw Error(Errc::DuplicatePoints, "identical generators");
    cells.emplace_back(clip_halfplane(box_ring(box), points[0], points[1]));
    cells.emplace_back(clip_halfplane(box_ring(box), points[1], points[0]));
  }
  return cells;
}

} // namespace topotess
