#include "topotess/errors.hpp"
#include "topotess/geometry.hpp"
#include "topotess/predicates.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

namespace topotess {
namespace {

constexpr int kGhost = -1;

// nb[k] is the triangle across the edge opposite v[k].
struct Tri {
  std::array<int, 3> v;
  std::array<int, 3> nb;
  bool alive = true;
};

std::uint64_t hilbert_index(std::uint32_t x, std::uint32_t y, std::uint32_t order) {
  std::uint64_t d = 0;
  for (std::uint32_t s = 1u << (order - 1); s > 0; s >>= 1) {
    const std::uint32_t rx = (x & s) ? 1 : 0;
    const std::uint32_t ry = (y & s) ? 1 : 0;
    d += static_cast<std::uint64_t>(s) * s * ((3 * rx) ^ ry);
    if (ry == 0) {
      if (rx == 1) {
        x = s - 1 - x;
        y = s - 1 - y;
      }
      std::swap(x, y);
    }
  }
  return d;
}

void validate(std::span<const Point2> pts) {
  for (const auto& p : pts)
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw Error(Errc::NonFinitePoint, "non-finite coordinate");
  if (pts.size() < 3) throw Error(Errc::FewerThanThreePoints, std::to_string(pts.size()) + " points");
  std::vector<int> order(pts.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return pts[a].x != pts[b].x ? pts[a].x < pts[b].x : pts[a].y < pts[b].y;
  });
  for (std::size_t i = 1; i < order.size(); ++i)
    if (pts[order[i]] == pts[order[i - 1]])
      throw Error(Errc::DuplicatePoints,
                  "points " + std::to_string(order[i - 1]) + " and " + std::to_string(order[i]));
}

class BowyerWatson {
public:
  explicit BowyerWatson(std::span<const Point2> pts) : pts_(pts) {}

  Triangulation run() {
    const auto seed = initial_triangle();
    for (int i : insertion_order(seed)) insert(i);

    std::vector<std::array<int, 3>> out;
    std::size_t hull = 0;
    for (const auto& t : tris_) {
      if (!t.alive) continue;
      if (is_ghost(t)) {
        ++hull;
        continue;
      }
      auto v = t.v;
      std::rotate(v.begin(), std::min_element(v.begin(), v.end()), v.end());
      out.push_back(v);
    }
    std::sort(out.begin(), out.end());
    return Triangulation(std::vector<Point2>(pts_.begin(), pts_.end()), std::move(out), hull);
  }

private:
  static bool is_ghost(const Tri& t) { return t.v[0] == kGhost || t.v[1] == kGhost || t.v[2] == kGhost; }
  Point2 pt(int i) const { return pts_[static_cast<std::size_t>(i)]; }

  std::array<int, 3> initial_triangle() const {
    const int a = 0;
    int b = 1;
    for (int i = 2; i < static_cast<int>(pts_.size()); ++i)
      if (squared_distance(pt(i), pt(a)) > squared_distance(pt(b), pt(a))) b = i;
    int c = -1;
    long double best = 0.0L;
    for (int i = 0; i < static_cast<int>(pts_.size()); ++i) {
      if (i == a || i == b || predicates::orient(pt(a), pt(b), pt(i)) == 0) continue;
      const long double area = std::fabs(predicates::orient_det(pt(a), pt(b), pt(i)));
      if (area > best) {
        best = area;
        c = i;
      }
    }
    if (c < 0) throw Error(Errc::AllCollinear, std::to_string(pts_.size()) + " collinear points");
    if (predicates::orient(pt(a), pt(b), pt(c)) < 0) std::swap(b, c);
    return {a, b, c};
  }

  std::vector<int> insertion_order(const std::array<int, 3>& seed) {
    // Real triangle 0 plus one ghost per edge: ghost k sits across edge (v[k+1], v[k+2]).
    tris_.push_back({seed, {2, 3, 1}});
    tris_.push_back({{seed[1], seed[0], kGhost}, {2, 3, 0}});
    tris_.push_back({{seed[2], seed[1], kGhost}, {3, 1, 0}});
    tris_.push_back({{seed[0], seed[2], kGhost}, {1, 2, 0}});
    // Fix neighbours explicitly: real triangle's edge opposite v[k].
    tris_[0].nb = {2, 3, 1};
    // ghost 1 = (s1, s0, g): opp s1 -> edge (s0,g) shared with ghost 3 (s0,s2,g);
    // opp s0 -> edge (g,s1) shared with ghost 2 (s2,s1,g); opp g -> real.
    tris_[1].nb = {3, 2, 0};
    tris_[2].nb = {1, 3, 0};
    tris_[3].nb = {2, 1, 0};
    last_ = 0;

    double xmin = pts_[0].x, xmax = xmin, ymin = pts_[0].y, ymax = ymin;
    for (const auto& p : pts_) {
      xmin = std::min(xmin, p.x);
      xmax = std::max(xmax, p.x);
      ymin = std::min(ymin, p.y);
      ymax = std::max(ymax, p.y);
    }
    const double sx = xmax > xmin ? 65535.0 / (xmax - xmin) : 0.0;
    const double sy = ymax > ymin ? 65535.0 / (ymax - ymin) : 0.0;
    std::vector<std::pair<std::uint64_t, int>> keyed;
    for (int i = 0; i < static_cast<int>(pts_.size()); ++i) {
      if (i == seed[0] || i == seed[1] || i == seed[2]) continue;
      const auto hx = static_cast<std::uint32_t>((pt(i).x - xmin) * sx);
      const auto hy = static_cast<std::uint32_t>((pt(i).y - ymin) * sy);
      keyed.emplace_back(hilbert_index(hx, hy, 16), i);
    }
    std::sort(keyed.begin(), keyed.end());
    std::vector<int> order;
    order.reserve(keyed.size());
    for (const auto& [key, i] : keyed) order.push_back(i);
    return order;
  }

  bool in_conflict(const Tri& t, int ip) const {
    const Point2 p = pt(ip);
    for (int g = 0; g < 3; ++g) {
      if (t.v[g] != kGhost) continue;
      const Point2 a = pt(t.v[(g + 1) % 3]), b = pt(t.v[(g + 2) % 3]);
      const int o = predicates::orient(a, b, p);
      if (o != 0) return o > 0;
      return dot(p - a, b - a) > 0 && dot(p - b, a - b) > 0;
    }
    return predicates::incircle_perturbed(pt(t.v[0]), t.v[0], pt(t.v[1]), t.v[1], pt(t.v[2]), t.v[2], p, ip) >
           0;
  }

  int locate(int ip) const {
    const Point2 p = pt(ip);
    int t = last_;
    const std::size_t limit = 4 * tris_.size() + 16;
    for (std::size_t step = 0; step < limit; ++step) {
      const Tri& tri = tris_[t];
      int g = -1;
      for (int k = 0; k < 3; ++k)
        if (tri.v[k] == kGhost) g = k;
      if (g >= 0) {
        if (in_conflict(tri, ip)) return t;
        t = tri.nb[g];
        continue;
      }
      bool moved = false;
      for (int r = 0; r < 3 && !moved; ++r) {
        const int k = static_cast<int>((r + step) % 3);
        if (predicates::orient(pt(tri.v[(k + 1) % 3]), pt(tri.v[(k + 2) % 3]), p) < 0) {
          t = tri.nb[k];
          moved = true;
        }
      }
      if (!moved) return t;
    }
    for (int i = static_cast<int>(tris_.size()) - 1; i >= 0; --i)
      if (tris_[i].alive && in_conflict(tris_[i], ip)) return i;
    throw Error(Errc::AllCollinear, "point location failed");
  }

  void insert(int ip) {
    const int start = locate(ip);
    ++stamp_;
    marks_.resize(tris_.size(), 0);
    std::vector<int> cavity{start};
    marks_[start] = stamp_;
    for (std::size_t head = 0; head < cavity.size(); ++head) {
      for (int n : tris_[cavity[head]].nb) {
        if (marks_[n] == stamp_ || !in_conflict(tris_[n], ip)) continue;
        marks_[n] = stamp_;
        cavity.push_back(n);
      }
    }
    repair_cavity(cavity, start, ip);

    struct Boundary {
      int u, v, outer, old;
    };
    std::vector<Boundary> boundary;
    for (int t : cavity)
      for (int k = 0; k < 3; ++k) {
        const int n = tris_[t].nb[k];
        if (marks_[n] != stamp_) boundary.push_back({tris_[t].v[(k + 1) % 3], tris_[t].v[(k + 2) % 3], n, t});
      }

    const int first = static_cast<int>(tris_.size());
    for (const auto& e : boundary) tris_.push_back({{e.u, e.v, ip}, {-1, -1, e.outer}});
    for (std::size_t i = 0; i < boundary.size(); ++i) {
      const int id = first + static_cast<int>(i);
      Tri& nt = tris_[id];
      for (std::size_t j = 0; j < boundary.size(); ++j) {
        if (boundary[j].u == boundary[i].v) nt.nb[0] = first + static_cast<int>(j);
        if (boundary[j].v == boundary[i].u) nt.nb[1] = first + static_cast<int>(j);
      }
      Tri& outer = tris_[boundary[i].outer];
      for (int k = 0; k < 3; ++k)
        if (outer.nb[k] == boundary[i].old) outer.nb[k] = id;
    }
    for (int t : cavity) tris_[t].alive = false;
    marks_.resize(tris_.size(), 0);
    last_ = first;
  }

  // Shrink the cavity until every boundary edge is strictly visible from the new point.
  void repair_cavity(std::vector<int>& cavity, int start, int ip) {
    const Point2 p = pt(ip);
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t i = 0; i < cavity.size() && !changed; ++i) {
        const int t = cavity[i];
        if (t == start) continue;
        for (int k = 0; k < 3; ++k) {
          if (marks_[tris_[t].nb[k]] == stamp_) continue;
          const int u = tris_[t].v[(k + 1) % 3], v = tris_[t].v[(k + 2) % 3];
          if (u == kGhost || v == kGhost) continue;
          if (predicates::orient(pt(u), pt(v), p) <= 0) {
            marks_[t] = 0;
            cavity.erase(cavity.begin() + static_cast<std::ptrdiff_t>(i));
            changed = true;
            break;
          }
        }
      }
    }
  }

  std::span<const Point2> pts_;
  std::vector<Tri> tris_;
  std::vector<int> marks_;
  int stamp_ = 0;
  int last_ = 0;
};

} // namespace

Triangulation delaunay(std::span<const Point2> points) {
  validate(points);
  return BowyerWatson(points).run();
}

} // namespace topotess
