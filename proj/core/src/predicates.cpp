#include "topotess/predicates.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace topotess::predicates {
namespace {

long double max_sq_side(std::initializer_list<Point2> pts) {
  long double best = 0.0L;
  for (auto i = pts.begin(); i != pts.end(); ++i)
    for (auto j = std::next(i); j != pts.end(); ++j) {
      const long double dx = static_cast<long double>(i->x) - j->x;
      const long double dy = static_cast<long double>(i->y) - j->y;
      best = std::max(best, dx * dx + dy * dy);
    }
  return best;
}

int sign_with_tolerance(long double value, long double scale) {
  if (std::fabs(value) <= static_cast<long double>(kDegenerateTolerance) * scale) return 0;
  return value > 0 ? 1 : -1;
}

} // namespace

long double orient_det(Point2 a, Point2 b, Point2 c) {
  const long double bx = static_cast<long double>(b.x) - a.x;
  const long double by = static_cast<long double>(b.y) - a.y;
  const long double cx = static_cast<long double>(c.x) - a.x;
  const long double cy = static_cast<long double>(c.y) - a.y;
  return bx * cy - by * cx;
}

int orient(Point2 a, Point2 b, Point2 c) {
  return sign_with_tolerance(orient_det(a, b, c), max_sq_side({a, b, c}));
}

long double incircle_det(Point2 a, Point2 b, Point2 c, Point2 d) {
  const long double adx = static_cast<long double>(a.x) - d.x, ady = static_cast<long double>(a.y) - d.y;
  const long double bdx = static_cast<long double>(b.x) - d.x, bdy = static_cast<long double>(b.y) - d.y;
  const long double cdx = static_cast<long double>(c.x) - d.x, cdy = static_cast<long double>(c.y) - d.y;
  const long double alift = adx * adx + ady * ady;
  const long double blift = bdx * bdx + bdy * bdy;
  const long double clift = cdx * cdx + cdy * cdy;
  return alift * (bdx * cdy - bdy * cdx) + blift * (cdx * ady - cdy * adx) +
         clift * (adx * bdy - ady * bdx);
}

int incircle(Point2 a, Point2 b, Point2 c, Point2 d) {
  const long double s = max_sq_side({a, b, c, d});
  return sign_with_tolerance(incircle_det(a, b, c, d), s * s);
}

int incircle_perturbed(Point2 a, int ia, Point2 b, int ib, Point2 c, int ic, Point2 d, int id) {
  if (const int s = incircle(a, b, c, d); s != 0) return s;

  // det[x y x^2+y^2 1] + sum_r delta_r * cofactor(r, lift). The cofactor of
  // row r is (-1)^r times the orientation of the remaining rows in order, and
  // the largest index carries the dominant infinitesimal.
  const std::array<Point2, 4> p{a, b, c, d};
  std::array<int, 4> rows{0, 1, 2, 3};
  const std::array<int, 4> idx{ia, ib, ic, id};
  std::sort(rows.begin(), rows.end(), [&](int l, int r) { return idx[l] > idx[r]; });
  for (int r : rows) {
    std::array<Point2, 3> rest;
    int k = 0;
    for (int q = 0; q < 4; ++q)
      if (q != r) rest[k++] = p[q];
    const int o = orient(rest[0], rest[1], rest[2]);
    if (o != 0) return (r % 2 == 0) ? o : -o;
  }
  return 0;
}

} // namespace topotess::predicates
