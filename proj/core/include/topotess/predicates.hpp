#pragma once

#include "topotess/geometry.hpp"

namespace topotess::predicates {

/// Determinants whose magnitude is below this fraction of the local scale
/// (squared longest side for orientation, its square for in-circle) are
/// treated as exactly zero.
inline constexpr double kDegenerateTolerance = 1e-12;

/// Twice the signed area of (a, b, c), accumulated in extended precision.
long double orient_det(Point2 a, Point2 b, Point2 c);

/// +1 counter-clockwise, -1 clockwise, 0 degenerate.
int orient(Point2 a, Point2 b, Point2 c);

/// Lifted 4x4 in-circle determinant; positive when d is inside the circle
/// through the counter-clockwise triangle (a, b, c).
long double incircle_det(Point2 a, Point2 b, Point2 c, Point2 d);

/// +1 inside, -1 outside, 0 degenerate (cocircular within tolerance).
int incircle(Point2 a, Point2 b, Point2 c, Point2 d);

/// In-circle test with ties resolved by lifting each point by an infinitesimal
/// that increases with its index. Returns 0 only when all four points are collinear.
int incircle_perturbed(Point2 a, int ia, Point2 b, int ib, Point2 c, int ic, Point2 d, int id);

} // namespace topotess::predicates
