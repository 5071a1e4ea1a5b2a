#pragma once

#include "topotess/filtration.hpp"
#include "topotess/geometry.hpp"

#include <span>

namespace topotess {

/// Alpha filtration over the Delaunay triangulation.
///
/// Vertices enter at 0 and triangles at their squared circumradius. An edge
/// whose diametral disc holds none of its opposite vertices (Gabriel) enters
/// at its squared half-length; otherwise it enters with its earliest triangle.
/// With AlphaConvention::Radius every value is replaced by its square root.
Filtration alpha_complex(std::span<const Point2> points,
                         AlphaConvention convention = AlphaConvention::SquaredRadius);

Filtration alpha_complex(const Triangulation& dt,
                         AlphaConvention convention = AlphaConvention::SquaredRadius);

} // namespace topotess
