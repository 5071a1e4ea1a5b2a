#include "topotess/alpha_complex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace topotess {

Filtration alpha_complex(std::span<const Point2> points, AlphaConvention convention) {
  return alpha_complex(delaunay(points), convention);
}

Filtration alpha_complex(const Triangulation& dt, AlphaConvention convention) {
  const auto& pts = dt.points();
  std::vector<Simplex> simplices;
  simplices.reserve(pts.size() + dt.edges().size() + dt.triangles().size());

  for (int v = 0; v < static_cast<int>(pts.size()); ++v) simplices.push_back(Simplex::vertex(v, 0.0));

  std::map<std::array<int, 3>, double> triangle_value;
  for (const auto& t : dt.triangles()) {
    const double r2 = circumcircle(pts[t[0]], pts[t[1]], pts[t[2]]).radius_sq;
    const auto s = Simplex::triangle(t[0], t[1], t[2], r2);
    triangle_value[s.vertices] = r2;
    simplices.push_back(s);
  }

  for (std::size_t i = 0; i < dt.edges().size(); ++i) {
    const auto [a, b] = dt.edges()[i];
    const Point2 pa = pts[a], pb = pts[b];
    bool gabriel = true;
    double coface_min = std::numeric_limits<double>::infinity();
    for (int c : dt.edge_opposites()[i]) {
      if (c < 0) continue;
      // strictly inside the diametral circle <=> obtuse angle at c
      if (dot(pa - pts[c], pb - pts[c]) < 0) gabriel = false;
      coface_min = std::min(coface_min, triangle_value.at(Simplex::triangle(a, b, c, 0).vertices));
    }
    // half-length never exceeds a coface circumradius; min() absorbs rounding at right angles
    const double value = gabriel ? std::min(squared_distance(pa, pb) / 4.0, coface_min) : coface_min;
    simplices.push_back(Simplex::edge(a, b, value));
  }

  if (convention == AlphaConvention::Radius)
    for (auto& s : simplices) s.value = std::sqrt(s.value);
  return Filtration::from_unsorted(std::move(simplices), convention);
}

} // namespace topotess
