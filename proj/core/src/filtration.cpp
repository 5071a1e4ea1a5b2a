#include "topotess/filtration.hpp"

#include "topotess/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace topotess {

std::string_view to_string(AlphaConvention c) noexcept {
  return c == AlphaConvention::SquaredRadius ? "squared" : "radius";
}

Simplex Simplex::edge(int a, int b, double value) {
  if (a > b) std::swap(a, b);
  return {1, {a, b, -1}, value};
}

Simplex Simplex::triangle(int a, int b, int c, double value) {
  std::array<int, 3> v{a, b, c};
  std::sort(v.begin(), v.end());
  return {2, v, value};
}

bool filtration_less(const Simplex& a, const Simplex& b) {
  if (a.value != b.value) return a.value < b.value;
  if (a.dimension != b.dimension) return a.dimension < b.dimension;
  return a.vertices < b.vertices;
}

Filtration::Filtration(std::vector<Simplex> simplices, AlphaConvention convention)
    : simplices_(std::move(simplices)), convention_(convention) {
  std::map<std::array<int, 3>, std::size_t> position;
  for (std::size_t i = 0; i < simplices_.size(); ++i) {
    const auto& s = simplices_[i];
    if (s.dimension < 0 || s.dimension > 2) throw Error(Errc::ConfigError, "simplex dimension out of range");
    if (!std::isfinite(s.value) || s.value < 0)
      throw Error(Errc::UnsortedFiltration, "filtration values must be finite and non-negative");
    if (i > 0 && !filtration_less(simplices_[i - 1], s))
      throw Error(Errc::UnsortedFiltration, "simplex " + std::to_string(i) + " out of order");
    ++counts_[static_cast<std::size_t>(s.dimension)];
    position[s.vertices] = i;
  }
  auto require_face = [&](std::array<int, 3> face, std::size_t coface) {
    const auto it = position.find(face);
    if (it == position.end() || it->second >= coface)
      throw Error(Errc::FaceAfterCoface, "face of simplex " + std::to_string(coface) + " missing or later");
  };
  for (std::size_t i = 0; i < simplices_.size(); ++i) {
    const auto& v = simplices_[i].vertices;
    if (simplices_[i].dimension == 1) {
      require_face({v[0], -1, -1}, i);
      require_face({v[1], -1, -1}, i);
    } else if (simplices_[i].dimension == 2) {
      require_face({v[0], v[1], -1}, i);
      require_face({v[0], v[2], -1}, i);
      require_face({v[1], v[2], -1}, i);
    }
  }
}

Filtration Filtration::from_unsorted(std::vector<Simplex> simplices, AlphaConvention convention) {
  std::sort(simplices.begin(), simplices.end(), filtration_less);
  return Filtration(std::move(simplices), convention);
}

std::vector<double> Filtration::critical_values() const {
  std::vector<double> out;
  for (const auto& s : simplices_)
    if (out.empty() || out.back() != s.value) out.push_back(s.value);
  return out;
}

} // namespace topotess
