#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace topotess {

/// How alpha filtration values are expressed.
enum class AlphaConvention { SquaredRadius, Radius };

std::string_view to_string(AlphaConvention c) noexcept;

struct Simplex {
  int dimension = 0;
  /// Ascending vertex ids; unused slots hold -1.
  std::array<int, 3> vertices{-1, -1, -1};
  double value = 0.0;

  static Simplex vertex(int v, double value) { return {0, {v, -1, -1}, value}; }
  static Simplex edge(int a, int b, double value);
  static Simplex triangle(int a, int b, int c, double value);
};

/// Total order used by every filtration: (value, dimension, vertex tuple).
bool filtration_less(const Simplex& a, const Simplex& b);

/// A validated simplicial filtration of dimension at most two.
///
/// Construction checks that values are finite and non-negative, that the
/// simplices are sorted by filtration_less (Errc::UnsortedFiltration), and
/// that every face appears strictly before its cofaces (Errc::FaceAfterCoface).
class Filtration {
public:
  explicit Filtration(std::vector<Simplex> simplices,
                      AlphaConvention convention = AlphaConvention::SquaredRadius);

  /// Sorts the simplices first, then validates.
  static Filtration from_unsorted(std::vector<Simplex> simplices,
                                  AlphaConvention convention = AlphaConvention::SquaredRadius);

  std::span<const Simplex> simplices() const { return simplices_; }
  std::size_t size() const { return simplices_.size(); }
  std::size_t vertex_count() const { return counts_[0]; }
  std::size_t count(int dimension) const { return counts_.at(static_cast<std::size_t>(dimension)); }
  AlphaConvention convention() const { return convention_; }
  double max_value() const { return simplices_.empty() ? 0.0 : simplices_.back().value; }

  /// Distinct filtration values, ascending.
  std::vector<double> critical_values() const;

private:
  std::vector<Simplex> simplices_;
  std::array<std::size_t, 3> counts_{};
  AlphaConvention convention_;
};

} // namespace topotess
