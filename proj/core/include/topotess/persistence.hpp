#pragma once

#include "topotess/filtration.hpp"

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

namespace topotess {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct Bar {
  int dimension = 0;
  double birth = 0.0;
  double death = kInfinity;

  bool infinite() const { return death == kInfinity; }
  double length() const { return death - birth; }
  friend bool operator==(const Bar&, const Bar&) = default;
};

struct Barcode {
  std::vector<Bar> bars;
  std::size_t vertex_count = 0;
  AlphaConvention convention = AlphaConvention::SquaredRadius;

  std::vector<Bar> in_dimension(int dimension) const;
  std::size_t infinite_count() const;
  /// Largest finite death, or 0 when there is none.
  double max_finite_death() const;
};

/// Treatment of the essential dimension-0 bar before computing entropy.
enum class BarPolicy { StripInfinite, CapInfinite };

std::string_view to_string(BarPolicy p) noexcept;

/// Pairing of filtration positions; death == -1 for essential classes.
struct PersistencePair {
  int dimension = 0;
  int birth = 0;
  int death = -1;
  friend bool operator==(const PersistencePair&, const PersistencePair&) = default;
  friend auto operator<=>(const PersistencePair&, const PersistencePair&) = default;
};

enum class Dim0Method { UnionFind, Matrix };

/// Z/2 boundary-matrix reduction with clearing (triangle columns first); the
/// dimension-0 pairs come from union-find (elder rule) or from reducing the
/// edge columns. Both give identical pairs. Sorted output.
std::vector<PersistencePair> persistence_pairs(const Filtration& f, Dim0Method method = Dim0Method::UnionFind);

/// Barcode of dimensions 0 and 1; zero-length bars are dropped.
Barcode compute_persistence(const Filtration& f);

struct Betti {
  std::size_t b0 = 0;
  std::size_t b1 = 0;
  friend bool operator==(const Betti&, const Betti&) = default;
};

/// Betti numbers of the sublevel complex {value <= t}, from union-find and
/// the Euler characteristic (b1 = b0 - V + E - F). Independent of the reduction.
Betti betti_at(const Filtration& f, double t);

/// Removes the single essential bar. Errc::UnexpectedInfiniteBars unless there
/// is exactly one infinite bar and it lives in dimension 0.
Barcode strip_infinite_dim0(const Barcode& b);

/// Replaces the essential bar's death by `cap`. Same precondition as strip;
/// Errc::CapBelowMaxDeath when cap < max finite death.
Barcode cap_infinite_dim0(const Barcode& b, double cap);

/// CSV with header `dimension,birth,death`; infinite deaths are written as `inf`.
void write_barcode_csv(std::ostream& out, const Barcode& b);
Barcode read_barcode_csv(std::istream& in);

/// JSON sidecar: vertex count, convention and bar policy.
std::string barcode_metadata_json(const Barcode& b, BarPolicy policy);

} // namespace topotess
