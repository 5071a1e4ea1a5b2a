#pragma once

// Brute-force reference implementations. None of these call the code they
// are used to check; they trade speed for being obviously correct.

#include "topotess/filtration.hpp"
#include "topotess/geometry.hpp"
#include "topotess/imagepipe.hpp"
#include "topotess/persistence.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <vector>

namespace oracle {

using topotess::Box;
using topotess::Point2;

std::vector<Point2> random_points(std::uint64_t seed, std::size_t n, const Box& box = {});

/// Hull vertices by checking every ordered pair for a supporting line.
std::size_t hull_size(const std::vector<Point2>& points);

/// Smallest (|p - c|^2 - R^2) / R^2 over triangles and non-incident points.
double min_empty_circle_margin(const topotess::Triangulation& dt);

/// Betti numbers of the sublevel complex from ranks of Z/2 boundary matrices.
topotess::Betti betti_by_rank(const topotess::Filtration& f, double t);

/// Bars alive at t (birth <= t < death), per dimension.
std::array<std::size_t, 2> alive_at(const topotess::Barcode& b, double t);

/// Entry value of every simplex under the union-of-restricted-balls
/// definition, estimated on a grid: sample x witnesses sigma when x lies
/// within distance `tie` of the Voronoi region of every vertex of sigma; the
/// estimate is the smallest squared distance from a witness to the farthest
/// vertex. Keys are the padded vertex triples used by Simplex.
struct GridAlpha {
  std::map<std::array<int, 3>, double> value;
  double step = 0.0;
  double tie = 0.0;
};
GridAlpha grid_alpha(const std::vector<Point2>& points, const Box& window, double step, double tie);

// Statistics, from textbook formulas with ranks found by counting.
double rank_of(const std::vector<double>& all, double v);
double chi2_sf_integer_df(double x, int df);
struct KwOracle {
  double h;
  double p;
};
KwOracle kruskal_wallis(const std::vector<std::vector<double>>& groups);
struct DunnOracle {
  double z;
  double p;
};
/// z for (groups[i] - groups[j]) with unadjusted two-sided p.
DunnOracle dunn(const std::vector<std::vector<double>>& groups, int i, int j);
/// Permutation distribution of U over every split of the pooled sample.
struct MwOracle {
  double u;
  double p_less;
  double p_greater;
  double p_two;
};
MwOracle mann_whitney_enumerate(const std::vector<double>& a, const std::vector<double>& b);
std::vector<double> holm(const std::vector<double>& p);
std::vector<double> bonferroni(const std::vector<double>& p);
std::vector<double> benjamini_hochberg(const std::vector<double>& p);

/// Mean squared distance to the nearest generator, Monte Carlo over the box.
double cvt_energy(const std::vector<Point2>& generators, const Box& box, std::size_t samples, std::uint64_t seed);

/// Line-by-line transcription of the spiral procedure on a pre-masked copy.
std::vector<topotess::Label> spiral_reference(const topotess::LabeledImage& img, std::size_t n);

} // namespace oracle
