#pragma once

#include "topotess/geometry.hpp"
#include "topotess/imagepipe.hpp"

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace topotess {

/// Seedable generator with a fixed algorithm (mt19937_64) and hand-rolled
/// distributions, so a seed reproduces the same stream on every platform.
class Rng {
public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Standard normal via Box-Muller.
  double normal();
  /// Poisson variate, summing Knuth draws over chunks of mean <= 30.
  std::uint64_t poisson(double mean);

private:
  std::mt19937_64 engine_;
};

/// Seed of the i-th independent stream derived from a base seed (seed XOR index).
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index);

struct CvtConfig {
  Box box{0.0, 0.0, 1024.0, 1024.0};
  /// Mean of the Poisson point count (or the exact count when fixed_count).
  double expected_points = 600.0;
  std::size_t steps = 5;
  std::uint64_t seed = 42;
  bool fixed_count = false;

  /// Errc::ConfigError unless expected_points >= 3, steps >= 1 and the box has positive area.
  void validate() const;
};

/// Homogeneous Poisson process in cfg.box: Poisson count (redrawn while < 3),
/// i.i.d. uniform positions.
std::vector<Point2> poisson_points(const CvtConfig& cfg);

/// Moves every generator to the centroid of its box-clipped Voronoi cell.
std::vector<Point2> lloyd_step(std::span<const Point2> points, const Box& box);

/// Element 0 is the Poisson set (CVT1); element k is k Lloyd steps later.
std::vector<std::vector<Point2>> cvt_path(const CvtConfig& cfg);

/// Nearest-generator raster of `box` on a rows x cols grid. Generator i gets
/// label i + 1; a pixel whose right or lower neighbour has a different owner
/// becomes boundary (0). Ties go to the lower index.
LabeledImage rasterize(std::span<const Point2> points, const Box& box, std::size_t rows, std::size_t cols);

} // namespace topotess
