#include "topotess/cvt.hpp"

#include "topotess/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace topotess {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

} // namespace

Rng::Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

double Rng::normal() {
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t Rng::poisson(double mean) {
  std::uint64_t total = 0;
  while (mean > 0.0) {
    const double chunk = std::min(mean, 30.0);
    mean -= chunk;
    const double limit = std::exp(-chunk);
    double p = uniform();
    while (p > limit) {
      ++total;
      p *= uniform();
    }
  }
  return total;
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) { return seed ^ index; }

void CvtConfig::validate() const {
  if (!(expected_points >= 3.0)) throw Error(Errc::ConfigError, "expected_points must be >= 3");
  if (steps < 1) throw Error(Errc::ConfigError, "steps must be >= 1");
  if (!(box.width() > 0 && box.height() > 0)) throw Error(Errc::ConfigError, "box must have positive area");
}

std::vector<Point2> poisson_points(const CvtConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);
  std::uint64_t count = 0;
  if (cfg.fixed_count) {
    count = static_cast<std::uint64_t>(std::llround(cfg.expected_points));
  } else {
    do count = rng.poisson(cfg.expected_points);
    while (count < 3);
  }
  std::vector<Point2> pts;
  pts.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    const double x = rng.uniform(cfg.box.xmin, cfg.box.xmax);
    const double y = rng.uniform(cfg.box.ymin, cfg.box.ymax);
    pts.push_back({x, y});
  }
  return pts;
}

std::vector<Point2> lloyd_step(std::span<const Point2> points, const Box& box) {
  const auto cells = voronoi_cells(points, box);
  std::vector<Point2> out;
  out.reserve(cells.size());
  for (const auto& cell : cells) out.push_back(polygon_centroid(cell));
  return out;
}

std::vector<std::vector<Point2>> cvt_path(const CvtConfig& cfg) {
  std::vector<std::vector<Point2>> path;
  path.reserve(cfg.steps);
  path.push_back(poisson_points(cfg));
  while (path.size() < cfg.steps) path.push_back(lloyd_step(path.back(), cfg.box));
  return path;
}

LabeledImage rasterize(std::span<const Point2> points, const Box& box, std::size_t rows, std::size_t cols) {
  if (points.size() >= std::numeric_limits<Label>::max()) throw Error(Errc::ConfigError, "too many generators");
  LabeledImage img(rows, cols);
  if (points.empty() || rows == 0 || cols == 0) return img;

  // Uniform bucket grid over the box.
  const auto g = static_cast<std::size_t>(std::max(1.0, std::ceil(std::sqrt(points.size() / 2.0))));
  const double bw = box.width() / static_cast<double>(g), bh = box.height() / static_cast<double>(g);
  auto bucket_of = [&](double v, double lo, double w) {
    const auto b = static_cast<long long>(std::floor((v - lo) / w));
    return std::clamp<long long>(b, 0, static_cast<long long>(g) - 1);
  };
  std::vector<std::vector<int>> buckets(g * g);
  for (int i = 0; i < static_cast<int>(points.size()); ++i)
    buckets[bucket_of(points[i].y, box.ymin, bh) * g + bucket_of(points[i].x, box.xmin, bw)].push_back(i);

  const double px = box.width() / static_cast<double>(cols), py = box.height() / static_cast<double>(rows);
  const double ring_step = std::min(bw, bh);
  std::vector<int> owner(rows * cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const double y = box.ymin + (static_cast<double>(r) + 0.5) * py;
    const long long by = bucket_of(y, box.ymin, bh);
    for (std::size_t c = 0; c < cols; ++c) {
      const double x = box.xmin + (static_cast<double>(c) + 0.5) * px;
      const long long bx = bucket_of(x, box.xmin, bw);
      int best = -1;
      double best_d = std::numeric_limits<double>::infinity();
      for (long long k = 0;; ++k) {
        bool any_bucket = false;
        for (long long yy = by - k; yy <= by + k; ++yy) {
          if (yy < 0 || yy >= static_cast<long long>(g)) continue;
          for (long long xx = bx - k; xx <= bx + k; ++xx) {
            if (xx < 0 || xx >= static_cast<long long>(g)) continue;
            if (std::max(std::llabs(yy - by), std::llabs(xx - bx)) != k) continue;
            any_bucket = true;
            for (int i : buckets[yy * g + xx]) {
              const double d = squared_distance(points[i], {x, y});
              if (d < best_d || (d == best_d && i < best)) {
                best_d = d;
                best = i;
              }
            }
          }
        }
        // Everything outside ring k lies at least k bucket widths away.
        const double reach = static_cast<double>(k) * ring_step;
        if (best >= 0 && best_d < reach * reach) break;
        if (!any_bucket && best >= 0) break;
      }
      owner[r * cols + c] = best;
    }
  }

  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      const int o = owner[r * cols + c];
      const bool edge = (c + 1 < cols && owner[r * cols + c + 1] != o) || (r + 1 < rows && owner[(r + 1) * cols + c] != o);
      img.set(r, c, edge ? 0 : static_cast<Label>(o + 1));
    }
  return img;
}

} // namespace topotess
