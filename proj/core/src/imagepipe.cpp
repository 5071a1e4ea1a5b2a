#include "topotess/errors.hpp"
#include "topotess/imagepipe.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace topotess {

std::vector<Label> valid_labels(const LabeledImage& img) {
  std::unordered_set<Label> present, touching;
  for (std::size_t r = 0; r < img.rows(); ++r)
    for (std::size_t c = 0; c < img.cols(); ++c) {
      const Label v = img.at(r, c);
      if (v == 0) continue;
      present.insert(v);
      if (r == 0 || c == 0 || r + 1 == img.rows() || c + 1 == img.cols()) touching.insert(v);
    }
  std::vector<Label> out;
  for (Label v : present)
    if (!touching.contains(v)) out.push_back(v);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Label> disconnected_labels(const LabeledImage& img) {
  const std::size_t rows = img.rows(), cols = img.cols();
  std::vector<char> seen(rows * cols, 0);
  std::unordered_map<Label, int> regions;
  std::vector<std::size_t> stack;
  for (std::size_t start = 0; start < rows * cols; ++start) {
    const Label v = img.data()[start];
    if (v == 0 || seen[start]) continue;
    ++regions[v];
    seen[start] = 1;
    stack.push_back(start);
    while (!stack.empty()) {
      const std::size_t i = stack.back();
      stack.pop_back();
      const std::size_t r = i / cols, c = i % cols;
      const std::size_t nbrs[4] = {r > 0 ? i - cols : i, r + 1 < rows ? i + cols : i, c > 0 ? i - 1 : i,
                                   c + 1 < cols ? i + 1 : i};
      for (std::size_t j : nbrs)
        if (!seen[j] && img.data()[j] == v) {
          seen[j] = 1;
          stack.push_back(j);
        }
    }
  }
  std::vector<Label> out;
  for (const auto& [label, count] : regions)
    if (count > 1) out.push_back(label);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

std::vector<Label> spiral_labels(const LabeledImage& img, std::size_t n) {
  const auto valid = valid_labels(img);
  if (n > valid.size())
    throw Error(Errc::NotEnoughCells,
                "requested " + std::to_string(n) + " cells, image has " + std::to_string(valid.size()) + " valid");
  const std::unordered_set<Label> keep(valid.begin(), valid.end());
  auto masked = [&](long long x, long long y) -> Label {
    const Label v = img.at_or_zero(y, x);
    return keep.contains(v) ? v : 0;
  };

  std::vector<Label> chosen;
  std::unordered_set<Label> in_chosen;
  if (n == 0) return chosen;
  auto visit = [&](long long x, long long y) {
    const Label v = masked(x, y);
    if (v != 0 && in_chosen.insert(v).second) chosen.push_back(v);
  };

  long long x = static_cast<long long>(img.cols() / 2);
  long long y = static_cast<long long>(img.rows() / 2);
  visit(x, y);
  for (long long i = 1; chosen.size() < n; ++i) {
    const long long step = (i % 2 == 0) ? 1 : -1;
    for (long long j = 0; j < i && chosen.size() < n; ++j) {
      x += step;
      visit(x, y);
    }
    for (long long j = 0; j < i && chosen.size() < n; ++j) {
      y += step;
      visit(x, y);
    }
  }
  return chosen;
}

} // namespace

CellSelection spiral_select(const LabeledImage& img, std::size_t n) {
  CellSelection out;
  out.labels = spiral_labels(img, n);
  out.centroids = centroids(img, out.labels);
  return out;
}

std::vector<Point2> centroids(const LabeledImage& img, std::span<const Label> labels) {
  struct Acc {
    double sx = 0, sy = 0;
    std::size_t count = 0;
  };
  std::unordered_map<Label, Acc> acc;
  for (Label v : labels) acc.emplace(v, Acc{});
  for (std::size_t r = 0; r < img.rows(); ++r)
    for (std::size_t c = 0; c < img.cols(); ++c) {
      const auto it = acc.find(img.at(r, c));
      if (it == acc.end()) continue;
      it->second.sx += static_cast<double>(c);
      it->second.sy += static_cast<double>(r);
      ++it->second.count;
    }
  std::vector<Point2> out;
  out.reserve(labels.size());
  for (Label v : labels) {
    const auto& a = acc.at(v);
    if (v == 0 || a.count == 0) throw Error(Errc::UnknownLabel, "label " + std::to_string(v) + " not in image");
    out.push_back({a.sx / static_cast<double>(a.count), a.sy / static_cast<double>(a.count)});
  }
  return out;
}

} // namespace topotess
