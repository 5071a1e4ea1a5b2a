#include "topotess/persistence.hpp"

#include "topotess/errors.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace topotess {
namespace {

class UnionFind {
public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  // Attaches `child`'s root under `root`.
  void attach(int child, int root) { parent_[find(child)] = find(root); }

private:
  std::vector<int> parent_;
};

// Boundary of each simplex as ascending filtration positions.
std::vector<std::vector<int>> boundary_columns(const Filtration& f) {
  const auto s = f.simplices();
  std::map<std::array<int, 3>, int> position;
  for (std::size_t i = 0; i < s.size(); ++i) position[s[i].vertices] = static_cast<int>(i);
  std::vector<std::vector<int>> cols(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto& v = s[i].vertices;
    auto& col = cols[i];
    if (s[i].dimension == 1) {
      col = {position.at({v[0], -1, -1}), position.at({v[1], -1, -1})};
    } else if (s[i].dimension == 2) {
      col = {position.at({v[0], v[1], -1}), position.at({v[0], v[2], -1}), position.at({v[1], v[2], -1})};
    }
    std::sort(col.begin(), col.end());
  }
  return cols;
}

void add_column(std::vector<int>& target, const std::vector<int>& source) {
  std::vector<int> sum;
  sum.reserve(target.size() + source.size());
  std::set_symmetric_difference(target.begin(), target.end(), source.begin(), source.end(),
                                std::back_inserter(sum));
  target.swap(sum);
}

} // namespace

std::string_view to_string(BarPolicy p) noexcept {
  return p == BarPolicy::StripInfinite ? "strip_infinite" : "cap_infinite";
}

std::vector<PersistencePair> persistence_pairs(const Filtration& f, Dim0Method method) {
  const auto s = f.simplices();
  const int n = static_cast<int>(s.size());
  auto cols = boundary_columns(f);
  std::vector<int> pivot_owner(s.size(), -1);
  std::vector<char> dies(s.size(), 0), gives_birth(s.size(), 0);
  std::vector<PersistencePair> pairs;

  auto reduce = [&](int j) {
    auto& col = cols[j];
    while (!col.empty() && pivot_owner[col.back()] >= 0) add_column(col, cols[pivot_owner[col.back()]]);
    if (col.empty()) return -1;
    pivot_owner[col.back()] = j;
    return col.back();
  };

  // Triangles first; every pivot edge is positive, so its own column is cleared.
  for (int j = 0; j < n; ++j) {
    if (s[j].dimension != 2) continue;
    const int low = reduce(j);
    if (low < 0) continue;
    pairs.push_back({1, low, j});
    gives_birth[low] = 1;
    dies[j] = 1;
  }

  if (method == Dim0Method::Matrix) {
    for (int j = 0; j < n; ++j) {
      if (s[j].dimension != 1 || gives_birth[j]) continue;
      const int low = reduce(j);
      if (low < 0) continue;
      pairs.push_back({0, low, j});
      dies[j] = 1;
      gives_birth[low] = 1;
    }
  } else {
    UnionFind uf(s.size());
    for (int j = 0; j < n; ++j) {
      if (s[j].dimension != 1) continue;
      const auto& col = cols[j];
      const int ra = uf.find(col[0]), rb = uf.find(col[1]);
      if (ra == rb) continue;
      // Roots are the oldest vertex of their component; the younger one dies.
      const int younger = std::max(ra, rb), elder = std::min(ra, rb);
      pairs.push_back({0, younger, j});
      dies[j] = 1;
      gives_birth[younger] = 1;
      uf.attach(younger, elder);
    }
  }

  for (int j = 0; j < n; ++j) {
    if (s[j].dimension > 1 || gives_birth[j] || dies[j]) continue;
    pairs.push_back({s[j].dimension, j, -1});
  }
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

Barcode compute_persistence(const Filtration& f) {
  const auto s = f.simplices();
  Barcode out;
  out.vertex_count = f.vertex_count();
  out.convention = f.convention();
  for (const auto& p : persistence_pairs(f)) {
    const double birth = s[p.birth].value;
    const double death = p.death < 0 ? kInfinity : s[p.death].value;
    if (death == birth) continue;
    out.bars.push_back({p.dimension, birth, death});
  }
  std::sort(out.bars.begin(), out.bars.end(), [](const Bar& a, const Bar& b) {
    if (a.dimension != b.dimension) return a.dimension < b.dimension;
    if (a.birth != b.birth) return a.birth < b.birth;
    return a.death < b.death;
  });
  return out;
}

Betti betti_at(const Filtration& f, double t) {
  std::map<int, int> slot;
  std::size_t v = 0, e = 0, tri = 0;
  for (const auto& s : f.simplices()) {
    if (s.value > t) break;
    if (s.dimension == 0) {
      slot.emplace(s.vertices[0], static_cast<int>(v));
      ++v;
    } else if (s.dimension == 1) {
      ++e;
    } else {
      ++tri;
    }
  }
  UnionFind uf(v);
  std::size_t components = v;
  for (const auto& s : f.simplices()) {
    if (s.value > t) break;
    if (s.dimension != 1) continue;
    const int a = uf.find(slot.at(s.vertices[0])), b = uf.find(slot.at(s.vertices[1]));
    if (a == b) continue;
    uf.attach(a, b);
    --components;
  }
  const auto b1 = static_cast<long long>(components) - static_cast<long long>(v) + static_cast<long long>(e) -
                  static_cast<long long>(tri);
  return {components, static_cast<std::size_t>(std::max(0LL, b1))};
}

std::vector<Bar> Barcode::in_dimension(int dimension) const {
  std::vector<Bar> out;
  for (const auto& b : bars)
    if (b.dimension == dimension) out.push_back(b);
  return out;
}

std::size_t Barcode::infinite_count() const {
  return static_cast<std::size_t>(std::count_if(bars.begin(), bars.end(), [](const Bar& b) { return b.infinite(); }));
}

double Barcode::max_finite_death() const {
  double best = 0.0;
  for (const auto& b : bars)
    if (!b.infinite()) best = std::max(best, b.death);
  return best;
}

namespace {

std::size_t essential_index(const Barcode& b) {
  std::size_t found = b.bars.size(), count = 0;
  for (std::size_t i = 0; i < b.bars.size(); ++i) {
    if (!b.bars[i].infinite()) continue;
    ++count;
    found = i;
  }
  if (count != 1 || b.bars[found].dimension != 0)
    throw Error(Errc::UnexpectedInfiniteBars,
                std::to_string(count) + " infinite bars; expected exactly one in dimension 0");
  return found;
}

} // namespace

Barcode strip_infinite_dim0(const Barcode& b) {
  Barcode out = b;
  out.bars.erase(out.bars.begin() + static_cast<std::ptrdiff_t>(essential_index(b)));
  return out;
}

Barcode cap_infinite_dim0(const Barcode& b, double cap) {
  const auto i = essential_index(b);
  if (!(cap >= b.max_finite_death())) throw Error(Errc::CapBelowMaxDeath, "cap below a finite death");
  Barcode out = b;
  out.bars[i].death = cap;
  return out;
}

} // namespace topotess
