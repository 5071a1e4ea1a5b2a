#include "topotess/entropy.hpp"

#include "topotess/errors.hpp"

#include <cmath>
#include <numbers>

namespace topotess {

std::string_view to_string(LogBase b) noexcept { return b == LogBase::Natural ? "e" : "2"; }

BarLengths::BarLengths(std::vector<double> lengths) : lengths_(std::move(lengths)) {
  // Neumaier summation
  double sum = 0.0, carry = 0.0;
  for (double l : lengths_) {
    if (std::isinf(l)) throw Error(Errc::InfiniteBarPresent, "infinite bar length");
    if (!(l > 0)) throw Error(Errc::NonPositiveLength, "bar lengths must be positive");
    const double t = sum + l;
    carry += std::fabs(sum) >= std::fabs(l) ? (sum - t) + l : (l - t) + sum;
    sum = t;
  }
  total_ = sum + carry;
}

BarLengths BarLengths::of(const Barcode& b, int dimension) {
  std::vector<double> out;
  for (const auto& bar : b.bars)
    if (bar.dimension == dimension) out.push_back(bar.infinite() ? bar.death : bar.length());
  return BarLengths(std::move(out));
}

double persistent_entropy(const BarLengths& lengths, LogBase base) {
  if (lengths.empty()) throw Error(Errc::EmptyBarcode, "persistent entropy of an empty barcode");
  const double total = lengths.total();
  double h = 0.0;
  for (double l : lengths.lengths()) {
    const double p = l / total;
    h -= p * std::log(p);
  }
  return base == LogBase::Two ? h / std::numbers::ln2 : h;
}

double normalized_entropy(const BarLengths& lengths) {
  if (lengths.empty()) throw Error(Errc::EmptyBarcode, "normalized entropy of an empty barcode");
  if (lengths.size() == 1) throw Error(Errc::SingleBar, "log(1) = 0 denominator");
  return persistent_entropy(lengths) / std::log(static_cast<double>(lengths.size()));
}

double total_length(const BarLengths& lengths) { return lengths.total(); }

} // namespace topotess
