#pragma once

#include "topotess/persistence.hpp"

#include <span>
#include <string_view>
#include <vector>

namespace topotess {

enum class LogBase { Natural, Two };

std::string_view to_string(LogBase b) noexcept;

/// Strictly positive, finite bar lengths and their (compensated) sum.
class BarLengths {
public:
  /// Errc::InfiniteBarPresent for infinite entries, Errc::NonPositiveLength otherwise.
  explicit BarLengths(std::vector<double> lengths);

  /// Lengths of the bars of one dimension.
  static BarLengths of(const Barcode& b, int dimension);

  std::span<const double> lengths() const { return lengths_; }
  std::size_t size() const { return lengths_.size(); }
  bool empty() const { return lengths_.empty(); }
  double total() const { return total_; }

private:
  std::vector<double> lengths_;
  double total_ = 0.0;
};

/// Shannon entropy of the normalised lengths, sum of -p log p. Errc::EmptyBarcode.
double persistent_entropy(const BarLengths& lengths, LogBase base = LogBase::Natural);

/// persistent_entropy / log(n); reported for comparison only.
/// Errc::EmptyBarcode, Errc::SingleBar.
double normalized_entropy(const BarLengths& lengths);

double total_length(const BarLengths& lengths);

} // namespace topotess
