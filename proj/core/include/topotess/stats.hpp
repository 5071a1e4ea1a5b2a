#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace topotess {

struct SampleGroup {
  std::string name;
  std::vector<double> values;
};

using SampleGroups = std::vector<SampleGroup>;

enum class PAdjust { None, Holm, Bonferroni, BenjaminiHochberg };
enum class Alternative { TwoSided, Less, Greater };
enum class MannWhitneyMode { Auto, Exact, Asymptotic };

std::string_view to_string(PAdjust m) noexcept;
std::string_view to_string(Alternative a) noexcept;
/// Accepts holm, bonferroni, bh / benjamini_hochberg, none.
PAdjust parse_padjust(std::string_view s);

struct PairwiseResult {
  std::string first;
  std::string second;
  double statistic = 0.0;
  double p_value = 1.0;
  double p_adjusted = 1.0;
};

struct TestReport {
  std::string test;
  std::string statistic_name;
  double statistic = 0.0;
  double p_value = 1.0;
  double df = 0.0;
  /// "chi-square", "normal", "exact" or "normal (continuity corrected)".
  std::string method;
  PAdjust adjustment = PAdjust::None;
  Alternative alternative = Alternative::TwoSided;
  std::vector<std::string> groups;
  std::vector<PairwiseResult> pairs;
};

/// Mid-ranks (1-based) of the values.
std::vector<double> midranks(std::span<const double> values);

/// Sum of t^3 - t over tie blocks.
double tie_term(std::span<const double> values);

/// H with tie correction, p from the chi-square tail with k - 1 degrees of freedom.
/// Errors: TooFewGroups, EmptyGroup, AllValuesIdentical.
TestReport kruskal_wallis(const SampleGroups& groups);

/// Pairwise z on mean ranks with the pooled tie-corrected variance, normal p-values,
/// then adjusted. Pairs are (0,1), (0,2), ..., (1,2), ...
TestReport dunn_test(const SampleGroups& groups, PAdjust adjust = PAdjust::Holm,
                     Alternative alternative = Alternative::TwoSided);

/// U = U(a, b) = rank sum of a minus n_a (n_a + 1) / 2. Auto uses the exact
/// null distribution when n_a n_b <= 400 and there are no ties, otherwise the
/// tie-corrected normal approximation with continuity correction.
TestReport mann_whitney_u(std::span<const double> a, std::span<const double> b,
                          MannWhitneyMode mode = MannWhitneyMode::Auto,
                          Alternative alternative = Alternative::TwoSided);

/// Errc::OutOfRangeP for entries outside [0, 1].
std::vector<double> p_adjust(std::span<const double> p, PAdjust method);

double chi2_sf(double x, double df);
double normal_sf(double z);

/// JSON document for one or more reports.
std::string to_json(const TestReport& report);
/// Human-readable table: overall line plus one row per pair.
std::string format_table(const TestReport& report);

} // namespace topotess
