#pragma once

#include "topotess/cvt.hpp"
#include "topotess/entropy.hpp"
#include "topotess/filtration.hpp"
#include "topotess/imagepipe.hpp"
#include "topotess/persistence.hpp"
#include "topotess/stats.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace topotess {

inline constexpr std::string_view kVersion = "0.1.0";

struct RunConfig {
  std::filesystem::path manifest;
  std::size_t n_cells = 245;
  BarPolicy bar_policy = BarPolicy::StripInfinite;
  /// Fixed cap for BarPolicy::CapInfinite; when unset the essential bar is
  /// capped at the largest filtration value of each complex.
  std::optional<double> cap_value;
  LogBase log_base = LogBase::Natural;
  AlphaConvention convention = AlphaConvention::SquaredRadius;
  PAdjust adjust = PAdjust::Holm;
  Alternative alternative = Alternative::TwoSided;
  std::filesystem::path out_dir = ".";
  std::uint64_t seed = 42;
  std::size_t threads = 1;

  /// Errc::ConfigError when n_cells < 3, threads == 0 or the cap is not positive.
  void validate() const;
  /// FNV-1a hash of every parameter that affects numeric output (not paths or threads).
  std::uint64_t hash() const;
};

/// One manifest row. `image` may be preloaded; otherwise `path` is read on demand.
struct ImageEntry {
  std::string id;
  std::string group;
  std::filesystem::path path;
  std::shared_ptr<const LabeledImage> image;
};

/// JSON array of {"path", "group"} objects, with optional "id" and
/// "exclude": true. Relative paths resolve against the manifest's directory.
std::vector<ImageEntry> load_manifest(const std::filesystem::path& manifest);
void write_manifest(const std::filesystem::path& manifest, std::span<const ImageEntry> entries);

struct EntropyRecord {
  std::string image_id;
  std::string group;
  std::size_t n_cells = 0;
  double pe0 = 0.0;
  double pe1 = 0.0;
  double l0 = 0.0;
  double l1 = 0.0;
  std::size_t bars0 = 0;
  std::size_t bars1 = 0;
  BarPolicy policy = BarPolicy::StripInfinite;
  AlphaConvention convention = AlphaConvention::SquaredRadius;
};

/// Alpha complex -> barcode -> bar policy -> PE0, PE1, L0, L1 for one point cloud.
EntropyRecord summarize_points(std::span<const Point2> points, const RunConfig& cfg);

/// Per image: spiral selection of cfg.n_cells cells, centroids, summarize_points.
/// Results follow input order for any thread count. The first failing image
/// aborts the batch; the error message starts with its id.
std::vector<EntropyRecord> analyze(std::span<const ImageEntry> images, const RunConfig& cfg);

enum class Statistic { PE0, PE1, L0, L1 };
std::string_view to_string(Statistic s) noexcept;
Statistic parse_statistic(std::string_view s);
double value_of(const EntropyRecord& r, Statistic s);

struct RunMetadata {
  std::string version{kVersion};
  std::uint64_t config_hash = 0;
  std::uint64_t seed = 0;
  std::string extra;
};
RunMetadata metadata_for(const RunConfig& cfg);

/// `#`-prefixed metadata lines followed by a CSV table.
void write_records_csv(std::ostream& out, std::span<const EntropyRecord> records, const RunMetadata& meta);
std::vector<EntropyRecord> read_records_csv(std::istream& in);

struct CompareOptions {
  /// Groups to compare, in report order; empty means every group in order of first appearance.
  std::vector<std::string> groups;
  std::vector<Statistic> statistics{Statistic::PE0, Statistic::PE1};
  PAdjust adjust = PAdjust::Holm;
  Alternative alternative = Alternative::TwoSided;
  MannWhitneyMode mw_mode = MannWhitneyMode::Auto;
};

struct StatisticComparison {
  Statistic statistic = Statistic::PE0;
  /// Kruskal-Wallis then Dunn for three or more groups, Mann-Whitney U for two.
  std::vector<TestReport> reports;
};

/// Errc::ConfigError for duplicate or unknown group names, Errc::TooFewGroups for fewer than two.
std::vector<StatisticComparison> compare(std::span<const EntropyRecord> records, const CompareOptions& opts);

std::string comparisons_to_json(std::span<const StatisticComparison> bundle, const RunMetadata& meta);
std::string comparisons_to_table(std::span<const StatisticComparison> bundle);

struct SweepOptions {
  std::size_t n_min = 25;
  std::size_t n_max = 245;
  std::size_t step = 20;
  CompareOptions compare;
};

struct SweepRow {
  std::size_t n = 0;
  Statistic statistic = Statistic::PE0;
  std::string test;
  std::string comparison;
  double statistic_value = 0.0;
  double p_value = 1.0;
  double p_adjusted = 1.0;
};

/// Cell counts n_min, n_min + step, ... <= n_max. Each image is spiral-selected
/// once at n_max and every smaller n reuses a prefix of that selection.
std::vector<SweepRow> sweep(std::span<const ImageEntry> images, const RunConfig& cfg, const SweepOptions& opts);

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows, const RunMetadata& meta);
/// p-value against n, one polyline per (statistic, comparison), log-scaled, with a 0.05 line.
std::string render_sweep_svg(std::span<const SweepRow> rows, const RunMetadata& meta);

struct CvtDatasetOptions {
  CvtConfig cvt;
  std::size_t images_per_step = 16;
  std::size_t rows = 1024;
  std::size_t cols = 1024;
  /// 1-based CVT steps to emit; empty means 1..cvt.steps.
  std::vector<std::size_t> emit_steps;
  std::size_t threads = 1;
};

/// Rasterized CVT images, in memory. Image i of every step comes from the
/// path seeded with stream_seed(cvt.seed, i); groups are named CVT<step>.
std::vector<ImageEntry> generate_cvt_images(const CvtDatasetOptions& opts);

/// Writes the images (and generator CSVs) under `dir` plus `dir/manifest.json`; returns the entries.
std::vector<ImageEntry> make_cvt_dataset(const CvtDatasetOptions& opts, const std::filesystem::path& dir,
                                         ImageFormat format = ImageFormat::Text);

struct BoxSummary {
  double min = 0, q1 = 0, median = 0, q3 = 0, max = 0;
  double whisker_low = 0, whisker_high = 0;
  std::vector<double> outliers;
};

/// Quartiles by linear interpolation between order statistics (position (n-1)p);
/// whiskers reach the most extreme observations within 1.5 IQR of the box.
BoxSummary box_summary(std::span<const double> values);

/// Self-contained SVG boxplot, one box per group in order of first appearance.
std::string render_boxplot(std::span<const EntropyRecord> records, Statistic statistic, const RunMetadata& meta);

} // namespace topotess
