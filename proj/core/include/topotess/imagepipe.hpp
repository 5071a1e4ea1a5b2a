#pragma once

#include "topotess/geometry.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

namespace topotess {

using Label = std::uint32_t;

/// Row-major label matrix; 0 marks boundary/background pixels.
class LabeledImage {
public:
  LabeledImage() = default;
  LabeledImage(std::size_t rows, std::size_t cols);
  LabeledImage(std::size_t rows, std::size_t cols, std::vector<Label> labels);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Label at(std::size_t row, std::size_t col) const { return labels_[row * cols_ + col]; }
  void set(std::size_t row, std::size_t col, Label v) { labels_[row * cols_ + col] = v; }
  /// Out-of-bounds coordinates read as 0.
  Label at_or_zero(long long row, long long col) const;
  std::span<const Label> data() const { return labels_; }

  friend bool operator==(const LabeledImage&, const LabeledImage&) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Label> labels_;
};

enum class ImageFormat { Auto, Text, Pgm };

/// Text: one row per line, comma- or whitespace-separated non-negative
/// integers. PGM: P2 or P5, 8- or 16-bit (big-endian), pixel value = label.
/// Errors: IoError, MalformedFile, NegativeLabel.
LabeledImage load_labeled_image(const std::filesystem::path& path, ImageFormat format = ImageFormat::Auto);
LabeledImage read_text_image(std::istream& in);
LabeledImage read_pgm(std::istream& in);

void write_text_image(std::ostream& out, const LabeledImage& img);
/// Binary P5; 16-bit samples when any label exceeds 255. Labels above 65535 are rejected.
void write_pgm(std::ostream& out, const LabeledImage& img);
void save_labeled_image(const std::filesystem::path& path, const LabeledImage& img, ImageFormat format);

/// Labels whose pixels avoid the first/last row and column, ascending.
std::vector<Label> valid_labels(const LabeledImage& img);

/// Labels whose pixels do not form one 4-connected region.
std::vector<Label> disconnected_labels(const LabeledImage& img);

struct CellSelection {
  std::vector<Label> labels;
  /// Pixel units: x = column, y = row.
  std::vector<Point2> centroids;
};

/// Square-spiral walk from (cols/2, rows/2) collecting the first `n` distinct
/// valid labels; border-touching labels are masked to 0 first and
/// out-of-range reads count as 0. Errc::NotEnoughCells when n exceeds the
/// number of valid labels.
CellSelection spiral_select(const LabeledImage& img, std::size_t n);

/// Mean pixel coordinate of every pixel carrying each label. Errc::UnknownLabel.
std::vector<Point2> centroids(const LabeledImage& img, std::span<const Label> labels);

} // namespace topotess
