#include "topotess/errors.hpp"
#include "topotess/imagepipe.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <string>

namespace topotess {

LabeledImage::LabeledImage(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), labels_(rows * cols, 0) {}

LabeledImage::LabeledImage(std::size_t rows, std::size_t cols, std::vector<Label> labels)
    : rows_(rows), cols_(cols), labels_(std::move(labels)) {
  if (labels_.size() != rows * cols) throw Error(Errc::MalformedFile, "label count does not match dimensions");
}

Label LabeledImage::at_or_zero(long long row, long long col) const {
  if (row < 0 || col < 0 || row >= static_cast<long long>(rows_) || col >= static_cast<long long>(cols_))
    return 0;
  return at(static_cast<std::size_t>(row), static_cast<std::size_t>(col));
}

LabeledImage read_text_image(std::istream& in) {
  std::vector<Label> labels;
  std::size_t rows = 0, cols = 0;
  std::string line;
  while (std::getline(in, line)) {
    std::size_t count = 0;
    std::size_t i = 0;
    while (i < line.size()) {
      const char ch = line[i];
      if (ch == ',' || std::isspace(static_cast<unsigned char>(ch))) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < line.size() && line[j] != ',' && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
      const std::string_view tok(line.data() + i, j - i);
      if (tok.front() == '-') throw Error(Errc::NegativeLabel, "row " + std::to_string(rows + 1));
      Label v = 0;
      const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
        throw Error(Errc::MalformedFile, "bad token '" + std::string(tok) + "'");
      labels.push_back(v);
      ++count;
      i = j;
    }
    if (count == 0) continue;
    if (rows == 0) cols = count;
    else if (count != cols)
      throw Error(Errc::MalformedFile, "ragged row " + std::to_string(rows + 1) + ": " + std::to_string(count) +
                                           " values, expected " + std::to_string(cols));
    ++rows;
  }
  if (rows == 0) throw Error(Errc::MalformedFile, "empty image");
  return LabeledImage(rows, cols, std::move(labels));
}

namespace {

std::string next_pgm_token(std::istream& in) {
  std::string tok;
  char ch = 0;
  while (in.get(ch)) {
    if (ch == '#') {
      std::string skip;
      std::getline(in, skip);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(ch))) {
      if (!tok.empty()) break;
      continue;
    }
    tok.push_back(ch);
  }
  return tok;
}

std::size_t parse_count(const std::string& tok, const char* what) {
  std::size_t v = 0;
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (tok.empty() || res.ec != std::errc() || res.ptr != tok.data() + tok.size())
    throw Error(Errc::MalformedFile, std::string("bad PGM ") + what);
  return v;
}

} // namespace

LabeledImage read_pgm(std::istream& in) {
  const std::string magic = next_pgm_token(in);
  if (magic != "P2" && magic != "P5") throw Error(Errc::MalformedFile, "not a P2/P5 PGM");
  const std::size_t cols = parse_count(next_pgm_token(in), "width");
  const std::size_t rows = parse_count(next_pgm_token(in), "height");
  const std::size_t maxval = parse_count(next_pgm_token(in), "maxval");
  if (maxval == 0 || maxval > 65535) throw Error(Errc::MalformedFile, "PGM maxval out of range");
  std::vector<Label> labels(rows * cols);
  if (magic == "P2") {
    for (auto& v : labels) {
      const std::string tok = next_pgm_token(in);
      if (!tok.empty() && tok.front() == '-') throw Error(Errc::NegativeLabel, "negative PGM sample");
      v = static_cast<Label>(parse_count(tok, "sample"));
      if (v > maxval) throw Error(Errc::MalformedFile, "PGM sample above maxval");
    }
  } else {
    const std::size_t width = maxval > 255 ? 2 : 1;
    std::vector<unsigned char> raw(labels.size() * width);
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (static_cast<std::size_t>(in.gcount()) != raw.size()) throw Error(Errc::MalformedFile, "truncated PGM");
    for (std::size_t i = 0; i < labels.size(); ++i)
      labels[i] = width == 2 ? static_cast<Label>((raw[2 * i] << 8) | raw[2 * i + 1]) : raw[i];
  }
  return LabeledImage(rows, cols, std::move(labels));
}

LabeledImage load_labeled_image(const std::filesystem::path& path, ImageFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot open " + path.string());
  if (format == ImageFormat::Auto) {
    const int c0 = in.peek();
    format = c0 == 'P' ? ImageFormat::Pgm : ImageFormat::Text;
  }
  return format == ImageFormat::Pgm ? read_pgm(in) : read_text_image(in);
}

void write_text_image(std::ostream& out, const LabeledImage& img) {
  std::string row;
  for (std::size_t r = 0; r < img.rows(); ++r) {
    row.clear();
    for (std::size_t c = 0; c < img.cols(); ++c) {
      if (c) row.push_back(' ');
      row += std::to_string(img.at(r, c));
    }
    row.push_back('\n');
    out << row;
  }
}

void write_pgm(std::ostream& out, const LabeledImage& img) {
  const Label top = img.data().empty() ? 0 : *std::max_element(img.data().begin(), img.data().end());
  if (top > 65535) throw Error(Errc::MalformedFile, "label above 65535 cannot be stored in PGM");
  const bool wide = top > 255;
  out << "P5\n" << img.cols() << ' ' << img.rows() << '\n' << (wide ? 65535 : 255) << '\n';
  std::vector<char> raw;
  raw.reserve(img.data().size() * (wide ? 2 : 1));
  for (Label v : img.data()) {
    if (wide) raw.push_back(static_cast<char>((v >> 8) & 0xff));
    raw.push_back(static_cast<char>(v & 0xff));
  }
  out.write(raw.data(), static_cast<std::streamsize>(raw.size()));
}

void save_labeled_image(const std::filesystem::path& path, const LabeledImage& img, ImageFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::IoError, "cannot write " + path.string());
  if (format == ImageFormat::Pgm) write_pgm(out, img);
  else write_text_image(out, img);
  if (!out) throw Error(Errc::IoError, "write failed for " + path.string());
}

} // namespace topotess
