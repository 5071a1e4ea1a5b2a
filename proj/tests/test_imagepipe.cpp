#include "oracles.hpp"
#include "properties.hpp"

#include "topotess/errors.hpp"
#include "topotess/imagepipe.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace topotess;

namespace {

Errc error_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return Errc::ConfigError;
}

LabeledImage from_rows(const std::vector<std::vector<Label>>& rows) {
  LabeledImage img(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c) img.set(r, c, rows[r][c]);
  return img;
}

// Eight labels; 1, 2 and 8 touch the border. Center is (x=3, y=3), a
// boundary pixel. Walk (x = column, y = row):
//   i=1 (step -1): x -> (2,3)=5 take        ; y -> (2,2)=0
//   i=2 (step +1): x -> (3,2)=4 take, (4,2)=4; y -> (4,3)=6 take, (4,4)=8 masked
//   i=3 (step -1): x -> (3,4)=7 take, (2,4)=5, (1,4)=0; y -> (1,3)=3 take
// giving C = {5, 4, 6, 7, 3}; without the mask the walk would pick 8 fourth.
const LabeledImage hand_traced = from_rows({
    {1, 1, 1, 0, 2, 2},
    {0, 0, 0, 0, 0, 2},
    {0, 3, 0, 4, 4, 0},
    {0, 3, 5, 0, 6, 0},
    {0, 0, 5, 7, 8, 8},
    {0, 0, 0, 0, 8, 8},
});

std::filesystem::path temp_file(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "topotess_imagepipe_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

} // namespace

TEST_CASE("text images") {
  SUBCASE("whitespace separated") {
    std::istringstream in("0 0 0\n0 5 0\n0 0 0\n");
    const auto img = read_text_image(in);
    CHECK(img.rows() == 3);
    CHECK(img.cols() == 3);
    CHECK(img.at(1, 1) == 5);
    CHECK(valid_labels(img) == std::vector<Label>{5});
  }
  SUBCASE("comma separated, trailing blank line, CRLF") {
    std::istringstream in("1,2,3\r\n4,5,6\r\n\n");
    const auto img = read_text_image(in);
    CHECK(img.rows() == 2);
    CHECK(img.at(1, 2) == 6);
  }
  SUBCASE("ragged rows") {
    std::istringstream in("0 0 0\n0 5\n0 0 0\n");
    CHECK(error_of([&] { read_text_image(in); }) == Errc::MalformedFile);
  }
  SUBCASE("negative label") {
    std::istringstream in("0 0\n0 -3\n");
    CHECK(error_of([&] { read_text_image(in); }) == Errc::NegativeLabel);
  }
  SUBCASE("not a number") {
    std::istringstream in("0 0\n0 x\n");
    CHECK(error_of([&] { read_text_image(in); }) == Errc::MalformedFile);
  }
  SUBCASE("missing file") {
    CHECK(error_of([] { load_labeled_image("/nonexistent/topotess/image.txt"); }) == Errc::IoError);
  }
}

TEST_CASE("pgm images") {
  SUBCASE("16-bit P5 keeps labels up to 65535") {
    LabeledImage img(2, 3, {0, 65535, 300, 7, 0, 1});
    std::stringstream buf;
    write_pgm(buf, img);
    CHECK(buf.str().rfind("P5\n3 2\n65535\n", 0) == 0);
    CHECK(read_pgm(buf) == img);
  }
  SUBCASE("8-bit P5") {
    LabeledImage img(2, 2, {0, 255, 3, 4});
    std::stringstream buf;
    write_pgm(buf, img);
    CHECK(buf.str().size() == std::string("P5\n2 2\n255\n").size() + 4);
    CHECK(read_pgm(buf) == img);
  }
  SUBCASE("P2 with comments") {
    std::istringstream in("P2\n# labels\n3 2\n65535\n0 1 2\n700 0 9\n");
    const auto img = read_pgm(in);
    CHECK(img.at(1, 0) == 700);
    CHECK(img.at(0, 2) == 2);
  }
  SUBCASE("truncated data") {
    std::istringstream in(std::string("P5\n4 4\n255\n") + "abc");
    CHECK(error_of([&] { read_pgm(in); }) == Errc::MalformedFile);
  }
  SUBCASE("file round trips and format detection") {
    const auto img = hand_traced;
    for (auto fmt : {ImageFormat::Text, ImageFormat::Pgm}) {
      const auto path = temp_file(fmt == ImageFormat::Pgm ? "img.pgm" : "img.txt");
      save_labeled_image(path, img, fmt);
      CHECK(load_labeled_image(path) == img);
      CHECK(load_labeled_image(path, fmt) == img);
    }
  }
}

TEST_CASE("valid labels") {
  CHECK(valid_labels(hand_traced) == std::vector<Label>{3, 4, 5, 6, 7});
  CHECK(valid_labels(from_rows({{0, 0, 0}, {0, 9, 0}, {0, 0, 0}})) == std::vector<Label>{9});
  CHECK(valid_labels(from_rows({{0, 9, 0}, {0, 9, 0}, {0, 0, 0}})).empty());
  CHECK(valid_labels(LabeledImage(4, 4)).empty());
  CHECK(disconnected_labels(hand_traced).empty());
  CHECK(disconnected_labels(from_rows({{0, 0, 0, 0}, {0, 4, 0, 4}, {0, 0, 0, 0}})) == std::vector<Label>{4});
  // diagonal contact is not 4-connected
  CHECK(disconnected_labels(from_rows({{4, 0}, {0, 4}})) == std::vector<Label>{4});
}

TEST_CASE("spiral selection") {
  SUBCASE("hand-traced 6x6 matrix") {
    const auto sel = spiral_select(hand_traced, 5);
    CHECK(sel.labels == std::vector<Label>{5, 4, 6, 7, 3});
    CHECK(oracle::spiral_reference(hand_traced, 5) == sel.labels);
    REQUIRE(sel.centroids.size() == 5);
    CHECK(sel.centroids[0] == Point2{2.0, 3.5});
    CHECK(sel.centroids[1] == Point2{3.5, 2.0});
    CHECK(sel.centroids[2] == Point2{4.0, 3.0});
    CHECK(sel.centroids[3] == Point2{3.0, 4.0});
    CHECK(sel.centroids[4] == Point2{1.0, 2.5});
    CHECK(spiral_select(hand_traced, 3).labels == std::vector<Label>{5, 4, 6});
  }
  SUBCASE("n = 1 with a nonzero center") {
    auto img = from_rows({{0, 0, 0, 0, 0}, {0, 1, 1, 2, 0}, {0, 3, 4, 2, 0}, {0, 0, 0, 0, 0}});
    CHECK(spiral_select(img, 1).labels == std::vector<Label>{4});
  }
  SUBCASE("too many cells requested") {
    CHECK(error_of([] { spiral_select(hand_traced, 6); }) == Errc::NotEnoughCells);
    CHECK(error_of([] { spiral_select(LabeledImage(3, 3), 1); }) == Errc::NotEnoughCells);
  }
  SUBCASE("n = 0 selects nothing") { CHECK(spiral_select(hand_traced, 0).labels.empty()); }
}

TEST_CASE("centroids") {
  LabeledImage img(4, 6);
  for (std::size_t r : {1u, 2u})
    for (std::size_t c : {3u, 4u}) img.set(r, c, 7);
  img.set(3, 0, 2);
  const std::vector<Label> labels{7, 2};
  const auto c = centroids(img, labels);
  CHECK(c[0] == Point2{3.5, 1.5});
  CHECK(c[1] == Point2{0.0, 3.0});
  const std::vector<Label> missing{9};
  CHECK(error_of([&] { centroids(img, missing); }) == Errc::UnknownLabel);
  const std::vector<Label> zero{0};
  CHECK(error_of([&] { centroids(img, zero); }) == Errc::UnknownLabel);
}

TEST_CASE("property: spiral prefix, determinism, validity, reference walk") {
  const auto c = props::spiral_properties();
  INFO(c.detail);
  CHECK(c.cases > 10);
  REQUIRE(c.ok);
}
