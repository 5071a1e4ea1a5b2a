#include "oracles.hpp"

#include "topotess/alpha_complex.hpp"
#include "topotess/errors.hpp"
#include "topotess/pipeline.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace topotess;
namespace fs = std::filesystem;

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

// Small images keep the suite fast: 600 cells on a 320 x 320 grid.
CvtDatasetOptions small_dataset(std::size_t per_step, std::vector<std::size_t> steps) {
  CvtDatasetOptions o;
  o.images_per_step = per_step;
  o.rows = o.cols = 320;
  o.emit_steps = std::move(steps);
  return o;
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "topotess_pipeline_test" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

EntropyRecord record(std::string group, double pe0, double pe1) {
  EntropyRecord r;
  r.group = std::move(group);
  r.image_id = r.group + std::to_string(pe0);
  r.pe0 = pe0;
  r.pe1 = pe1;
  return r;
}

} // namespace

TEST_CASE("analyze composes the stages") {
  const auto images = generate_cvt_images(small_dataset(2, {1, 5}));
  REQUIRE(images.size() == 4);
  CHECK(images[0].group == "CVT1");
  CHECK(images[3].group == "CVT5");
  RunConfig cfg;
  const auto records = analyze(images, cfg);
  REQUIRE(records.size() == 4);
  for (std::size_t i = 0; i < images.size(); ++i) {
    const auto& r = records[i];
    CHECK(r.image_id == images[i].id);
    CHECK(r.group == images[i].group);
    CHECK(r.n_cells == 245);
    CHECK(r.bars0 == 244);

    // same thing by hand
    const auto sel = spiral_select(*images[i].image, 245);
    const auto bars = strip_infinite_dim0(compute_persistence(alpha_complex(sel.centroids)));
    CHECK(r.pe0 == persistent_entropy(BarLengths::of(bars, 0)));
    CHECK(r.pe1 == persistent_entropy(BarLengths::of(bars, 1)));
    CHECK(r.l1 == total_length(BarLengths::of(bars, 1)));
    CHECK(r.bars1 == bars.in_dimension(1).size());
    CHECK(r.pe0 <= std::log(244.0));
  }

  cfg.threads = 3;
  const auto parallel = analyze(images, cfg);
  for (std::size_t i = 0; i < images.size(); ++i) {
    CHECK(parallel[i].pe0 == records[i].pe0);
    CHECK(parallel[i].pe1 == records[i].pe1);
  }
}

TEST_CASE("bar policy, convention and log base are threaded through") {
  const auto pts = oracle::random_points(3, 245, Box{0, 0, 1024, 1024});
  RunConfig cfg;
  const auto strip = summarize_points(pts, cfg);
  cfg.log_base = LogBase::Two;
  CHECK(summarize_points(pts, cfg).pe1 == doctest::Approx(strip.pe1 / std::log(2.0)).epsilon(1e-12));
  cfg = RunConfig{};
  cfg.bar_policy = BarPolicy::CapInfinite;
  const auto capped = summarize_points(pts, cfg);
  CHECK(capped.bars0 == 245);
  CHECK(capped.pe1 == strip.pe1);
  CHECK(std::fabs(capped.pe0 - strip.pe0) > 1e-6);
  cfg.cap_value = 1.0;
  CHECK(error_of([&] { summarize_points(pts, cfg); }) == Errc::CapBelowMaxDeath);
  cfg = RunConfig{};
  cfg.convention = AlphaConvention::Radius;
  CHECK(summarize_points(pts, cfg).convention == AlphaConvention::Radius);
  CHECK(std::fabs(summarize_points(pts, cfg).pe1 - strip.pe1) > 1e-9);
}

TEST_CASE("analyze errors name the image") {
  CvtDatasetOptions o = small_dataset(1, {1});
  o.cvt.expected_points = 200;
  o.cvt.fixed_count = true;
  auto images = generate_cvt_images(o);
  images[0].id = "sparse_image";
  RunConfig cfg;
  try {
    analyze(images, cfg);
    FAIL("expected NotEnoughCells");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotEnoughCells);
    CHECK(std::string(e.what()).find("sparse_image") != std::string::npos);
  }
  cfg.n_cells = 2;
  CHECK(error_of([&] { analyze(images, cfg); }) == Errc::ConfigError);
  cfg = RunConfig{};
  cfg.threads = 0;
  CHECK(error_of([&] { cfg.validate(); }) == Errc::ConfigError);
}

TEST_CASE("config hash") {
  RunConfig a, b;
  b.threads = 8;
  b.out_dir = "elsewhere";
  CHECK(a.hash() == b.hash());
  b.n_cells = 200;
  CHECK(a.hash() != b.hash());
  RunConfig c;
  c.seed = 7;
  CHECK(a.hash() != c.hash());
  const auto meta = metadata_for(a);
  CHECK(meta.extra.find("n_cells=245") != std::string::npos);
  CHECK(meta.extra.find("bar_policy=strip_infinite") != std::string::npos);
}

TEST_CASE("compare routes by group count") {
  std::vector<EntropyRecord> recs;
  for (int i = 0; i < 5; ++i) {
    recs.push_back(record("A", 1.0 + 0.1 * i, 3.0 + 0.01 * i));
    recs.push_back(record("B", 2.0 + 0.1 * i, 2.0 + 0.01 * i));
    recs.push_back(record("C", 3.0 + 0.1 * i, 1.0 + 0.01 * i));
  }
  CompareOptions opts;
  const auto three = compare(recs, opts);
  REQUIRE(three.size() == 2);
  CHECK(three[0].statistic == Statistic::PE0);
  REQUIRE(three[0].reports.size() == 2);
  CHECK(three[0].reports[0].test == "kruskal_wallis");
  CHECK(three[0].reports[1].test == "dunn");
  CHECK(three[0].reports[0].groups == std::vector<std::string>{"A", "B", "C"});
  CHECK(three[0].reports[0].p_value < 0.01);

  opts.groups = {"C", "A"};
  const auto two = compare(recs, opts);
  REQUIRE(two[1].reports.size() == 1);
  CHECK(two[1].reports[0].test == "mann_whitney_u");
  CHECK(two[1].reports[0].statistic == 0.0);  // U(C, A): every C value of PE1 is below every A value
  CHECK(two[1].reports[0].groups == std::vector<std::string>{"C", "A"});

  opts.groups = {"A", "A"};
  CHECK(error_of([&] { compare(recs, opts); }) == Errc::ConfigError);
  opts.groups = {"A", "Z"};
  CHECK(error_of([&] { compare(recs, opts); }) == Errc::ConfigError);
  opts.groups = {"A"};
  CHECK(error_of([&] { compare(recs, opts); }) == Errc::TooFewGroups);

  const auto json = nlohmann::json::parse(comparisons_to_json(three, metadata_for(RunConfig{})));
  CHECK(json.at("metadata").at("seed") == 42);
  CHECK(json.at("comparisons").size() == 2);
  CHECK(comparisons_to_table(three).find("== PE1 ==") != std::string::npos);
}

TEST_CASE("records CSV round trip") {
  std::vector<EntropyRecord> recs{record("CVT1", 5.25, 3.5), record("CVT4", 5.0 / 3.0, 0.1)};
  recs[1].bars0 = 244;
  recs[1].policy = BarPolicy::CapInfinite;
  std::stringstream buf;
  write_records_csv(buf, recs, metadata_for(RunConfig{}));
  CHECK(buf.str().rfind("# topotess", 0) == 0);
  const auto back = read_records_csv(buf);
  REQUIRE(back.size() == 2);
  CHECK(back[1].pe0 == recs[1].pe0);
  CHECK(back[1].bars0 == 244);
  CHECK(back[1].policy == BarPolicy::CapInfinite);
  CHECK(back[0].image_id == recs[0].image_id);
  std::stringstream bad("image_id,group\nx,y\n");
  CHECK(error_of([&] { read_records_csv(bad); }) == Errc::MalformedFile);
}

TEST_CASE("sweep") {
  const auto images = generate_cvt_images(small_dataset(3, {1, 5}));
  RunConfig cfg;
  SweepOptions opts;
  opts.n_min = 45;
  opts.n_max = 85;
  opts.step = 20;
  const auto rows = sweep(images, cfg, opts);
  // 3 cell counts x 2 statistics x one Mann-Whitney row
  REQUIRE(rows.size() == 6);
  CHECK(rows[0].n == 45);
  CHECK(rows.back().n == 85);
  CHECK(rows[0].test == "mann_whitney_u");
  CHECK(rows[0].comparison == "CVT1 vs CVT5");

  // each n matches a direct analysis at that cell count
  cfg.n_cells = 65;
  const auto direct = compare(analyze(images, cfg), opts.compare);
  CHECK(rows[2].n == 65);
  CHECK(rows[2].p_value == direct[0].reports[0].p_value);
  CHECK(rows[3].p_value == direct[1].reports[0].p_value);

  opts.n_min = opts.n_max = 65;
  CHECK(sweep(images, RunConfig{}, opts).size() == 2);
  opts.n_min = 90;
  CHECK(error_of([&] { sweep(images, RunConfig{}, opts); }) == Errc::ConfigError);

  std::stringstream csv;
  write_sweep_csv(csv, rows, metadata_for(RunConfig{}));
  CHECK(csv.str().find("n,statistic,test,comparison") != std::string::npos);
  const auto svg = render_sweep_svg(rows, metadata_for(RunConfig{}));
  CHECK(svg.rfind("<?xml", 0) == 0);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
}

TEST_CASE("datasets are reproducible and manifests load back") {
  const auto a = generate_cvt_images(small_dataset(2, {1, 4}));
  const auto b = generate_cvt_images(small_dataset(2, {1, 4}));
  auto threaded = small_dataset(2, {1, 4});
  threaded.threads = 2;
  const auto c = generate_cvt_images(threaded);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(*a[i].image == *b[i].image);
    CHECK(*a[i].image == *c[i].image);
  }
  CHECK(!(*a[0].image == *a[2].image));

  const auto dir = scratch("dataset");
  const auto written = make_cvt_dataset(small_dataset(2, {1, 4}), dir, ImageFormat::Pgm);
  const auto loaded = load_manifest(dir / "manifest.json");
  REQUIRE(loaded.size() == written.size());
  for (std::size_t i = 0; i < loaded.size(); ++i) {
    CHECK(loaded[i].id == a[i].id);
    CHECK(load_labeled_image(loaded[i].path) == *a[i].image);
  }

  std::ofstream(dir / "partial.json") << R"([{"path": ")" << loaded[0].path.filename().string()
                                      << R"(", "group": "CVT1", "id": "keep"},
    {"path": "missing.pgm", "group": "CVT1", "exclude": true}])";
  const auto partial = load_manifest(dir / "partial.json");
  REQUIRE(partial.size() == 1);
  CHECK(partial[0].id == "keep");
  CHECK(fs::exists(partial[0].path));

  std::ofstream(dir / "broken.json") << "{not json";
  CHECK(error_of([&] { load_manifest(dir / "broken.json"); }) == Errc::ConfigError);
  CHECK(error_of([&] { load_manifest(dir / "absent.json"); }) == Errc::IoError);
}

TEST_CASE("box summaries") {
  const std::vector<double> v{1, 2, 3, 4, 5, 6, 7, 8, 9, 100};
  const auto s = box_summary(v);
  CHECK(s.min == 1);
  CHECK(s.max == 100);
  CHECK(s.q1 == doctest::Approx(3.25));
  CHECK(s.median == doctest::Approx(5.5));
  CHECK(s.q3 == doctest::Approx(7.75));
  CHECK(s.whisker_low == 1);
  CHECK(s.whisker_high == 9);
  CHECK(s.outliers == std::vector<double>{100});
  const std::vector<double> one{4};
  CHECK(box_summary(one).median == 4);
  CHECK(error_of([] { box_summary(std::vector<double>{}); }) == Errc::EmptyGroup);

  std::vector<EntropyRecord> recs{record("B&<", 1, 2), record("A", 2, 3), record("B&<", 1.5, 2)};
  const auto svg = render_boxplot(recs, Statistic::PE0, metadata_for(RunConfig{}));
  CHECK(svg.rfind("<?xml", 0) == 0);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("B&amp;&lt;") < svg.find(">A<"));
  CHECK(svg.find("B&<") == std::string::npos);
}
