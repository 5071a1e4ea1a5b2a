#include "cli.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = topotess::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path tmp(const std::string& name) {
  const fs::path dir = fs::path(TOPOTESS_TEST_TMP) / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

} // namespace

TEST_CASE("help, version and usage errors") {
  CHECK(run({"--help"}).code == 0);
  const auto v = run({"--version"});
  CHECK(v.code == 0);
  CHECK(v.out.find("0.1.0") != std::string::npos);
  CHECK(run({}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({"analyze"}).code == 1);  // --manifest is required
  CHECK(run({"analyze", "--manifest", "/nonexistent/manifest.json"}).code == 1);
}

TEST_CASE("end to end") {
  const auto root = tmp("e2e");
  const auto data = root / "data";
  const auto gen = run({"cvt", "--images-per-step", "4", "--emit", "1,5", "--rows", "320", "--cols", "320", "--out",
                        data.string()});
  REQUIRE_MESSAGE(gen.code == 0, gen.err);
  REQUIRE(fs::exists(data / "manifest.json"));
  CHECK(nlohmann::json::parse(slurp(data / "manifest.json")).size() == 8);

  const auto manifest = (data / "manifest.json").string();
  const auto a = run({"analyze", "--manifest", manifest, "--out", (root / "a").string()});
  REQUIRE_MESSAGE(a.code == 0, a.err);
  const auto records = root / "a" / "records.csv";
  REQUIRE(fs::exists(records));
  const auto csv = slurp(records);
  CHECK(csv.rfind("# topotess", 0) == 0);

  SUBCASE("analyze is reproducible across thread counts") {
    const auto b = run({"analyze", "--manifest", manifest, "--threads", "2", "--out", (root / "b").string()});
    REQUIRE(b.code == 0);
    CHECK(slurp(root / "b" / "records.csv") == csv);
  }
  SUBCASE("compare") {
    const auto c = run({"compare", "--records", records.string(), "--out", (root / "c").string()});
    REQUIRE_MESSAGE(c.code == 0, c.err);
    CHECK(c.out.find("mann_whitney_u") != std::string::npos);
    const auto j = nlohmann::json::parse(slurp(root / "c" / "comparisons.json"));
    CHECK(j.at("comparisons").size() == 2);
    CHECK(fs::exists(root / "c" / "comparisons.txt"));
    const auto bad = run({"compare", "--records", records.string(), "--groups", "CVT1,CVT9"});
    CHECK(bad.code == 1);
    CHECK(bad.err.find("CVT9") != std::string::npos);
    CHECK(run({"compare", "--records", records.string(), "--adjust", "sidak"}).code == 1);
  }
  SUBCASE("sweep") {
    const auto s = run({"sweep", "--manifest", manifest, "--n-min", "45", "--n-max", "85", "--out",
                        (root / "s").string()});
    REQUIRE_MESSAGE(s.code == 0, s.err);
    CHECK(fs::exists(root / "s" / "sweep.csv"));
    CHECK(fs::exists(root / "s" / "sweep.svg"));
  }
  SUBCASE("plot") {
    const auto p = run({"plot", "--records", records.string(), "--statistics", "PE1", "--out", (root / "p").string()});
    REQUIRE_MESSAGE(p.code == 0, p.err);
    CHECK(fs::exists(root / "p" / "boxplot_PE1.svg"));
    CHECK(!fs::exists(root / "p" / "boxplot_PE0.svg"));
  }
  SUBCASE("data and config failures map to exit codes") {
    const auto too_many = run({"analyze", "--manifest", manifest, "--cells", "5000", "--out", (root / "x").string()});
    CHECK(too_many.code == 2);
    CHECK(too_many.err.find("error:") == 0);
    CHECK(run({"analyze", "--manifest", manifest, "--cap", "10"}).code == 1);
    CHECK(run({"analyze", "--manifest", manifest, "--bar-policy", "cap", "--cap", "1e-9", "--out",
               (root / "y").string()})
              .code == 3);
    CHECK(run({"analyze", "--manifest", manifest, "--threads", "0"}).code == 1);
    std::ofstream(root / "broken.csv") << "not,a,records,file\n";
    CHECK(run({"compare", "--records", (root / "broken.csv").string()}).code == 2);
  }
}
