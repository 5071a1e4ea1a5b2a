// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "properties.hpp"
#include "stats_tables.hpp"

#include "topotess/pipeline.hpp"
#include "topotess/stats.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

using namespace topotess;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& name, double limit_seconds, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit_seconds > 0 && secs > limit_seconds) {
    o.ok = false;
    o.detail += "; over time limit of " + std::to_string(static_cast<int>(limit_seconds)) + " s";
  }
  if (!o.ok) ++failures;
  std::printf("C%d %s  %s: %s (%.1f s)\n", id, o.ok ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(), secs);
  std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

const PairwiseResult& pair_named(const TestReport& r, const std::string& a, const std::string& b) {
  for (const auto& p : r.pairs)
    if (p.first == a && p.second == b) return p;
  throw std::runtime_error("missing pair " + a + " vs " + b);
}

// The CVT dataset of criterion 3, shared with 6 and 7.
CvtDatasetOptions cvt_options(std::size_t threads) {
  CvtDatasetOptions o;
  o.images_per_step = 16;
  o.rows = o.cols = 1024;
  o.cvt.box = Box{0, 0, 1024, 1024};
  o.cvt.expected_points = 600;
  o.cvt.steps = 5;
  o.cvt.seed = 42;
  o.emit_steps = {1, 4, 5};
  o.threads = threads;
  return o;
}

struct CvtRun {
  std::vector<ImageEntry> images;
  std::vector<EntropyRecord> records;
  std::vector<StatisticComparison> comparisons;
  std::string records_csv;
  std::string comparisons_json;
};

CvtRun run_cvt(std::size_t threads) {
  CvtRun run;
  run.images = generate_cvt_images(cvt_options(threads));
  RunConfig cfg;
  cfg.n_cells = 245;
  cfg.threads = threads;
  run.records = analyze(run.images, cfg);
  CompareOptions copts;
  copts.adjust = PAdjust::Holm;
  run.comparisons = compare(run.records, copts);
  std::ostringstream csv;
  write_records_csv(csv, run.records, metadata_for(cfg));
  run.records_csv = csv.str();
  run.comparisons_json = comparisons_to_json(run.comparisons, metadata_for(cfg));
  return run;
}

} // namespace

int main() {
  criterion(1, "scale invariance", 60, [] {
    const auto s = props::scale_study(50, 245, 1);
    const bool ok = s.sets == 50 && s.max_strip_diff <= 1e-9 && s.cap_changed >= 45;
    return Outcome{ok, fmt("strip max |dPE| = %.3g over %zu sets x 3 scalings; fixed cap moved PE0 > 1e-3 in %zu/%zu "
                           "(cap at each complex's largest value: %zu/%zu)",
                           s.max_strip_diff, s.sets, s.cap_changed, s.sets, s.max_value_changed, s.sets)};
  });

  criterion(2, "persistence oracle equivalence", 30, [] {
    const auto c = props::persistence_oracle_equivalence(200, 12);
    return Outcome{c.ok && c.cases >= 200, c.ok ? fmt("%zu complexes, all filtration values", c.cases) : c.detail};
  });

  CvtRun first;
  criterion(3, "CVT discrimination", 300, [&] {
    first = run_cvt(1);
    const auto& pe0 = first.comparisons[0].reports;
    const auto& pe1 = first.comparisons[1].reports;
    const double kw0 = pe0[0].p_value, kw1 = pe1[0].p_value;
    double worst_pe1 = 0;
    for (const auto& p : pe1[1].pairs) worst_pe1 = std::max(worst_pe1, p.p_adjusted);
    const double d14 = pair_named(pe0[1], "CVT1", "CVT4").p_adjusted;
    const double d15 = pair_named(pe0[1], "CVT1", "CVT5").p_adjusted;
    const bool ok = kw0 < 0.01 && kw1 < 0.01 && worst_pe1 < 0.05 && d14 < 0.01 && d15 < 0.01;
    return Outcome{ok, fmt("KW p PE0 = %.3g, PE1 = %.3g; max Dunn-Holm p PE1 = %.3g; PE0 CVT1-4 = %.3g, CVT1-5 = %.3g",
                           kw0, kw1, worst_pe1, d14, d15)};
  });

  criterion(4, "property suites", 0, [] {
    const std::vector<std::pair<std::string, std::function<props::Check()>>> suites{
        {"delaunay empty circle", [] { return props::delaunay_empty_circle(); }},
        {"delaunay counts", [] { return props::delaunay_counts(); }},
        {"voronoi tiling", [] { return props::voronoi_tiling(); }},
        {"alpha monotonicity", [] { return props::alpha_monotonicity(); }},
        {"alpha edge bound", [] { return props::alpha_edge_lower_bound(); }},
        {"alpha definition oracle", [] { return props::alpha_definition_oracle(); }},
        {"persistence vs betti", [] { return props::persistence_oracle_equivalence(); }},
        {"dim0 methods", [] { return props::dim0_methods_agree(); }},
        {"alpha barcode shape", [] { return props::alpha_barcode_shape(); }},
        {"entropy invariances", [] { return props::entropy_invariances(); }},
        {"spiral", [] { return props::spiral_properties(); }},
        {"lloyd energy", [] { return props::lloyd_energy_decreases(); }},
        {"cvt path", [] { return props::cvt_path_properties(); }},
        {"null calibration", [] { return props::calibration(2000); }},
        {"rank invariance", [] { return props::rank_invariance(); }},
    };
    Outcome o;
    std::size_t passed = 0;
    for (const auto& [name, run] : suites) {
      const auto c = run();
      if (c.ok) {
        ++passed;
      } else {
        o.ok = false;
        o.detail += name + ": " + c.detail + "; ";
      }
    }
    const auto rates = props::null_rejection_rates(2000);
    o.detail += fmt("%zu/%zu suites; null rejection KW %.4f, Dunn %.4f, MW %.4f", passed, suites.size(),
                    rates.kruskal_wallis, rates.dunn, rates.mann_whitney);
    return o;
  });

  criterion(5, "statistics exactness", 0, [] {
    auto g = [](std::vector<std::vector<double>> v) {
      SampleGroups out;
      for (std::size_t i = 0; i < v.size(); ++i) out.push_back({"g" + std::to_string(i), v[i]});
      return out;
    };
    const auto kw = kruskal_wallis(g({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}}));
    const std::vector<double> a{1, 2}, b{3, 4};
    const auto mw = mann_whitney_u(a, b);
    bool ok = std::fabs(kw.statistic - 7.2) <= 1e-12 && std::fabs(kw.p_value - 0.0273237) <= 1e-7 &&
              mw.method == "exact" && std::fabs(mw.p_value - 1.0 / 3.0) <= 1e-12;
    double worst = 0;
    for (const auto& row : oracle_tables::dunn) {
      const auto raw = dunn_test(g(row.groups), PAdjust::None);
      const auto holm = dunn_test(g(row.groups), PAdjust::Holm);
      const auto a_name = "g" + std::to_string(row.i), b_name = "g" + std::to_string(row.j);
      worst = std::max({worst, std::fabs(pair_named(raw, a_name, b_name).statistic - row.z),
                        std::fabs(pair_named(raw, a_name, b_name).p_value - row.p),
                        std::fabs(pair_named(holm, a_name, b_name).p_adjusted - row.holm)});
    }
    for (const auto& row : oracle_tables::p_adjust) {
      const auto h = p_adjust(row.p, PAdjust::Holm);
      for (std::size_t i = 0; i < h.size(); ++i) worst = std::max(worst, std::fabs(h[i] - row.holm[i]));
    }
    ok = ok && worst <= 1e-6;
    return Outcome{ok, fmt("KW H = %.15g, p = %.9g; MW exact p = %.15g; Dunn/Holm max table error %.2g", kw.statistic,
                           kw.p_value, mw.p_value, worst)};
  });

  criterion(6, "sweep behaviour", 900, [&] {
    if (first.images.empty()) first = run_cvt(1);
    SweepOptions opts;
    opts.n_min = 25;
    opts.n_max = 245;
    opts.step = 20;
    opts.compare.groups = {"CVT4", "CVT5"};
    const auto rows = sweep(first.images, RunConfig{}, opts);

    constexpr std::size_t never = std::numeric_limits<std::size_t>::max();
    auto first_significant = [&](Statistic s) {
      for (const auto& r : rows)
        if (r.statistic == s && r.p_value < 0.05) return r.n;
      return never;
    };
    // non-significant points after the first significant one
    auto flickers = [&](Statistic s, std::size_t from) {
      std::size_t k = 0;
      for (const auto& r : rows)
        if (r.statistic == s && r.n > from && r.p_value >= 0.05) ++k;
      return k;
    };
    const auto n0 = first_significant(Statistic::PE0), n1 = first_significant(Statistic::PE1);
    const auto f0 = n0 == never ? 0 : flickers(Statistic::PE0, n0);
    const auto f1 = n1 == never ? 0 : flickers(Statistic::PE1, n1);
    const bool ok = n1 != never && n1 <= n0 && f0 <= 1 && f1 <= 1;
    std::string series;
    for (const auto& r : rows) series += fmt(" %s@%zu=%.3g", std::string(to_string(r.statistic)).c_str(), r.n, r.p_value);
    auto show = [&](std::size_t n) { return n == never ? std::string("never") : std::to_string(n); };
    return Outcome{ok, "first n with p < 0.05: PE1 " + show(n1) + ", PE0 " + show(n0) + "; flickers PE1 " +
                           std::to_string(f1) + ", PE0 " + std::to_string(f0) + ";" + series};
  });

  criterion(7, "determinism", 0, [&] {
    if (first.images.empty()) first = run_cvt(1);
    const auto again = run_cvt(1);
    const auto threaded = run_cvt(4);
    const bool same_seq = again.records_csv == first.records_csv && again.comparisons_json == first.comparisons_json;
    const bool same_thr =
        threaded.records_csv == first.records_csv && threaded.comparisons_json == first.comparisons_json;
    return Outcome{same_seq && same_thr,
                   fmt("records.csv %zu bytes; rerun %s, 4 threads %s", first.records_csv.size(),
                       same_seq ? "identical" : "DIFFERS", same_thr ? "identical" : "DIFFERS")};
  });

  std::printf("%d of 7 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
