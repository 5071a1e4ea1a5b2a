#include "topotess/stats.hpp"

#include "topotess/errors.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace topotess {

std::string_view to_string(PAdjust m) noexcept {
  switch (m) {
  case PAdjust::None: return "none";
  case PAdjust::Holm: return "holm";
  case PAdjust::Bonferroni: return "bonferroni";
  case PAdjust::BenjaminiHochberg: return "bh";
  }
  return "none";
}

std::string_view to_string(Alternative a) noexcept {
  switch (a) {
  case Alternative::TwoSided: return "two-sided";
  case Alternative::Less: return "less";
  case Alternative::Greater: return "greater";
  }
  return "two-sided";
}

PAdjust parse_padjust(std::string_view s) {
  if (s == "holm") return PAdjust::Holm;
  if (s == "bonferroni") return PAdjust::Bonferroni;
  if (s == "bh" || s == "benjamini_hochberg" || s == "fdr") return PAdjust::BenjaminiHochberg;
  if (s == "none") return PAdjust::None;
  throw Error(Errc::ConfigError, "unknown p-value adjustment '" + std::string(s) + "'");
}

double chi2_sf(double x, double df) {
  if (!(df > 0)) throw Error(Errc::ConfigError, "chi-square degrees of freedom must be positive");
  if (x <= 0) return 1.0;
  return boost::math::gamma_q(df / 2.0, x / 2.0);
}

double normal_sf(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

std::vector<double> midranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    const double r = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r;
    i = j + 1;
  }
  return ranks;
}

double tie_term(std::span<const double> values) {
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  double sum = 0.0;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    const double t = static_cast<double>(j - i);
    sum += t * t * t - t;
    i = j;
  }
  return sum;
}

namespace {

struct Pooled {
  std::vector<double> values;
  std::vector<double> ranks;
  std::vector<double> rank_sum;
  std::vector<std::size_t> sizes;
  double n = 0.0;
  double ties = 0.0;
};

Pooled pool(const SampleGroups& groups, std::size_t min_groups) {
  if (groups.size() < min_groups) throw Error(Errc::TooFewGroups, "need at least " + std::to_string(min_groups) + " groups");
  Pooled p;
  for (const auto& g : groups) {
    if (g.values.empty()) throw Error(Errc::EmptyGroup, "group '" + g.name + "' is empty");
    for (double v : g.values)
      if (!std::isfinite(v)) throw Error(Errc::ConfigError, "non-finite observation in '" + g.name + "'");
    p.values.insert(p.values.end(), g.values.begin(), g.values.end());
    p.sizes.push_back(g.values.size());
  }
  p.ranks = midranks(p.values);
  p.n = static_cast<double>(p.values.size());
  p.ties = tie_term(p.values);
  std::size_t offset = 0;
  for (std::size_t size : p.sizes) {
    p.rank_sum.push_back(std::accumulate(p.ranks.begin() + static_cast<std::ptrdiff_t>(offset),
                                         p.ranks.begin() + static_cast<std::ptrdiff_t>(offset + size), 0.0));
    offset += size;
  }
  return p;
}

std::vector<std::string> names_of(const SampleGroups& groups) {
  std::vector<std::string> out;
  for (const auto& g : groups) out.push_back(g.name);
  return out;
}

double tail(double z, Alternative alt) {
  switch (alt) {
  case Alternative::TwoSided: return std::min(1.0, 2.0 * normal_sf(std::fabs(z)));
  case Alternative::Greater: return normal_sf(z);
  case Alternative::Less: return normal_sf(-z);
  }
  return 1.0;
}

} // namespace

TestReport kruskal_wallis(const SampleGroups& groups) {
  const Pooled p = pool(groups, 2);
  if (p.n < 3) throw Error(Errc::TooFewGroups, "Kruskal-Wallis needs at least 3 observations");
  const double correction = 1.0 - p.ties / (p.n * p.n * p.n - p.n);
  if (!(correction > 0)) throw Error(Errc::AllValuesIdentical, "all observations are tied");
  double s = 0.0;
  for (std::size_t i = 0; i < p.sizes.size(); ++i) s += p.rank_sum[i] * p.rank_sum[i] / static_cast<double>(p.sizes[i]);
  double h = 12.0 / (p.n * (p.n + 1.0)) * s - 3.0 * (p.n + 1.0);
  h = std::max(0.0, h / correction);
  TestReport r;
  r.test = "kruskal_wallis";
  r.statistic_name = "H";
  r.statistic = h;
  r.df = static_cast<double>(groups.size() - 1);
  r.p_value = chi2_sf(h, r.df);
  r.method = "chi-square";
  r.groups = names_of(groups);
  return r;
}

TestReport dunn_test(const SampleGroups& groups, PAdjust adjust, Alternative alternative) {
  const Pooled p = pool(groups, 2);
  if (p.n < 3) throw Error(Errc::TooFewGroups, "Dunn test needs at least 3 observations");
  const double base = p.n * (p.n + 1.0) / 12.0 - p.ties / (12.0 * (p.n - 1.0));
  if (!(base > 0)) throw Error(Errc::AllValuesIdentical, "all observations are tied");
  TestReport r;
  r.test = "dunn";
  r.statistic_name = "z";
  r.method = "normal";
  r.adjustment = adjust;
  r.alternative = alternative;
  r.groups = names_of(groups);
  std::vector<double> raw;
  for (std::size_t i = 0; i < groups.size(); ++i)
    for (std::size_t j = i + 1; j < groups.size(); ++j) {
      const double ni = static_cast<double>(p.sizes[i]), nj = static_cast<double>(p.sizes[j]);
      const double diff = p.rank_sum[i] / ni - p.rank_sum[j] / nj;
      const double z = diff / std::sqrt(base * (1.0 / ni + 1.0 / nj));
      PairwiseResult pr;
      pr.first = groups[i].name;
      pr.second = groups[j].name;
      pr.statistic = z;
      pr.p_value = tail(z, alternative);
      raw.push_back(pr.p_value);
      r.pairs.push_back(pr);
    }
  const auto adjusted = p_adjust(raw, adjust);
  for (std::size_t k = 0; k < r.pairs.size(); ++k) r.pairs[k].p_adjusted = adjusted[k];
  return r;
}

namespace {

// counts[u] = number of orderings of na a's and nb b's with U(a, b) = u.
std::vector<double> mann_whitney_null_counts(std::size_t na, std::size_t nb) {
  const std::size_t umax = na * nb;
  // prev[j][u] holds the table for i - 1 a's and j b's.
  std::vector<std::vector<double>> prev(nb + 1, std::vector<double>(umax + 1, 0.0));
  for (auto& row : prev) row[0] = 1.0;
  for (std::size_t i = 1; i <= na; ++i) {
    std::vector<std::vector<double>> cur(nb + 1, std::vector<double>(umax + 1, 0.0));
    cur[0][0] = 1.0;
    for (std::size_t j = 1; j <= nb; ++j)
      for (std::size_t u = 0; u <= i * j; ++u) {
        // the largest element is an a (beats all j b's) or a b
        double c = cur[j - 1][u];
        if (u >= j) c += prev[j][u - j];
        cur[j][u] = c;
      }
    prev.swap(cur);
  }
  return prev[nb];
}

} // namespace

TestReport mann_whitney_u(std::span<const double> a, std::span<const double> b, MannWhitneyMode mode,
                          Alternative alternative) {
  if (a.empty() || b.empty()) throw Error(Errc::EmptyGroup, "Mann-Whitney needs two non-empty samples");
  SampleGroups groups{{"a", {a.begin(), a.end()}}, {"b", {b.begin(), b.end()}}};
  const Pooled p = pool(groups, 2);
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  const double u = p.rank_sum[0] - na * (na + 1.0) / 2.0;
  const bool ties = p.ties > 0;

  TestReport r;
  r.test = "mann_whitney_u";
  r.statistic_name = "U";
  r.statistic = u;
  r.alternative = alternative;
  r.groups = {"a", "b"};

  bool exact = false;
  if (mode == MannWhitneyMode::Exact) {
    if (ties) throw Error(Errc::ExactWithTies, "exact Mann-Whitney distribution assumes no ties");
    exact = true;
  } else if (mode == MannWhitneyMode::Auto) {
    exact = !ties && a.size() * b.size() <= 400;
  }

  if (exact) {
    const auto counts = mann_whitney_null_counts(a.size(), b.size());
    const double total = std::accumulate(counts.begin(), counts.end(), 0.0);
    const auto ui = static_cast<std::size_t>(std::llround(u));
    double le = 0.0, ge = 0.0;
    for (std::size_t k = 0; k < counts.size(); ++k) {
      if (k <= ui) le += counts[k];
      if (k >= ui) ge += counts[k];
    }
    le /= total;
    ge /= total;
    r.method = "exact";
    r.p_value = alternative == Alternative::TwoSided ? std::min(1.0, 2.0 * std::min(le, ge))
                : alternative == Alternative::Greater ? ge
                                                      : le;
    return r;
  }

  const double n = na + nb;
  const double mean = na * nb / 2.0;
  const double var = na * nb / 12.0 * ((n + 1.0) - p.ties / (n * (n - 1.0)));
  if (!(var > 0)) throw Error(Errc::AllValuesIdentical, "all observations are tied");
  const double sd = std::sqrt(var);
  r.method = "normal (continuity corrected)";
  switch (alternative) {
  case Alternative::TwoSided:
    r.p_value = std::min(1.0, 2.0 * normal_sf(std::max(0.0, std::fabs(u - mean) - 0.5) / sd));
    break;
  case Alternative::Greater: r.p_value = normal_sf((u - mean - 0.5) / sd); break;
  case Alternative::Less: r.p_value = normal_sf(-(u - mean + 0.5) / sd); break;
  }
  return r;
}

std::vector<double> p_adjust(std::span<const double> p, PAdjust method) {
  for (double v : p)
    if (!(v >= 0.0 && v <= 1.0)) throw Error(Errc::OutOfRangeP, "p-value outside [0, 1]");
  const std::size_t m = p.size();
  std::vector<double> out(p.begin(), p.end());
  if (m == 0 || method == PAdjust::None) return out;
  const double md = static_cast<double>(m);
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return p[a] < p[b]; });
  switch (method) {
  case PAdjust::Bonferroni:
    for (auto& v : out) v = std::min(1.0, v * md);
    break;
  case PAdjust::Holm: {
    double running = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      running = std::max(running, std::min(1.0, (md - static_cast<double>(k)) * p[order[k]]));
      out[order[k]] = running;
    }
    break;
  }
  case PAdjust::BenjaminiHochberg: {
    double running = 1.0;
    for (std::size_t k = m; k-- > 0;) {
      running = std::min(running, std::min(1.0, md / static_cast<double>(k + 1) * p[order[k]]));
      out[order[k]] = running;
    }
    break;
  }
  case PAdjust::None: break;
  }
  return out;
}

} // namespace topotess
