#include "topotess/errors.hpp"
#include "topotess/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace topotess {
namespace {

double quantile_sorted(const std::vector<double>& s, double p) {
  const double pos = p * static_cast<double>(s.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, s.size() - 1);
  return s[lo] + (pos - static_cast<double>(lo)) * (s[hi] - s[lo]);
}

std::string xml_escape(std::string_view in) {
  std::string out;
  for (char c : in) {
    switch (c) {
    case '&': out += "&amp;"; break;
    case '<': out += "&lt;"; break;
    case '>': out += "&gt;"; break;
    case '"': out += "&quot;"; break;
    default: out.push_back(c);
    }
  }
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

void svg_header(std::ostringstream& out, int w, int h, const RunMetadata& meta, std::string_view title) {
  char hash[32];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(meta.config_hash));
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\" viewBox=\"0 0 " << w
      << ' ' << h << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
      << "<!-- topotess " << xml_escape(meta.version) << " config_hash=" << hash << " seed=" << meta.seed << " -->\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << w << "\" height=\"" << h << "\" fill=\"white\"/>\n"
      << "<text x=\"" << w / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" << xml_escape(title)
      << "</text>\n";
}

} // namespace

BoxSummary box_summary(std::span<const double> values) {
  if (values.empty()) throw Error(Errc::EmptyGroup, "boxplot of an empty group");
  std::vector<double> s(values.begin(), values.end());
  std::sort(s.begin(), s.end());
  BoxSummary b;
  b.min = s.front();
  b.max = s.back();
  b.q1 = quantile_sorted(s, 0.25);
  b.median = quantile_sorted(s, 0.5);
  b.q3 = quantile_sorted(s, 0.75);
  const double iqr = b.q3 - b.q1;
  const double lo = b.q1 - 1.5 * iqr, hi = b.q3 + 1.5 * iqr;
  b.whisker_low = b.q1;
  b.whisker_high = b.q3;
  for (double v : s) {
    if (v < lo || v > hi) {
      b.outliers.push_back(v);
      continue;
    }
    b.whisker_low = std::min(b.whisker_low, v);
    b.whisker_high = std::max(b.whisker_high, v);
  }
  return b;
}

std::string render_boxplot(std::span<const EntropyRecord> records, Statistic statistic, const RunMetadata& meta) {
  std::vector<std::string> order;
  std::map<std::string, std::vector<double>> values;
  for (const auto& r : records) {
    if (!values.contains(r.group)) order.push_back(r.group);
    values[r.group].push_back(value_of(r, statistic));
  }
  if (order.empty()) throw Error(Errc::EmptyGroup, "boxplot needs at least one group");

  double lo = INFINITY, hi = -INFINITY;
  for (const auto& [g, v] : values)
    for (double x : v) {
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
  if (hi <= lo) {
    lo -= 0.5;
    hi += 0.5;
  }
  const double pad = 0.05 * (hi - lo);
  lo -= pad;
  hi += pad;

  const int slot = 120, left = 70, top = 40, plot_h = 320;
  const int width = left + slot * static_cast<int>(order.size()) + 30, height = top + plot_h + 50;
  auto ypix = [&](double v) { return top + plot_h * (hi - v) / (hi - lo); };

  std::ostringstream out;
  svg_header(out, width, height, meta, std::string(to_string(statistic)) + " by group");
  out << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << top + plot_h
      << "\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double v = lo + (hi - lo) * t / 4.0;
    out << "<line x1=\"" << left - 4 << "\" y1=\"" << num(ypix(v)) << "\" x2=\"" << left << "\" y2=\""
        << num(ypix(v)) << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << left - 6 << "\" y=\"" << num(ypix(v) + 4) << "\" text-anchor=\"end\">" << label(v)
        << "</text>\n";
  }
  for (std::size_t k = 0; k < order.size(); ++k) {
    const auto b = box_summary(values[order[k]]);
    const double cx = left + slot * (static_cast<double>(k) + 0.5);
    const double half = slot * 0.25;
    out << "<g class=\"box\" data-group=\"" << xml_escape(order[k]) << "\">\n";
    out << "<line x1=\"" << num(cx) << "\" y1=\"" << num(ypix(b.whisker_high)) << "\" x2=\"" << num(cx) << "\" y2=\""
        << num(ypix(b.q3)) << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << num(cx) << "\" y1=\"" << num(ypix(b.q1)) << "\" x2=\"" << num(cx) << "\" y2=\""
        << num(ypix(b.whisker_low)) << "\" stroke=\"black\"/>\n";
    for (double w : {b.whisker_low, b.whisker_high})
      out << "<line x1=\"" << num(cx - half / 2) << "\" y1=\"" << num(ypix(w)) << "\" x2=\"" << num(cx + half / 2)
          << "\" y2=\"" << num(ypix(w)) << "\" stroke=\"black\"/>\n";
    out << "<rect x=\"" << num(cx - half) << "\" y=\"" << num(ypix(b.q3)) << "\" width=\"" << num(2 * half)
        << "\" height=\"" << num(ypix(b.q1) - ypix(b.q3)) << "\" fill=\"#9ecae1\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << num(cx - half) << "\" y1=\"" << num(ypix(b.median)) << "\" x2=\"" << num(cx + half)
        << "\" y2=\"" << num(ypix(b.median)) << "\" stroke=\"black\" stroke-width=\"2\"/>\n";
    for (double o : b.outliers)
      out << "<circle cx=\"" << num(cx) << "\" cy=\"" << num(ypix(o)) << "\" r=\"3\" fill=\"none\" stroke=\"black\"/>\n";
    out << "<text x=\"" << num(cx) << "\" y=\"" << top + plot_h + 20 << "\" text-anchor=\"middle\">"
        << xml_escape(order[k]) << "</text>\n";
    out << "</g>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::string render_sweep_svg(std::span<const SweepRow> rows, const RunMetadata& meta) {
  std::vector<std::string> series_order;
  std::map<std::string, std::vector<std::pair<double, double>>> series;
  double nmin = INFINITY, nmax = -INFINITY, pmin = 0.05;
  for (const auto& r : rows) {
    const std::string key = std::string(to_string(r.statistic)) + " " + r.test + " " + r.comparison;
    if (!series.contains(key)) series_order.push_back(key);
    const double p = std::max(r.p_adjusted, 1e-16);
    series[key].push_back({static_cast<double>(r.n), p});
    nmin = std::min(nmin, static_cast<double>(r.n));
    nmax = std::max(nmax, static_cast<double>(r.n));
    pmin = std::min(pmin, p);
  }
  if (series.empty()) throw Error(Errc::EmptyGroup, "sweep plot needs at least one row");
  if (nmax <= nmin) {
    nmin -= 1;
    nmax += 1;
  }
  const double lmin = std::floor(std::log10(pmin)), lmax = 0.0;
  const int left = 70, top = 40, plot_w = 520, plot_h = 320, legend = 260;
  const int width = left + plot_w + legend, height = top + plot_h + 50;
  auto xpix = [&](double n) { return left + plot_w * (n - nmin) / (nmax - nmin); };
  auto ypix = [&](double p) { return top + plot_h * (lmax - std::log10(p)) / (lmax - lmin); };

  static constexpr const char* colors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
                                           "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
  std::ostringstream out;
  svg_header(out, width, height, meta, "p-value against number of cells");
  out << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << plot_w << "\" height=\"" << plot_h
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (double l = lmin; l <= lmax; l += 1.0)
    out << "<text x=\"" << left - 6 << "\" y=\"" << num(ypix(std::pow(10.0, l)) + 4)
        << "\" text-anchor=\"end\">1e" << static_cast<int>(l) << "</text>\n";
  out << "<line x1=\"" << left << "\" y1=\"" << num(ypix(0.05)) << "\" x2=\"" << left + plot_w << "\" y2=\""
      << num(ypix(0.05)) << "\" stroke=\"red\" stroke-dasharray=\"6,4\"/>\n";
  out << "<text x=\"" << left + plot_w - 4 << "\" y=\"" << num(ypix(0.05) - 4)
      << "\" text-anchor=\"end\" fill=\"red\">0.05</text>\n";
  out << "<text x=\"" << left << "\" y=\"" << top + plot_h + 18 << "\">" << label(nmin) << "</text>\n"
      << "<text x=\"" << left + plot_w << "\" y=\"" << top + plot_h + 18 << "\" text-anchor=\"end\">" << label(nmax)
      << "</text>\n"
      << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << top + plot_h + 36
      << "\" text-anchor=\"middle\">cells</text>\n";
  for (std::size_t k = 0; k < series_order.size(); ++k) {
    const char* color = colors[k % std::size(colors)];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& [n, p] : series[series_order[k]]) out << num(xpix(n)) << ',' << num(ypix(p)) << ' ';
    out << "\"/>\n";
    const int ly = top + 14 + 16 * static_cast<int>(k);
    out << "<line x1=\"" << left + plot_w + 12 << "\" y1=\"" << ly - 4 << "\" x2=\"" << left + plot_w + 30
        << "\" y2=\"" << ly - 4 << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n"
        << "<text x=\"" << left + plot_w + 34 << "\" y=\"" << ly << "\">" << xml_escape(series_order[k])
        << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

} // namespace topotess
