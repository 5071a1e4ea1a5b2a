#include "format.hpp"
#include "topotess/pipeline.hpp"
#include "topotess/stats.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <ostream>
#include <sstream>

namespace topotess {
namespace {

nlohmann::ordered_json report_json(const TestReport& r) {
  nlohmann::ordered_json j;
  j["test"] = r.test;
  j["groups"] = r.groups;
  j["statistic_name"] = r.statistic_name;
  if (r.pairs.empty()) {
    j["statistic"] = r.statistic;
    j["p_value"] = r.p_value;
  }
  if (r.test == "kruskal_wallis") j["df"] = r.df;
  j["method"] = r.method;
  j["alternative"] = std::string(to_string(r.alternative));
  if (!r.pairs.empty()) {
    j["adjustment"] = std::string(to_string(r.adjustment));
    auto pairs = nlohmann::ordered_json::array();
    for (const auto& p : r.pairs) {
      nlohmann::ordered_json pj;
      pj["first"] = p.first;
      pj["second"] = p.second;
      pj["statistic"] = p.statistic;
      pj["p_value"] = p.p_value;
      pj["p_adjusted"] = p.p_adjusted;
      pairs.push_back(pj);
    }
    j["pairs"] = pairs;
  }
  return j;
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

} // namespace

std::string to_json(const TestReport& report) { return report_json(report).dump(2); }

std::string format_table(const TestReport& r) {
  std::ostringstream out;
  if (r.pairs.empty()) {
    char line[256];
    std::snprintf(line, sizeof line, "%-16s %s = %-10s p-value = %s  (%s, %s)\n", r.test.c_str(),
                  r.statistic_name.c_str(), sci(r.statistic).c_str(), sci(r.p_value).c_str(), r.method.c_str(),
                  std::string(to_string(r.alternative)).c_str());
    out << line;
    return out.str();
  }
  out << r.test << " (p-value adjusted: " << to_string(r.adjustment) << ", " << to_string(r.alternative) << ")\n";
  char line[256];
  std::snprintf(line, sizeof line, "  %-28s %10s %12s %12s\n", "pair", r.statistic_name.c_str(), "p", "p adjusted");
  out << line;
  for (const auto& p : r.pairs) {
    const std::string name = p.first + " vs " + p.second;
    std::snprintf(line, sizeof line, "  %-28s %10s %12s %12s\n", name.c_str(), sci(p.statistic).c_str(),
                  sci(p.p_value).c_str(), sci(p.p_adjusted).c_str());
    out << line;
  }
  return out.str();
}

std::string comparisons_to_json(std::span<const StatisticComparison> bundle, const RunMetadata& meta) {
  nlohmann::ordered_json doc;
  char hash[32];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(meta.config_hash));
  doc["metadata"] = {{"version", meta.version}, {"config_hash", hash}, {"seed", meta.seed}, {"settings", meta.extra}};
  auto arr = nlohmann::ordered_json::array();
  for (const auto& c : bundle) {
    nlohmann::ordered_json cj;
    cj["statistic"] = std::string(to_string(c.statistic));
    auto reps = nlohmann::ordered_json::array();
    for (const auto& r : c.reports) reps.push_back(report_json(r));
    cj["reports"] = reps;
    arr.push_back(cj);
  }
  doc["comparisons"] = arr;
  return doc.dump(2) + "\n";
}

std::string comparisons_to_table(std::span<const StatisticComparison> bundle) {
  std::ostringstream out;
  for (const auto& c : bundle) {
    out << "== " << to_string(c.statistic) << " ==\n";
    for (const auto& r : c.reports) out << format_table(r);
    out << '\n';
  }
  return out.str();
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows, const RunMetadata& meta) {
  char hash[32];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(meta.config_hash));
  out << "# topotess " << meta.version << "\n# config_hash=" << hash << "\n# seed=" << meta.seed << '\n';
  if (!meta.extra.empty()) out << "# " << meta.extra << '\n';
  out << "n,statistic,test,comparison,value,p_value,p_adjusted\n";
  for (const auto& r : rows)
    out << r.n << ',' << to_string(r.statistic) << ',' << r.test << ',' << r.comparison << ','
        << detail::format_double(r.statistic_value) << ',' << detail::format_double(r.p_value) << ','
        << detail::format_double(r.p_adjusted) << '\n';
}

} // namespace topotess
