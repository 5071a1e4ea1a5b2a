#include "format.hpp"
#include "topotess/errors.hpp"
#include "topotess/persistence.hpp"

#include <nlohmann/json.hpp>

#include <istream>
#include <ostream>
#include <string>

namespace topotess {

void write_barcode_csv(std::ostream& out, const Barcode& b) {
  out << "dimension,birth,death\n";
  for (const auto& bar : b.bars)
    out << bar.dimension << ',' << detail::format_double(bar.birth) << ',' << detail::format_double(bar.death)
        << '\n';
}

Barcode read_barcode_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(Errc::MalformedFile, "empty barcode file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "dimension,birth,death") throw Error(Errc::MalformedFile, "unexpected barcode header: " + line);
  Barcode b;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const auto c1 = line.find(','), c2 = line.find(',', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
      throw Error(Errc::MalformedFile, "line " + std::to_string(lineno));
    const auto dim = detail::parse_double(std::string_view(line).substr(0, c1));
    const auto birth = detail::parse_double(std::string_view(line).substr(c1 + 1, c2 - c1 - 1));
    const auto death = detail::parse_double(std::string_view(line).substr(c2 + 1));
    if (!dim || !birth || !death || (*dim != 0 && *dim != 1) || *death < *birth)
      throw Error(Errc::MalformedFile, "line " + std::to_string(lineno));
    b.bars.push_back({static_cast<int>(*dim), *birth, *death});
  }
  return b;
}

std::string barcode_metadata_json(const Barcode& b, BarPolicy policy) {
  nlohmann::ordered_json j;
  j["vertex_count"] = b.vertex_count;
  j["convention"] = std::string(to_string(b.convention));
  j["bar_policy"] = std::string(to_string(policy));
  j["infinite_bars"] = b.infinite_count();
  return j.dump(2);
}

} // namespace topotess
