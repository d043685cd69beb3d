#include "options_util.hpp"

#include <charconv>

#include "citenorm/errors.hpp"

namespace citenorm::cli {

std::vector<std::string> split_list(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = text.find(sep, start);
    if (pos == std::string::npos) {
      if (start < text.size()) parts.push_back(text.substr(start));
      break;
    }
    if (pos > start) parts.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
  return parts;
}

BandSpec parse_band(const std::string& text) {
  auto parts = split_list(text, ',');
  if (parts.size() != 2) throw validation_error("--band expects LO,HI");
  BandSpec band;
  auto parse = [](const std::string& s, double& out) {
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec != std::errc{} || ptr != s.data() + s.size())
      throw validation_error("--band: cannot parse '" + s + "'");
  };
  parse(parts[0], band.lo);
  parse(parts[1], band.hi);
  if (!(band.lo < band.hi)) throw validation_error("--band: LO must be below HI");
  return band;
}

std::set<std::string> parse_doc_types(const std::string& text) {
  auto parts = split_list(text, ',');
  if (parts.empty()) throw validation_error("--doc-types needs at least one tag");
  return {parts.begin(), parts.end()};
}

}  // namespace citenorm::cli
