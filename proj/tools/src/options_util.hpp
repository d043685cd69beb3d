#pragma once

#include <set>
#include <string>
#include <vector>

#include "citenorm/corpus.hpp"

namespace citenorm::cli {

std::vector<std::string> split_list(const std::string& text, char sep);
BandSpec parse_band(const std::string& text);
std::set<std::string> parse_doc_types(const std::string& text);

}  // namespace citenorm::cli
