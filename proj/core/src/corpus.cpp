#include "citenorm/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <map>
#include <ostream>
#include <string_view>

#include "citenorm/errors.hpp"

namespace citenorm {

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

[[noreturn]] void fail(std::string_view file_kind, std::size_t line_no, const std::string& what) {
  throw parse_error(std::string(file_kind) + " line " + std::to_string(line_no) + ": " + what);
}

template <typename Int>
Int parse_int(std::string_view s, std::string_view file_kind, std::size_t line_no,
              std::string_view what) {
  Int value{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    fail(file_kind, line_no,
         "cannot parse " + std::string(what) + " from '" + std::string(s) + "'");
  return value;
}

// Strips a trailing CR so LF and CRLF inputs read the same.
bool read_line(std::istream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

void expect_header(std::istream& in, std::string_view expected, std::string_view file_kind) {
  std::string line;
  if (!read_line(in, line) || line != expected)
    throw parse_error(std::string(file_kind) + ": expected header '" + std::string(expected) +
                      "'");
}

}  // namespace

void validate(const AnalysisConfig& config) {
  if (config.publication_year < kMinPlausibleYear || config.publication_year > kMaxPlausibleYear)
    throw validation_error("publication year outside plausible range [1900, 2100]");
  if (config.window.length_years < 1)
    throw validation_error("citation window must span at least one year");
  if (!(config.top_fraction > 0.0 && config.top_fraction < 1.0))
    throw validation_error("top fraction must lie strictly between 0 and 1");
  if (config.min_field_size < 0) throw validation_error("min field size must be non-negative");
  if (!(config.band.lo < config.band.hi))
    throw validation_error("band lower bound must be below the upper bound");
  if (!(config.bin_width > 0.0)) throw validation_error("bin width must be positive");
}

std::vector<Publication> parse_publications(std::istream& in) {
  expect_header(in, "pub_id,year,doc_type,fields", "publications");
  std::vector<Publication> pubs;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_no = 1;
  while (read_line(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto cols = split(line, ',');
    if (cols.size() != 4)
      fail("publications", line_no, "expected 4 columns, got " + std::to_string(cols.size()));
    Publication pub;
    pub.pub_id = std::string(cols[0]);
    if (pub.pub_id.empty()) fail("publications", line_no, "empty pub_id");
    if (!seen.insert(pub.pub_id).second)
      fail("publications", line_no, "duplicate pub_id '" + pub.pub_id + "'");
    pub.year = parse_int<int>(cols[1], "publications", line_no, "year");
    if (pub.year < kMinPlausibleYear || pub.year > kMaxPlausibleYear)
      fail("publications", line_no,
           "year " + std::to_string(pub.year) + " outside [1900, 2100]");
    pub.doc_type = std::string(cols[2]);
    if (pub.doc_type.empty()) fail("publications", line_no, "empty doc_type");
    for (auto field : split(cols[3], '|'))
      if (!field.empty()) pub.field_ids.emplace_back(field);
    std::sort(pub.field_ids.begin(), pub.field_ids.end());
    pub.field_ids.erase(std::unique(pub.field_ids.begin(), pub.field_ids.end()),
                        pub.field_ids.end());
    if (pub.field_ids.empty()) fail("publications", line_no, "empty field list");
    pubs.push_back(std::move(pub));
  }
  return pubs;
}

CitationParse parse_citations(std::istream& in,
                              const std::unordered_set<std::string>& known_pub_ids) {
  expect_header(in, "pub_id,citing_year,count", "citations");
  CitationParse result;
  result.events.reserve(known_pub_ids.size());
  for (const auto& id : known_pub_ids) result.events.emplace(id, std::vector<CitationEvent>{});
  std::string line;
  std::size_t line_no = 1;
  while (read_line(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto cols = split(line, ',');
    if (cols.size() != 3)
      fail("citations", line_no, "expected 3 columns, got " + std::to_string(cols.size()));
    auto it = result.events.find(std::string(cols[0]));
    int year = parse_int<int>(cols[1], "citations", line_no, "citing_year");
    auto count = parse_int<std::int64_t>(cols[2], "citations", line_no, "count");
    if (count < 0)
      fail("citations", line_no, "negative count " + std::to_string(count));
    if (it == result.events.end()) {
      result.warnings.push_back("citations line " + std::to_string(line_no) +
                                ": unknown pub_id '" + std::string(cols[0]) + "' (dropped)");
      continue;
    }
    it->second.push_back({year, count});
  }
  // canonical form: one event per citing year, sorted
  for (auto& [id, events] : result.events) {
    std::sort(events.begin(), events.end(),
              [](const CitationEvent& a, const CitationEvent& b) {
                return a.citing_year < b.citing_year;
              });
    std::size_t out = 0;
    for (std::size_t i = 0; i < events.size();) {
      CitationEvent merged = events[i];
      std::size_t j = i + 1;
      while (j < events.size() && events[j].citing_year == merged.citing_year)
        merged.count += events[j++].count;
      events[out++] = merged;
      i = j;
    }
    events.resize(out);
  }
  return result;
}

void write_publications(std::ostream& out, std::span<const Publication> pubs) {
  out << "pub_id,year,doc_type,fields\n";
  for (const auto& pub : pubs) {
    out << pub.pub_id << ',' << pub.year << ',' << pub.doc_type << ',';
    for (std::size_t i = 0; i < pub.field_ids.size(); ++i) {
      if (i > 0) out << '|';
      out << pub.field_ids[i];
    }
    out << '\n';
  }
}

void write_citations(std::ostream& out, const CitationMap& citations) {
  out << "pub_id,citing_year,count\n";
  std::vector<const std::string*> ids;
  ids.reserve(citations.size());
  for (const auto& [id, events] : citations)
    if (!events.empty()) ids.push_back(&id);
  std::sort(ids.begin(), ids.end(),
            [](const std::string* a, const std::string* b) { return *a < *b; });
  for (const auto* id : ids)
    for (const auto& event : citations.at(*id))
      out << *id << ',' << event.citing_year << ',' << event.count << '\n';
}

std::int64_t windowed_count(std::span<const CitationEvent> events, int pub_year,
                            WindowSpec window) {
  if (window.length_years < 1)
    throw validation_error("citation window must span at least one year");
  const int last_year = pub_year + window.length_years - 1;
  std::int64_t total = 0;
  for (const auto& event : events)
    if (event.citing_year >= pub_year && event.citing_year <= last_year) total += event.count;
  return total;
}

std::vector<FieldYearGroup> build_groups(std::span<const Publication> pubs,
                                         const CitationMap& citations,
                                         const AnalysisConfig& config) {
  validate(config);
  static const std::vector<CitationEvent> kNoEvents;
  std::map<std::string, FieldYearGroup, std::less<>> by_field;
  for (const auto& pub : pubs) {
    if (pub.year != config.publication_year) continue;
    if (!config.doc_types.contains(pub.doc_type)) continue;
    auto it = citations.find(pub.pub_id);
    const auto& events = it == citations.end() ? kNoEvents : it->second;
    std::int64_t count = windowed_count(events, pub.year, config.window);
    if (config.exclude_uncited && count == 0) continue;
    for (const auto& field : pub.field_ids) {
      auto [group_it, inserted] = by_field.try_emplace(field);
      if (inserted) {
        group_it->second.field_id = field;
        group_it->second.year = config.publication_year;
      }
      group_it->second.members.push_back({pub.pub_id, count});
    }
  }
  std::vector<FieldYearGroup> groups;
  groups.reserve(by_field.size());
  for (auto& [field, group] : by_field) groups.push_back(std::move(group));
  return groups;
}

std::vector<FieldYearGroup> filter_min_size(std::vector<FieldYearGroup> groups,
                                            std::int64_t n_min) {
  if (n_min < 0) throw validation_error("min field size must be non-negative");
  std::erase_if(groups, [n_min](const FieldYearGroup& group) {
    return static_cast<std::int64_t>(group.members.size()) < n_min;
  });
  return groups;
}

}  // namespace citenorm
