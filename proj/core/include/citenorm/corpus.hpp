#pragma once

#include <cstdint>
#include <iosfwd>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace citenorm {

inline constexpr int kMinPlausibleYear = 1900;
inline constexpr int kMaxPlausibleYear = 2100;

struct Publication {
  std::string pub_id;
  int year = 0;
  std::string doc_type;
  std::vector<std::string> field_ids;  // sorted, deduplicated, non-empty

  bool operator==(const Publication&) const = default;
};

struct CitationEvent {
  int citing_year = 0;
  std::int64_t count = 0;  // citations received in that year

  bool operator==(const CitationEvent&) const = default;
};

/// Citation window of W years starting at, and including, the publication
/// year: a 1999 publication with W = 10 counts citing years 1999..2008.
struct WindowSpec {
  int length_years = 10;

  bool operator==(const WindowSpec&) const = default;
};

struct GroupMember {
  std::string pub_id;
  std::int64_t citations = 0;

  bool operator==(const GroupMember&) const = default;
};

/// All (publication, field) instances for one field and one publication year.
/// A publication with m field memberships appears in exactly m groups.
struct FieldYearGroup {
  std::string field_id;
  int year = 0;
  std::vector<GroupMember> members;
};

struct BandSpec {
  double lo = 0.09;
  double hi = 0.11;

  bool operator==(const BandSpec&) const = default;
};

struct AnalysisConfig {
  int publication_year = 1999;
  WindowSpec window{};
  double top_fraction = 0.10;
  std::int64_t min_field_size = 1000;
  bool exclude_uncited = false;
  std::set<std::string> doc_types = {"article"};
  BandSpec band{};
  double bin_width = 0.005;

  bool operator==(const AnalysisConfig&) const = default;
};

/// Throws validation_error on out-of-range settings.
void validate(const AnalysisConfig& config);

using CitationMap = std::unordered_map<std::string, std::vector<CitationEvent>>;

/// Parses the publications CSV (header `pub_id,year,doc_type,fields`, fields
/// pipe-separated, LF or CRLF). Throws parse_error with a line number on
/// malformed rows, duplicate ids, implausible years, or empty field lists.
std::vector<Publication> parse_publications(std::istream& in);

struct CitationParse {
  CitationMap events;                 // every known pub_id has an entry
  std::vector<std::string> warnings;  // unknown pub_ids, dropped
};

/// Parses the citations CSV (header `pub_id,citing_year,count`). Events for
/// the same (pub_id, citing_year) are summed; per publication the events come
/// back sorted by year. Rows for unknown publications become warnings.
CitationParse parse_citations(std::istream& in,
                              const std::unordered_set<std::string>& known_pub_ids);

void write_publications(std::ostream& out, std::span<const Publication> pubs);

/// Rows ordered by pub_id then citing_year; publications without events get
/// no rows.
void write_citations(std::ostream& out, const CitationMap& citations);

/// Sum of counts with pub_year <= citing_year <= pub_year + W - 1. Events
/// outside the window, including citing years before publication, are
/// ignored.
std::int64_t windowed_count(std::span<const CitationEvent> events, int pub_year,
                            WindowSpec window);

/// Groups, ordered by field_id, of all publications matching the config's
/// year and doc_types; a publication contributes one member per field it
/// belongs to. With exclude_uncited, zero-count members are dropped here,
/// before any downstream statistic sees them.
std::vector<FieldYearGroup> build_groups(std::span<const Publication> pubs,
                                         const CitationMap& citations,
                                         const AnalysisConfig& config);

/// Keeps groups with at least n_min members (a group of exactly n_min is
/// retained), preserving order.
std::vector<FieldYearGroup> filter_min_size(std::vector<FieldYearGroup> groups,
                                            std::int64_t n_min);

}  // namespace citenorm
