#pragma once

#include <optional>
#include <string>

#include "citenorm/universality.hpp"

namespace citenorm::cli {

/// report.json content: the analysis report plus the CLI-level correlation
/// between per-field top-share and mean citations.
struct ReportFile {
  UniversalityReport report;
  CorrelationMethod corr_method = CorrelationMethod::pearson;
  std::optional<double> prop_topk_vs_mean_citations;

  bool operator==(const ReportFile&) const = default;
};

std::string report_to_json(const ReportFile& file);

/// Parses report_to_json output back; round-trips to an equal ReportFile.
ReportFile report_from_json(const std::string& text);

std::string corr_method_name(CorrelationMethod method);
CorrelationMethod parse_corr_method(const std::string& name);

}  // namespace citenorm::cli
