#pragma once

#include <span>
#include <string>
#include <vector>

#include "citenorm/universality.hpp"

namespace citenorm::cli {

/// Data-file real formatting: compact but precise (%.12g).
std::string format_data_real(double v);

std::string fields_tsv(const UniversalityReport& report);
std::string histogram_csv(const UniversalityReport& report);
std::string summary_tsv(std::span<const FractionSummary> rows);
std::string ecdf_csv(std::span<const EcdfPoint> points);
std::string scatter_csv(std::span<const YearComparisonRow> rows);

/// Filesystem-safe name for ecdf_<field>.csv files.
std::string slugify(const std::string& field_id);

}  // namespace citenorm::cli
