#include "table_writers.hpp"

#include <cctype>
#include <cstdio>

namespace citenorm::cli {

std::string format_data_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string fields_tsv(const UniversalityReport& report) {
  std::string out = "field_id\tn_pub\tmean_citations\tprop_uncited\tprop_top_k\n";
  for (const auto& field : report.fields) {
    out += field.field_id;
    out += '\t';
    out += std::to_string(field.n);
    out += '\t';
    out += format_data_real(field.mean_citations);
    out += '\t';
    out += format_data_real(field.prop_uncited);
    out += '\t';
    out += format_data_real(field.prop_topk);
    out += '\n';
  }
  return out;
}

std::string histogram_csv(const UniversalityReport& report) {
  const auto& observed = report.observed_histogram;
  const auto& expected = report.null_model.expected_histogram;
  std::string out = "bin_lo,bin_hi,observed_fields,expected_fields\n";
  for (std::size_t i = 0; i < observed.counts.size(); ++i) {
    const long idx = observed.first_bin + static_cast<long>(i);
    out += format_data_real(bin_lo(observed.grid, idx));
    out += ',';
    out += format_data_real(bin_hi(observed.grid, idx));
    out += ',';
    out += std::to_string(observed.counts[i]);
    out += ',';
    out += format_data_real(i < expected.mass.size() ? expected.mass[i] : 0.0);
    out += '\n';
  }
  return out;
}

std::string summary_tsv(std::span<const FractionSummary> rows) {
  std::string out = "top_fraction\tobserved_std\ttheoretical_std\n";
  for (const auto& row : rows) {
    out += format_data_real(row.top_fraction);
    out += '\t';
    out += format_data_real(row.observed_std);
    out += '\t';
    out += format_data_real(row.theoretical_std);
    out += '\n';
  }
  return out;
}

std::string ecdf_csv(std::span<const EcdfPoint> points) {
  std::string out = "score,cum_fraction\n";
  for (const auto& point : points) {
    out += format_data_real(point.score);
    out += ',';
    out += format_data_real(point.cum_fraction);
    out += '\n';
  }
  return out;
}

std::string scatter_csv(std::span<const YearComparisonRow> rows) {
  std::string out = "field_id,prop_a,prop_b\n";
  for (const auto& row : rows) {
    out += row.field_id;
    out += ',';
    out += format_data_real(row.prop_a);
    out += ',';
    out += format_data_real(row.prop_b);
    out += '\n';
  }
  return out;
}

std::string slugify(const std::string& field_id) {
  std::string slug;
  slug.reserve(field_id.size());
  for (unsigned char c : field_id)
    slug += (std::isalnum(c) || c == '-' || c == '_') ? static_cast<char>(c) : '_';
  return slug;
}

}  // namespace citenorm::cli
