#include "report_io.hpp"

#include <json.hpp>

#include "citenorm/errors.hpp"
#include "citenorm/version.hpp"
#include "json_writer.hpp"

namespace citenorm::cli {

std::string corr_method_name(CorrelationMethod method) {
  return method == CorrelationMethod::spearman ? "spearman" : "pearson";
}

CorrelationMethod parse_corr_method(const std::string& name) {
  if (name == "pearson") return CorrelationMethod::pearson;
  if (name == "spearman") return CorrelationMethod::spearman;
  throw validation_error("unknown correlation method '" + name + "'");
}

std::string report_to_json(const ReportFile& file) {
  const auto& report = file.report;
  JsonWriter w;
  w.begin_object();
  w.key("version").value(kVersion);

  w.key("config").begin_object();
  w.key("publication_year").value(report.config.publication_year);
  w.key("window_years").value(report.config.window.length_years);
  w.key("top_fraction").value(report.config.top_fraction);
  w.key("min_field_size").value(report.config.min_field_size);
  w.key("exclude_uncited").value(report.config.exclude_uncited);
  w.key("doc_types").begin_array();
  for (const auto& t : report.config.doc_types) w.value(t);
  w.end_array();
  w.key("band").begin_object();
  w.key("lo").value(report.config.band.lo);
  w.key("hi").value(report.config.band.hi);
  w.end_object();
  w.key("bin_width").value(report.config.bin_width);
  w.end_object();

  w.key("threshold").begin_object();
  w.key("top_fraction").value(report.threshold.top_fraction);
  w.key("value").value(report.threshold.value);
  w.end_object();

  w.key("dispersion").begin_object();
  w.key("observed_std").value(report.observed_std);
  w.key("theoretical_std").value(report.null_model.theoretical_std);
  w.key("observed_out_of_band").value(report.observed_out_of_band);
  w.key("expected_out_of_band").value(report.null_model.expected_out_of_band);
  w.end_object();

  w.key("pooled_mean_citations").value(report.pooled_mean_citations);

  w.key("correlations").begin_object();
  w.key("method").value(corr_method_name(file.corr_method));
  w.key("prop_topk_vs_mean_citations");
  if (file.prop_topk_vs_mean_citations)
    w.value(*file.prop_topk_vs_mean_citations);
  else
    w.null();
  w.end_object();

  w.key("histogram").begin_object();
  w.key("origin").value(report.observed_histogram.grid.origin);
  w.key("bin_width").value(report.observed_histogram.grid.width);
  w.key("first_bin").value(static_cast<std::int64_t>(report.observed_histogram.first_bin));
  w.key("observed").begin_array();
  for (auto c : report.observed_histogram.counts) w.value(c);
  w.end_array();
  w.key("expected").begin_array();
  for (double m : report.null_model.expected_histogram.mass) w.value(m);
  w.end_array();
  w.end_object();

  w.key("fields").begin_array();
  for (const auto& field : report.fields) {
    w.begin_object();
    w.key("field_id").value(field.field_id);
    w.key("n").value(field.n);
    w.key("mean_citations").value(field.mean_citations);
    w.key("prop_uncited").value(field.prop_uncited);
    w.key("prop_topk").value(field.prop_topk);
    w.end_object();
  }
  w.end_array();

  w.end_object();
  std::string text = w.str();
  text += '\n';
  return text;
}

ReportFile report_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(std::string("report.json: ") + e.what());
  }
  try {
    ReportFile file;
    UniversalityReport& report = file.report;
    const auto& config = j.at("config");
    report.config.publication_year = config.at("publication_year").get<int>();
    report.config.window.length_years = config.at("window_years").get<int>();
    report.config.top_fraction = config.at("top_fraction").get<double>();
    report.config.min_field_size = config.at("min_field_size").get<std::int64_t>();
    report.config.exclude_uncited = config.at("exclude_uncited").get<bool>();
    report.config.doc_types.clear();
    for (const auto& t : config.at("doc_types")) report.config.doc_types.insert(t.get<std::string>());
    report.config.band.lo = config.at("band").at("lo").get<double>();
    report.config.band.hi = config.at("band").at("hi").get<double>();
    report.config.bin_width = config.at("bin_width").get<double>();

    report.threshold.top_fraction = j.at("threshold").at("top_fraction").get<double>();
    report.threshold.value = j.at("threshold").at("value").get<double>();

    const auto& dispersion = j.at("dispersion");
    report.observed_std = dispersion.at("observed_std").get<double>();
    report.null_model.theoretical_std = dispersion.at("theoretical_std").get<double>();
    report.observed_out_of_band = dispersion.at("observed_out_of_band").get<std::int64_t>();
    report.null_model.expected_out_of_band =
        dispersion.at("expected_out_of_band").get<double>();

    report.pooled_mean_citations = j.at("pooled_mean_citations").get<double>();

    const auto& correlations = j.at("correlations");
    file.corr_method = parse_corr_method(correlations.at("method").get<std::string>());
    if (!correlations.at("prop_topk_vs_mean_citations").is_null())
      file.prop_topk_vs_mean_citations =
          correlations.at("prop_topk_vs_mean_citations").get<double>();

    const auto& histogram = j.at("histogram");
    const BinGrid grid{histogram.at("origin").get<double>(),
                       histogram.at("bin_width").get<double>()};
    const long first = histogram.at("first_bin").get<long>();
    report.observed_histogram.grid = grid;
    report.observed_histogram.first_bin = first;
    for (const auto& c : histogram.at("observed"))
      report.observed_histogram.counts.push_back(c.get<std::int64_t>());
    report.null_model.expected_histogram.grid = grid;
    report.null_model.expected_histogram.first_bin = first;
    for (const auto& m : histogram.at("expected"))
      report.null_model.expected_histogram.mass.push_back(m.get<double>());

    report.null_model.p = report.threshold.top_fraction;
    for (const auto& field : j.at("fields")) {
      FieldStats stats;
      stats.field_id = field.at("field_id").get<std::string>();
      stats.n = field.at("n").get<std::int64_t>();
      stats.mean_citations = field.at("mean_citations").get<double>();
      stats.prop_uncited = field.at("prop_uncited").get<double>();
      stats.prop_topk = field.at("prop_topk").get<double>();
      report.null_model.field_sizes.push_back(stats.n);
      report.fields.push_back(std::move(stats));
    }
    return file;
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(std::string("report.json: ") + e.what());
  }
}

}  // namespace citenorm::cli
