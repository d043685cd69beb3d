#include <algorithm>
#include <fstream>
#include <iostream>
#include <numeric>
#include <set>

#include "citenorm/corpus.hpp"
#include "citenorm/errors.hpp"
#include "citenorm/universality.hpp"
#include "citenorm/version.hpp"
#include "commands.hpp"
#include "digest.hpp"
#include "json_writer.hpp"
#include "options_util.hpp"
#include "output_set.hpp"
#include "report_io.hpp"
#include "table_writers.hpp"

namespace citenorm::cli {

namespace {

std::string analyze_manifest(const AnalyzeOptions& opt, const AnalysisConfig& config,
                             const std::vector<double>& fractions,
                             CorrelationMethod method) {
  JsonWriter w;
  w.begin_object();
  w.key("command").value("analyze");
  w.key("version").value(kVersion);
  w.key("config").begin_object();
  w.key("publication_year").value(config.publication_year);
  w.key("window_years").value(config.window.length_years);
  w.key("top_fractions").begin_array();
  for (double p : fractions) w.value(p);
  w.end_array();
  w.key("min_field_size").value(config.min_field_size);
  w.key("exclude_uncited").value(config.exclude_uncited);
  w.key("doc_types").begin_array();
  for (const auto& t : config.doc_types) w.value(t);
  w.end_array();
  w.key("band").begin_object();
  w.key("lo").value(config.band.lo);
  w.key("hi").value(config.band.hi);
  w.end_object();
  w.key("bin_width").value(config.bin_width);
  w.key("correlation").value(corr_method_name(method));
  w.end_object();
  w.key("inputs").begin_object();
  w.key("publications").begin_object();
  w.key("path").value(opt.publications);
  w.key("sha256").value(sha256_file(opt.publications));
  w.end_object();
  w.key("citations").begin_object();
  w.key("path").value(opt.citations);
  w.key("sha256").value(sha256_file(opt.citations));
  w.end_object();
  w.end_object();
  w.end_object();
  return w.str() + "\n";
}

// Figure-3-style pick: the three lowest and three highest top-share fields.
std::vector<std::size_t> default_ecdf_fields(const UniversalityReport& report) {
  std::vector<std::size_t> order(report.fields.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& fa = report.fields[a];
    const auto& fb = report.fields[b];
    if (fa.prop_topk != fb.prop_topk) return fa.prop_topk < fb.prop_topk;
    return fa.field_id < fb.field_id;
  });
  std::set<std::size_t> picked;
  const std::size_t take = std::min<std::size_t>(3, order.size());
  for (std::size_t i = 0; i < take; ++i) picked.insert(order[i]);
  for (std::size_t i = 0; i < take; ++i) picked.insert(order[order.size() - 1 - i]);
  return {picked.begin(), picked.end()};
}

}  // namespace

int cmd_analyze(const AnalyzeOptions& opt) {
  AnalysisConfig config;
  config.publication_year = opt.year;
  config.window.length_years = opt.window;
  config.min_field_size = opt.min_field_size;
  config.exclude_uncited = opt.exclude_uncited;
  config.doc_types = parse_doc_types(opt.doc_types);
  config.band = parse_band(opt.band);
  config.bin_width = opt.bin_width;
  std::vector<double> fractions = opt.top_fractions;
  if (fractions.empty()) fractions.push_back(0.10);
  config.top_fraction = fractions.front();
  validate(config);
  const CorrelationMethod method = parse_corr_method(opt.corr);

  std::ifstream pubs_in(opt.publications);
  if (!pubs_in) throw validation_error("cannot open '" + opt.publications + "'");
  auto pubs = parse_publications(pubs_in);
  std::unordered_set<std::string> known;
  known.reserve(pubs.size());
  for (const auto& pub : pubs) known.insert(pub.pub_id);

  std::ifstream cits_in(opt.citations);
  if (!cits_in) throw validation_error("cannot open '" + opt.citations + "'");
  auto cits = parse_citations(cits_in, known);
  for (const auto& warning : cits.warnings) std::cerr << "warning: " << warning << "\n";

  auto groups = filter_min_size(build_groups(pubs, cits.events, config), config.min_field_size);
  const std::span<const double> extras(fractions.data() + 1, fractions.size() - 1);
  auto art = analyze_full(groups, config, extras);
  const auto& report = art.report;

  ReportFile file;
  file.report = report;
  file.corr_method = method;
  {
    std::vector<double> props, means;
    for (const auto& field : report.fields) {
      props.push_back(field.prop_topk);
      means.push_back(field.mean_citations);
    }
    try {
      file.prop_topk_vs_mean_citations = correlation(props, means, method);
    } catch (const degenerate_error&) {
      // constant input; the report carries null
    }
  }

  OutputSet out;
  out.add("report.json", report_to_json(file));
  out.add("fields.tsv", fields_tsv(report));
  out.add("histogram.csv", histogram_csv(report));
  out.add("summary.tsv", summary_tsv(art.fraction_summaries));
  out.add("ecdf_all.csv", ecdf_csv(ecdf(art.pooled.scores)));

  std::vector<std::size_t> selected;
  if (!opt.ecdf_fields.empty()) {
    for (const auto& name : split_list(opt.ecdf_fields, ',')) {
      auto it = std::find_if(report.fields.begin(), report.fields.end(),
                             [&](const FieldStats& f) { return f.field_id == name; });
      if (it == report.fields.end())
        throw validation_error("--ecdf-fields: field '" + name + "' not in the analysis");
      selected.push_back(static_cast<std::size_t>(it - report.fields.begin()));
    }
  } else {
    selected = default_ecdf_fields(report);
  }
  std::set<std::string> used_names;
  for (auto idx : selected) {
    const auto& set = art.scoresets[idx];
    std::vector<double> scores;
    scores.reserve(set.scores.size());
    for (const auto& entry : set.scores) scores.push_back(entry.score);
    std::string name = slugify(set.field_id);
    while (!used_names.insert(name).second) name += "_";
    out.add("ecdf_" + name + ".csv", ecdf_csv(ecdf(scores)));
  }

  out.add("manifest.json", analyze_manifest(opt, config, fractions, method));
  out.commit(opt.out_dir);

  std::cout << "fields: " << report.fields.size() << "\n"
            << "threshold (top " << format_data_real(config.top_fraction)
            << "): " << format_data_real(report.threshold.value) << "\n"
            << "observed std: " << format_data_real(report.observed_std)
            << "  theoretical std: " << format_data_real(report.null_model.theoretical_std)
            << "\n"
            << "out-of-band fields: " << report.observed_out_of_band
            << "  expected: " << format_data_real(report.null_model.expected_out_of_band)
            << "\n"
            << "pooled mean citations: " << format_data_real(report.pooled_mean_citations)
            << "\n";
  return 0;
}

}  // namespace citenorm::cli
