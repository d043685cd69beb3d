#include <fstream>
#include <iostream>
#include <sstream>

#include "citenorm/errors.hpp"
#include "citenorm/universality.hpp"
#include "citenorm/version.hpp"
#include "commands.hpp"
#include "digest.hpp"
#include "json_writer.hpp"
#include "output_set.hpp"
#include "report_io.hpp"
#include "table_writers.hpp"

namespace citenorm::cli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw validation_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

int cmd_compare_years(const CompareYearsOptions& opt) {
  const CorrelationMethod method = parse_corr_method(opt.corr);
  const auto file_a = report_from_json(read_file(opt.report_a));
  const auto file_b = report_from_json(read_file(opt.report_b));
  const auto cmp = compare_years(file_a.report, file_b.report, method);

  JsonWriter w;
  w.begin_object();
  w.key("command").value("compare-years");
  w.key("version").value(kVersion);
  w.key("top_fraction").value(file_a.report.threshold.top_fraction);
  w.key("method").value(corr_method_name(method));
  w.key("n_fields").value(static_cast<std::int64_t>(cmp.rows.size()));
  w.key("rho").value(cmp.rho);
  w.end_object();

  JsonWriter manifest;
  manifest.begin_object();
  manifest.key("command").value("compare-years");
  manifest.key("version").value(kVersion);
  manifest.key("config").begin_object();
  manifest.key("method").value(corr_method_name(method));
  manifest.end_object();
  manifest.key("inputs").begin_object();
  manifest.key("report_a").begin_object();
  manifest.key("path").value(opt.report_a);
  manifest.key("sha256").value(sha256_file(opt.report_a));
  manifest.end_object();
  manifest.key("report_b").begin_object();
  manifest.key("path").value(opt.report_b);
  manifest.key("sha256").value(sha256_file(opt.report_b));
  manifest.end_object();
  manifest.end_object();
  manifest.end_object();

  OutputSet out;
  out.add("scatter.csv", scatter_csv(cmp.rows));
  out.add("compare.json", w.str() + "\n");
  out.add("manifest.json", manifest.str() + "\n");
  out.commit(opt.out_dir);

  std::cout << "fields joined: " << cmp.rows.size() << "\n"
            << "rho (" << corr_method_name(method) << "): " << format_data_real(cmp.rho) << "\n";
  return 0;
}

}  // namespace citenorm::cli
