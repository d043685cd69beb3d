#include <algorithm>
#include <charconv>
#include <fstream>
#include <iostream>

#include "citenorm/errors.hpp"
#include "citenorm/version.hpp"
#include "commands.hpp"
#include "digest.hpp"
#include "json_writer.hpp"
#include "options_util.hpp"
#include "output_set.hpp"
#include "svg_render.hpp"

namespace citenorm::cli {

namespace {

std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& path,
                                               const std::string& expected_header) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open '" + path.string() + "'");
  std::string line;
  if (!std::getline(in, line)) throw parse_error(path.string() + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != expected_header)
    throw parse_error(path.string() + ": expected header '" + expected_header + "'");
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    rows.push_back(split_list(line, ','));
  }
  return rows;
}

double to_real(const std::string& s, const std::filesystem::path& path) {
  double v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw parse_error(path.string() + ": cannot parse number '" + s + "'");
  return v;
}

}  // namespace

int cmd_plot(const PlotOptions& opt) {
  const std::filesystem::path in_dir = opt.in_dir;
  const std::filesystem::path out_dir =
      opt.out_dir.empty() ? in_dir / "plots" : std::filesystem::path(opt.out_dir);

  OutputSet out;
  JsonWriter manifest;
  manifest.begin_object();
  manifest.key("command").value("plot");
  manifest.key("version").value(kVersion);
  manifest.key("config").begin_object();
  manifest.key("log_x").value(opt.log_x);
  manifest.end_object();
  manifest.key("inputs").begin_object();
  bool any = false;

  const auto histogram_path = in_dir / "histogram.csv";
  if (std::filesystem::exists(histogram_path)) {
    auto rows = read_csv(histogram_path, "bin_lo,bin_hi,observed_fields,expected_fields");
    std::vector<HistogramBinRow> bins;
    for (const auto& row : rows) {
      if (row.size() != 4) throw parse_error(histogram_path.string() + ": bad row");
      bins.push_back({to_real(row[0], histogram_path), to_real(row[1], histogram_path),
                      to_real(row[2], histogram_path), to_real(row[3], histogram_path)});
    }
    out.add("histogram.svg", render_histogram_svg(bins));
    manifest.key("histogram.csv").value(sha256_file(histogram_path));
    any = true;
  }

  std::vector<std::filesystem::path> ecdf_paths;
  if (std::filesystem::exists(in_dir))
    for (const auto& entry : std::filesystem::directory_iterator(in_dir)) {
      const auto name = entry.path().filename().string();
      if (name.rfind("ecdf_", 0) == 0 && name.size() > 9 &&
          name.substr(name.size() - 4) == ".csv")
        ecdf_paths.push_back(entry.path());
    }
  std::sort(ecdf_paths.begin(), ecdf_paths.end());
  if (!ecdf_paths.empty()) {
    std::vector<EcdfCurve> curves;
    for (const auto& path : ecdf_paths) {
      EcdfCurve curve;
      const auto name = path.filename().string();
      curve.name = name.substr(5, name.size() - 9);
      for (const auto& row : read_csv(path, "score,cum_fraction")) {
        if (row.size() != 2) throw parse_error(path.string() + ": bad row");
        curve.points.emplace_back(to_real(row[0], path), to_real(row[1], path));
      }
      manifest.key(name).value(sha256_file(path));
      curves.push_back(std::move(curve));
    }
    out.add("ecdf.svg", render_ecdf_svg(curves, opt.log_x));
    any = true;
  }

  const auto scatter_path = in_dir / "scatter.csv";
  if (std::filesystem::exists(scatter_path)) {
    auto rows = read_csv(scatter_path, "field_id,prop_a,prop_b");
    std::vector<ScatterPoint> points;
    for (const auto& row : rows) {
      if (row.size() != 3) throw parse_error(scatter_path.string() + ": bad row");
      points.push_back({to_real(row[1], scatter_path), to_real(row[2], scatter_path)});
    }
    out.add("scatter.svg", render_scatter_svg(points, "proportion (a)", "proportion (b)"));
    manifest.key("scatter.csv").value(sha256_file(scatter_path));
    any = true;
  }

  if (!any)
    throw validation_error("no plot data (histogram.csv, ecdf_*.csv, scatter.csv) in '" +
                           in_dir.string() + "'");
  manifest.end_object();
  manifest.end_object();
  out.add("manifest.json", manifest.str() + "\n");
  out.commit(out_dir);

  std::cout << "wrote " << out.files().size() - 1 << " plot(s) to " << out_dir.string() << "\n";
  return 0;
}

}  // namespace citenorm::cli
