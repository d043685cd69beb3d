#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace citenorm::cli {

struct HistogramBinRow {
  double lo = 0.0;
  double hi = 0.0;
  double observed = 0.0;
  double expected = 0.0;
};

struct EcdfCurve {
  std::string name;
  std::vector<std::pair<double, double>> points;  // (score, cumulative fraction)
};

struct ScatterPoint {
  double x = 0.0;
  double y = 0.0;
};

/// Observed bins as bars, expected mass as a dotted overlay curve. Output is
/// deterministic: no timestamps, fixed number formatting.
std::string render_histogram_svg(const std::vector<HistogramBinRow>& bins);

/// Staircase curves, one per input; optional log-scaled score axis.
std::string render_ecdf_svg(const std::vector<EcdfCurve>& curves, bool log_x);

std::string render_scatter_svg(const std::vector<ScatterPoint>& points,
                               std::string_view x_label, std::string_view y_label);

}  // namespace citenorm::cli
