#include "svg_render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "citenorm/errors.hpp"

namespace citenorm::cli {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 440.0;
constexpr double kLeft = 64.0;
constexpr double kRight = 616.0;
constexpr double kTop = 24.0;
constexpr double kBottom = 400.0;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                "#ff7f0e", "#8c564b", "#17becf"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

std::string label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

struct Axis {
  double lo = 0.0;
  double hi = 1.0;
  double px0 = 0.0;
  double px1 = 1.0;

  double map(double v) const { return px0 + (v - lo) / (hi - lo) * (px1 - px0); }
};

std::string header() {
  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" +
         num(kHeight) + "\" viewBox=\"0 0 " + num(kWidth) + " " + num(kHeight) + "\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"" + num(kWidth) + "\" height=\"" + num(kHeight) +
         "\" fill=\"white\"/>\n";
  return out;
}

std::string axes(const Axis& x, const Axis& y, std::string_view x_label,
                 std::string_view y_label) {
  std::string out;
  out += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(kBottom) + "\" x2=\"" + num(kRight) +
         "\" y2=\"" + num(kBottom) + "\" stroke=\"black\"/>\n";
  out += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(kTop) + "\" x2=\"" + num(kLeft) +
         "\" y2=\"" + num(kBottom) + "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double vx = x.lo + (x.hi - x.lo) * i / 4.0;
    const double px = x.map(vx);
    out += "<line x1=\"" + num(px) + "\" y1=\"" + num(kBottom) + "\" x2=\"" + num(px) +
           "\" y2=\"" + num(kBottom + 5) + "\" stroke=\"black\"/>\n";
    out += "<text x=\"" + num(px) + "\" y=\"" + num(kBottom + 18) +
           "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">" + label(vx) +
           "</text>\n";
    const double vy = y.lo + (y.hi - y.lo) * i / 4.0;
    const double py = y.map(vy);
    out += "<line x1=\"" + num(kLeft - 5) + "\" y1=\"" + num(py) + "\" x2=\"" + num(kLeft) +
           "\" y2=\"" + num(py) + "\" stroke=\"black\"/>\n";
    out += "<text x=\"" + num(kLeft - 8) + "\" y=\"" + num(py + 4) +
           "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">" + label(vy) +
           "</text>\n";
  }
  out += "<text x=\"" + num((kLeft + kRight) / 2) + "\" y=\"" + num(kHeight - 6) +
         "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">" +
         std::string(x_label) + "</text>\n";
  out += "<text x=\"14\" y=\"" + num((kTop + kBottom) / 2) +
         "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\" "
         "transform=\"rotate(-90 14 " +
         num((kTop + kBottom) / 2) + ")\">" + std::string(y_label) + "</text>\n";
  return out;
}

}  // namespace

std::string render_histogram_svg(const std::vector<HistogramBinRow>& bins) {
  if (bins.empty()) throw validation_error("histogram has no bins");
  Axis x{bins.front().lo, bins.back().hi, kLeft, kRight};
  double ymax = 0.0;
  for (const auto& bin : bins) ymax = std::max({ymax, bin.observed, bin.expected});
  if (ymax <= 0.0) ymax = 1.0;
  Axis y{0.0, ymax * 1.05, kBottom, kTop};

  std::string out = header();
  out += axes(x, y, "proportion", "fields");
  for (const auto& bin : bins) {
    const double px = x.map(bin.lo);
    const double pw = x.map(bin.hi) - px;
    const double py = y.map(bin.observed);
    out += "<rect x=\"" + num(px) + "\" y=\"" + num(py) + "\" width=\"" + num(pw) +
           "\" height=\"" + num(kBottom - py) +
           "\" fill=\"#9ecae1\" stroke=\"#4292c6\" stroke-width=\"0.5\"/>\n";
  }
  std::string path;
  for (std::size_t i = 0; i < bins.size(); ++i) {
    const double cx = x.map((bins[i].lo + bins[i].hi) / 2.0);
    const double cy = y.map(bins[i].expected);
    path += (i == 0 ? "M" : " L") + num(cx) + " " + num(cy);
  }
  out += "<path d=\"" + path +
         "\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"1.5\" stroke-dasharray=\"3 3\"/>\n";
  out += "</svg>\n";
  return out;
}

std::string render_ecdf_svg(const std::vector<EcdfCurve>& curves, bool log_x) {
  if (curves.empty()) throw validation_error("no ecdf curves to draw");
  double xmin = 0.0, xmax = 1.0;
  bool first = true;
  double min_positive = 1.0;
  for (const auto& curve : curves)
    for (const auto& [score, frac] : curve.points) {
      if (score > 0.0) min_positive = first ? score : std::min(min_positive, score);
      if (first) {
        xmin = xmax = score;
        first = false;
      } else {
        xmin = std::min(xmin, score);
        xmax = std::max(xmax, score);
      }
    }
  auto tx = [&](double score) {
    if (!log_x) return score;
    // zero scores cannot sit on a log axis; pin them half a decade below
    return std::log10(std::max(score, min_positive / 3.16227766));
  };
  Axis x{tx(xmin), tx(xmax), kLeft, kRight};
  if (x.hi <= x.lo) x.hi = x.lo + 1.0;
  Axis y{0.0, 1.0, kBottom, kTop};

  std::string out = header();
  out += axes(x, y, log_x ? "score (log10)" : "score", "cumulative fraction");
  for (std::size_t c = 0; c < curves.size(); ++c) {
    const auto& points = curves[c].points;
    if (points.empty()) continue;
    std::string path = "M" + num(x.map(tx(points[0].first))) + " " + num(y.map(points[0].second));
    for (std::size_t i = 1; i < points.size(); ++i) {
      // right-continuous staircase
      path += " L" + num(x.map(tx(points[i].first))) + " " + num(y.map(points[i - 1].second));
      path += " L" + num(x.map(tx(points[i].first))) + " " + num(y.map(points[i].second));
    }
    const char* color = kPalette[c % (sizeof(kPalette) / sizeof(kPalette[0]))];
    out += "<path d=\"" + path + "\" fill=\"none\" stroke=\"" + color +
           "\" stroke-width=\"1.5\"/>\n";
    out += "<text x=\"" + num(kRight - 150) + "\" y=\"" + num(kTop + 16 + 14 * c) +
           "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"" + color + "\">" +
           curves[c].name + "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

std::string render_scatter_svg(const std::vector<ScatterPoint>& points,
                               std::string_view x_label, std::string_view y_label) {
  if (points.empty()) throw validation_error("no scatter points to draw");
  double xmin = points[0].x, xmax = points[0].x, ymin = points[0].y, ymax = points[0].y;
  for (const auto& point : points) {
    xmin = std::min(xmin, point.x);
    xmax = std::max(xmax, point.x);
    ymin = std::min(ymin, point.y);
    ymax = std::max(ymax, point.y);
  }
  if (xmax <= xmin) xmax = xmin + 1.0;
  if (ymax <= ymin) ymax = ymin + 1.0;
  const double xpad = (xmax - xmin) * 0.05;
  const double ypad = (ymax - ymin) * 0.05;
  Axis x{xmin - xpad, xmax + xpad, kLeft, kRight};
  Axis y{ymin - ypad, ymax + ypad, kBottom, kTop};

  std::string out = header();
  out += axes(x, y, x_label, y_label);
  for (const auto& point : points)
    out += "<circle cx=\"" + num(x.map(point.x)) + "\" cy=\"" + num(y.map(point.y)) +
           "\" r=\"2.5\" fill=\"#1f77b4\" fill-opacity=\"0.7\"/>\n";
  out += "</svg>\n";
  return out;
}

}  // namespace citenorm::cli
