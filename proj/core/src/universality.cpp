#include "citenorm/universality.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "citenorm/binomial.hpp"
#include "citenorm/errors.hpp"

namespace citenorm {

namespace {

void check_fraction(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw validation_error("top fraction must lie strictly between 0 and 1");
}

double pearson(std::span<const double> xs, std::span<const double> ys) {
  const std::size_t n = xs.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0 || syy == 0.0)
    throw degenerate_error("correlation undefined for constant input");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

// Average ranks for ties, 1-based.
std::vector<double> average_ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i + 1;
    while (j < n && values[order[j]] == values[order[i]]) ++j;
    const double avg = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = avg;
    i = j;
  }
  return ranks;
}

}  // namespace

long bin_index(const BinGrid& grid, double x) {
  if (!(grid.width > 0.0)) throw validation_error("bin width must be positive");
  long i = static_cast<long>(std::floor((x - grid.origin) / grid.width));
  // settle edge values into the correct half-open bin
  while (x >= grid.origin + static_cast<double>(i + 1) * grid.width) ++i;
  while (x < grid.origin + static_cast<double>(i) * grid.width) --i;
  return i;
}

double bin_lo(const BinGrid& grid, long index) {
  return grid.origin + static_cast<double>(index) * grid.width;
}

double bin_hi(const BinGrid& grid, long index) {
  return grid.origin + static_cast<double>(index + 1) * grid.width;
}

Threshold percentile_threshold(const PooledScores& pooled, double top_fraction) {
  check_fraction(top_fraction);
  if (pooled.scores.empty()) throw degenerate_error("empty score pool");
  const auto n = static_cast<std::int64_t>(pooled.scores.size());
  // rank ceil((1-p)*n) computed as n - floor(n*p); identical mathematically,
  // and n*p is exact for the common decimal fractions
  std::int64_t rank =
      n - static_cast<std::int64_t>(std::floor(static_cast<double>(n) * top_fraction));
  rank = std::clamp<std::int64_t>(rank, 1, n);
  std::vector<double> scores(pooled.scores);
  auto nth = scores.begin() + (rank - 1);
  std::nth_element(scores.begin(), nth, scores.end());
  return {top_fraction, *nth};
}

double topk_proportion(const RescaledScoreSet& set, const Threshold& threshold) {
  if (set.scores.empty()) throw degenerate_error("empty score set");
  std::int64_t above = 0;
  for (const auto& entry : set.scores)
    if (entry.score > threshold.value) ++above;
  return static_cast<double>(above) / static_cast<double>(set.scores.size());
}

double population_std(std::span<const double> values) {
  if (values.size() < 2)
    throw degenerate_error("standard deviation needs at least two fields");
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  var /= static_cast<double>(values.size());
  return std::sqrt(var);
}

double binomial_mixture_std_from_mean_recip(double mean_reciprocal_size, double p) {
  check_fraction(p);
  if (!(mean_reciprocal_size > 0.0))
    throw validation_error("mean reciprocal size must be positive");
  return std::sqrt(p * (1.0 - p) * mean_reciprocal_size);
}

double binomial_mixture_std(std::span<const std::int64_t> field_sizes, double p) {
  check_fraction(p);
  if (field_sizes.empty()) throw validation_error("field size list is empty");
  double recip_sum = 0.0;
  for (auto n : field_sizes) {
    if (n < 1) throw validation_error("field sizes must be at least 1");
    recip_sum += 1.0 / static_cast<double>(n);
  }
  return binomial_mixture_std_from_mean_recip(
      recip_sum / static_cast<double>(field_sizes.size()), p);
}

double expected_out_of_band(std::span<const std::int64_t> field_sizes, double p, BandSpec band) {
  if (!(band.lo < band.hi))
    throw validation_error("band lower bound must be below the upper bound");
  double total = 0.0;
  for (auto n : field_sizes) {
    if (n < 1) throw validation_error("field sizes must be at least 1");
    const double nd = static_cast<double>(n);
    // largest k with k/n < lo (strictly below the band)
    std::int64_t k_lo =
        std::min<std::int64_t>(n, static_cast<std::int64_t>(std::floor(band.lo * nd)) + 2);
    while (k_lo >= 0 && !(static_cast<double>(k_lo) / nd < band.lo)) --k_lo;
    // largest k with k/n <= hi
    std::int64_t k_hi =
        std::min<std::int64_t>(n, static_cast<std::int64_t>(std::floor(band.hi * nd)) + 2);
    while (k_hi >= 0 && static_cast<double>(k_hi) / nd > band.hi) --k_hi;
    const double low = k_lo < 0 ? 0.0 : binomial_cdf(k_lo, n, p);
    double high;
    if (k_hi >= n)
      high = 0.0;
    else if (k_hi < 0)
      high = 1.0;
    else
      high = binomial_upper_tail(k_hi, n, p);
    total += low + high;
  }
  return total;
}

ExpectedHistogram expected_histogram(std::span<const std::int64_t> field_sizes, double p,
                                     BinGrid grid) {
  if (!(p >= 0.0 && p <= 1.0)) throw validation_error("p must lie in [0, 1]");
  const long first = bin_index(grid, 0.0);
  const long last = bin_index(grid, 1.0);
  ExpectedHistogram hist{grid, first, std::vector<double>(last - first + 1, 0.0)};
  for (auto n : field_sizes) {
    if (n < 1) throw validation_error("field sizes must be at least 1");
    const double nd = static_cast<double>(n);
    for_each_binomial_pmf(n, p, [&](std::int64_t k, double pmf) {
      if (pmf == 0.0) return;
      hist.mass[bin_index(grid, static_cast<double>(k) / nd) - first] += pmf;
    });
  }
  return hist;
}

ObservedHistogram observed_histogram(std::span<const double> proportions, BinGrid grid) {
  const long first = bin_index(grid, 0.0);
  const long last = bin_index(grid, 1.0);
  ObservedHistogram hist{grid, first, std::vector<std::int64_t>(last - first + 1, 0)};
  for (double prop : proportions) {
    const long idx = bin_index(grid, prop);
    if (idx < first || idx > last)
      throw validation_error("proportion outside [0, 1]");
    ++hist.counts[idx - first];
  }
  return hist;
}

std::vector<EcdfPoint> ecdf(std::span<const double> scores) {
  if (scores.empty()) throw degenerate_error("empty score list");
  std::vector<double> sorted(scores.begin(), scores.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<EcdfPoint> points;
  const double n = static_cast<double>(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i + 1 == sorted.size() || sorted[i + 1] != sorted[i])
      points.push_back({sorted[i], static_cast<double>(i + 1) / n});
  }
  return points;
}

double correlation(std::span<const double> xs, std::span<const double> ys,
                   CorrelationMethod method) {
  if (xs.size() != ys.size())
    throw validation_error("correlation inputs must have equal length");
  if (xs.size() < 2) throw validation_error("correlation needs at least two points");
  if (method == CorrelationMethod::spearman) {
    auto rx = average_ranks(xs);
    auto ry = average_ranks(ys);
    return pearson(rx, ry);
  }
  return pearson(xs, ys);
}

UniversalityReport analyze(std::span<const FieldYearGroup> groups, const AnalysisConfig& config) {
  return analyze_full(groups, config, {}).report;
}

AnalysisArtifacts analyze_full(std::span<const FieldYearGroup> groups,
                               const AnalysisConfig& config,
                               std::span<const double> extra_fractions) {
  validate(config);
  // canonical field order, so permuting the input changes nothing
  std::vector<const FieldYearGroup*> ordered;
  ordered.reserve(groups.size());
  for (const auto& group : groups) ordered.push_back(&group);
  std::sort(ordered.begin(), ordered.end(),
            [](const FieldYearGroup* a, const FieldYearGroup* b) {
              return a->field_id < b->field_id;
            });
  for (std::size_t i = 1; i < ordered.size(); ++i)
    if (ordered[i]->field_id == ordered[i - 1]->field_id)
      throw validation_error("duplicate field_id '" + ordered[i]->field_id + "'");

  AnalysisArtifacts art;
  art.scoresets.reserve(ordered.size());
  for (const auto* group : ordered) art.scoresets.push_back(rescale(*group));
  art.pooled = pool(art.scoresets);

  std::vector<double> fractions;
  fractions.push_back(config.top_fraction);
  fractions.insert(fractions.end(), extra_fractions.begin(), extra_fractions.end());

  std::vector<std::int64_t> sizes;
  sizes.reserve(ordered.size());
  std::int64_t total_citations = 0;
  std::int64_t total_members = 0;
  std::vector<std::int64_t> zero_counts;
  zero_counts.reserve(ordered.size());
  for (const auto* group : ordered) {
    sizes.push_back(static_cast<std::int64_t>(group->members.size()));
    std::int64_t zeros = 0;
    for (const auto& member : group->members) {
      total_citations += member.citations;
      if (member.citations == 0) ++zeros;
    }
    zero_counts.push_back(zeros);
    total_members += static_cast<std::int64_t>(group->members.size());
  }

  UniversalityReport& report = art.report;
  report.config = config;

  std::vector<double> primary_props;
  for (std::size_t fi = 0; fi < fractions.size(); ++fi) {
    const double p = fractions[fi];
    const Threshold threshold = percentile_threshold(art.pooled, p);
    std::vector<double> props;
    props.reserve(art.scoresets.size());
    for (const auto& set : art.scoresets) props.push_back(topk_proportion(set, threshold));
    FractionSummary summary{p, population_std(props), binomial_mixture_std(sizes, p)};
    art.fraction_summaries.push_back(summary);
    if (fi == 0) {
      report.threshold = threshold;
      report.observed_std = summary.observed_std;
      primary_props = std::move(props);
    }
  }

  report.fields.reserve(ordered.size());
  for (std::size_t i = 0; i < ordered.size(); ++i) {
    const auto& set = art.scoresets[i];
    report.fields.push_back({set.field_id, sizes[i], set.c0,
                             static_cast<double>(zero_counts[i]) / static_cast<double>(sizes[i]),
                             primary_props[i]});
  }

  const BinGrid grid{0.0, config.bin_width};
  report.null_model.field_sizes = sizes;
  report.null_model.p = config.top_fraction;
  report.null_model.theoretical_std = art.fraction_summaries[0].theoretical_std;
  report.null_model.expected_histogram = expected_histogram(sizes, config.top_fraction, grid);
  report.null_model.expected_out_of_band =
      expected_out_of_band(sizes, config.top_fraction, config.band);

  report.observed_out_of_band = 0;
  for (double prop : primary_props)
    if (prop < config.band.lo || prop > config.band.hi) ++report.observed_out_of_band;
  report.observed_histogram = observed_histogram(primary_props, grid);
  report.pooled_mean_citations =
      static_cast<double>(total_citations) / static_cast<double>(total_members);
  return art;
}

YearComparison compare_years(const UniversalityReport& a, const UniversalityReport& b,
                             CorrelationMethod method) {
  if (a.threshold.top_fraction != b.threshold.top_fraction)
    throw validation_error("reports were computed with different top fractions");
  YearComparison cmp;
  std::size_t i = 0, j = 0;
  while (i < a.fields.size() && j < b.fields.size()) {
    const auto& fa = a.fields[i];
    const auto& fb = b.fields[j];
    if (fa.field_id < fb.field_id) {
      ++i;
    } else if (fb.field_id < fa.field_id) {
      ++j;
    } else {
      cmp.rows.push_back({fa.field_id, fa.prop_topk, fb.prop_topk});
      ++i;
      ++j;
    }
  }
  if (cmp.rows.size() < 2)
    throw degenerate_error("fewer than two fields shared between the two reports");
  std::vector<double> xs, ys;
  xs.reserve(cmp.rows.size());
  ys.reserve(cmp.rows.size());
  for (const auto& row : cmp.rows) {
    xs.push_back(row.prop_a);
    ys.push_back(row.prop_b);
  }
  cmp.rho = correlation(xs, ys, method);
  return cmp;
}

}  // namespace citenorm
