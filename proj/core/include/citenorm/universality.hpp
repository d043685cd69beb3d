#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "citenorm/corpus.hpp"
#include "citenorm/rescale.hpp"

namespace citenorm {

/// Global score threshold: the (1 - top_fraction) empirical quantile of the
/// pooled rescaled scores, nearest-rank (value at rank ceil((1-p)*N),
/// 1-indexed on the ascending sort).
struct Threshold {
  double top_fraction = 0.10;
  double value = 0.0;

  bool operator==(const Threshold&) const = default;
};

struct FieldStats {
  std::string field_id;
  std::int64_t n = 0;
  double mean_citations = 0.0;
  double prop_uncited = 0.0;
  double prop_topk = 0.0;

  bool operator==(const FieldStats&) const = default;
};

/// Half-open bins [origin + i*width, origin + (i+1)*width); a value exactly
/// on an edge lands in the upper bin.
struct BinGrid {
  double origin = 0.0;
  double width = 0.005;

  bool operator==(const BinGrid&) const = default;
};

long bin_index(const BinGrid& grid, double x);
double bin_lo(const BinGrid& grid, long index);
double bin_hi(const BinGrid& grid, long index);

/// Histograms span the full bin range covering [0, 1], so observed and
/// expected histograms on the same grid align bin for bin.
struct ObservedHistogram {
  BinGrid grid;
  long first_bin = 0;
  std::vector<std::int64_t> counts;

  bool operator==(const ObservedHistogram&) const = default;
};

struct ExpectedHistogram {
  BinGrid grid;
  long first_bin = 0;
  std::vector<double> mass;

  bool operator==(const ExpectedHistogram&) const = default;
};

/// What per-field top-fraction proportions look like when every field draws
/// from one shared score distribution: the equal-weight aggregate of
/// Binomial(n_f, p) / n_f proportion distributions.
struct BinomialMixtureNull {
  std::vector<std::int64_t> field_sizes;
  double p = 0.10;
  double theoretical_std = 0.0;
  ExpectedHistogram expected_histogram;
  double expected_out_of_band = 0.0;

  bool operator==(const BinomialMixtureNull&) const = default;
};

struct UniversalityReport {
  AnalysisConfig config;
  Threshold threshold;
  std::vector<FieldStats> fields;  // ordered by field_id
  double observed_std = 0.0;
  BinomialMixtureNull null_model;
  std::int64_t observed_out_of_band = 0;
  ObservedHistogram observed_histogram;
  double pooled_mean_citations = 0.0;

  bool operator==(const UniversalityReport&) const = default;
};

enum class CorrelationMethod { pearson, spearman };

struct EcdfPoint {
  double score = 0.0;
  double cum_fraction = 0.0;

  bool operator==(const EcdfPoint&) const = default;
};

struct FractionSummary {
  double top_fraction = 0.0;
  double observed_std = 0.0;
  double theoretical_std = 0.0;
};

struct YearComparisonRow {
  std::string field_id;
  double prop_a = 0.0;
  double prop_b = 0.0;
};

struct YearComparison {
  std::vector<YearComparisonRow> rows;  // inner join on field_id, ordered
  double rho = 0.0;
};

Threshold percentile_threshold(const PooledScores& pooled, double top_fraction);

/// Fraction of scores strictly greater than the threshold value; ties at the
/// threshold are not in the top set.
double topk_proportion(const RescaledScoreSet& set, const Threshold& threshold);

/// Population standard deviation (divide by the count, not count - 1).
/// Throws degenerate_error for fewer than two values.
double population_std(std::span<const double> values);

/// sqrt(p (1-p) mean_f(1 / n_f)): the standard deviation of the equal-weight
/// binomial proportion mixture, whose components all have mean p.
double binomial_mixture_std(std::span<const std::int64_t> field_sizes, double p);
double binomial_mixture_std_from_mean_recip(double mean_reciprocal_size, double p);

/// Expected number of fields whose proportion falls strictly below band.lo or
/// strictly above band.hi under the binomial null.
double expected_out_of_band(std::span<const std::int64_t> field_sizes, double p, BandSpec band);

/// Spreads each field's Binomial(n_f, p) mass over proportion bins (count k
/// maps to k / n_f) and sums across fields; total mass equals the field count.
ExpectedHistogram expected_histogram(std::span<const std::int64_t> field_sizes, double p,
                                     BinGrid grid);

/// Integer bin counts over the same half-open grid; sums to the field count.
ObservedHistogram observed_histogram(std::span<const double> proportions, BinGrid grid);

/// Right-continuous step data at each distinct score; the last fraction is 1.
/// When zero scores are present the first point carries the uncited mass.
std::vector<EcdfPoint> ecdf(std::span<const double> scores);

/// Pearson, or Spearman as Pearson over average ranks. Throws
/// degenerate_error on constant input.
double correlation(std::span<const double> xs, std::span<const double> ys,
                   CorrelationMethod method);

/// Full report over size-filtered groups: pooled threshold, per-field stats,
/// observed vs null dispersion, out-of-band counts, histograms. Pure function
/// of its inputs; field and member order do not change any reported number.
UniversalityReport analyze(std::span<const FieldYearGroup> groups, const AnalysisConfig& config);

struct AnalysisArtifacts {
  UniversalityReport report;
  std::vector<RescaledScoreSet> scoresets;  // field_id order, parallel to report.fields
  PooledScores pooled;
  std::vector<FractionSummary> fraction_summaries;  // primary fraction first
};

/// analyze() plus the intermediate score sets and one summary row per
/// requested top fraction (the config's fraction first, then the extras).
AnalysisArtifacts analyze_full(std::span<const FieldYearGroup> groups,
                               const AnalysisConfig& config,
                               std::span<const double> extra_fractions);

/// Inner-joins per-field proportions of two reports computed at the same top
/// fraction and correlates them. Throws degenerate_error when fewer than two
/// fields are shared.
YearComparison compare_years(const UniversalityReport& a, const UniversalityReport& b,
                             CorrelationMethod method);

}  // namespace citenorm
