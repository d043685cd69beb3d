#include <algorithm>
#include <cmath>
#include <numeric>

#include "doctest.h"

#include "citenorm/binomial.hpp"
#include "citenorm/errors.hpp"
#include "citenorm/universality.hpp"
#include "citenorm/rng.hpp"
#include "helpers.hpp"

using namespace citenorm;
using testutil::make_group;

namespace {

PooledScores pooled_of(std::vector<double> scores) { return PooledScores{std::move(scores)}; }

RescaledScoreSet set_of(std::vector<double> scores) {
  RescaledScoreSet set;
  set.field_id = "X";
  set.year = 1999;
  set.c0 = 1.0;
  int i = 0;
  for (double s : scores) set.scores.push_back({"p" + std::to_string(i++), s});
  return set;
}

// Brute-force oracle: the full mixture distribution of proportions obtained
// by enumerating every Binomial(n_f, p) outcome, with pmf values built from
// exact integer coefficients. Only usable for small n_f.
struct MixtureEnumeration {
  double mean = 0.0;
  double stddev = 0.0;
  double out_of_band = 0.0;
};

MixtureEnumeration enumerate_mixture(const std::vector<std::int64_t>& sizes, double p,
                                     BandSpec band) {
  const double weight = 1.0 / static_cast<double>(sizes.size());
  double mean = 0.0, second = 0.0, oob = 0.0;
  for (auto n : sizes) {
    // exact C(n, k) by Pascal's rule
    std::vector<double> coeff(static_cast<std::size_t>(n) + 1, 0.0);
    coeff[0] = 1.0;
    for (std::int64_t row = 1; row <= n; ++row)
      for (std::int64_t k = row; k >= 1; --k) coeff[k] += coeff[k - 1];
    for (std::int64_t k = 0; k <= n; ++k) {
      const double pmf = coeff[k] * std::pow(p, static_cast<double>(k)) *
                         std::pow(1.0 - p, static_cast<double>(n - k));
      const double prop = static_cast<double>(k) / static_cast<double>(n);
      mean += weight * pmf * prop;
      second += weight * pmf * prop * prop;
      if (prop < band.lo || prop > band.hi) oob += pmf;
    }
  }
  return {mean, std::sqrt(second - mean * mean), oob};
}

}  // namespace

TEST_CASE("percentile_threshold: nearest-rank quantile") {
  CHECK(percentile_threshold(pooled_of({1, 2, 3, 4, 5, 6, 7, 8, 9, 10}), 0.1).value == 9.0);
  CHECK(percentile_threshold(pooled_of({10, 1, 9, 2, 8, 3, 7, 4, 6, 5}), 0.1).value == 9.0);
}

TEST_CASE("percentile_threshold: constant pool returns that value") {
  CHECK(percentile_threshold(pooled_of({4.2, 4.2, 4.2}), 0.1).value == 4.2);
}

TEST_CASE("percentile_threshold: empty pool and bad fractions are errors") {
  CHECK_THROWS_AS(percentile_threshold(pooled_of({}), 0.1), degenerate_error);
  CHECK_THROWS_AS(percentile_threshold(pooled_of({1.0}), 0.0), validation_error);
  CHECK_THROWS_AS(percentile_threshold(pooled_of({1.0}), 1.0), validation_error);
}

TEST_CASE("threshold sandwich: strict-above fraction <= p <= at-or-above fraction") {
  StreamRng rng(21, "threshold-sandwich");
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng.next_u64() % 400;
    std::vector<double> scores;
    for (std::size_t i = 0; i < n; ++i)
      scores.push_back(static_cast<double>(rng.next_u64() % 25));  // plenty of ties
    const double p = 0.02 + 0.9 * rng.next_unit();
    const auto threshold = percentile_threshold(pooled_of(scores), p);
    double above = 0, at_or_above = 0;
    for (double s : scores) {
      if (s > threshold.value) ++above;
      if (s >= threshold.value) ++at_or_above;
    }
    CHECK(above / static_cast<double>(n) <= p);
    CHECK(at_or_above / static_cast<double>(n) >= p);
  }
}

TEST_CASE("topk_proportion: strict inequality, ties excluded") {
  Threshold t{0.1, 9.0};
  CHECK(topk_proportion(set_of({1, 2, 3, 4, 5, 6, 7, 8, 9, 10}), t) == 0.1);
  CHECK(topk_proportion(set_of({1, 2, 3}), t) == 0.0);
  CHECK(topk_proportion(set_of({1.0, 1.0, 2.0}), Threshold{0.1, 1.0}) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("population_std: frozen values") {
  CHECK(population_std(std::vector<double>{0.1, 0.1, 0.1}) == 0.0);
  CHECK(std::fabs(population_std(std::vector<double>{0.08, 0.12}) - 0.02) <= 1e-15);
  CHECK(std::fabs(population_std(std::vector<double>{0.0, 0.1, 0.2}) - 0.081649658092772603) <=
        1e-9);
  CHECK_THROWS_AS(population_std(std::vector<double>{0.1}), degenerate_error);
}

TEST_CASE("binomial_mixture_std: closed-form checks") {
  const std::vector<std::int64_t> single{1000};
  CHECK(std::fabs(binomial_mixture_std(single, 0.1) - 0.0094868329805051381) <= 1e-9);
  const std::vector<std::int64_t> three{100, 400, 1000};
  // mean reciprocal size 0.0045
  CHECK(std::fabs(binomial_mixture_std(three, 0.1) - 0.020124611797498108) <= 1e-9);
  CHECK_THROWS_AS(binomial_mixture_std(std::vector<std::int64_t>{}, 0.1), validation_error);
  CHECK_THROWS_AS(binomial_mixture_std(std::vector<std::int64_t>{0}, 0.1), validation_error);
}

TEST_CASE("binomial_mixture_std depends on sizes only through the mean reciprocal") {
  const std::vector<std::int64_t> sizes{2000, 6000};
  const double mr = (1.0 / 2000 + 1.0 / 6000) / 2.0;
  for (double p : {0.05, 0.1, 0.2, 0.4})
    CHECK(binomial_mixture_std(sizes, p) ==
          doctest::Approx(binomial_mixture_std_from_mean_recip(mr, p)).epsilon(1e-15));
}

TEST_CASE("expected_out_of_band: frozen small cases") {
  const std::vector<std::int64_t> ten{10};
  CHECK(expected_out_of_band(ten, 0.1, BandSpec{0.0, 1.0}) == 0.0);
  // P(X=0) + P(X>=2) for Binomial(10, 0.1)
  CHECK(std::fabs(expected_out_of_band(ten, 0.1, BandSpec{0.09, 0.11}) - 0.612579511) <= 1e-9);
  const std::vector<std::int64_t> five{5, 5};
  // 2 * (P(X=0) + P(X>=2)) for Binomial(5, 0.1): 2 * (0.59049 + 0.08146)
  CHECK(std::fabs(expected_out_of_band(five, 0.1, BandSpec{0.19, 0.21}) - 1.34390) <= 1e-9);
}

TEST_CASE("expected_out_of_band uses strict bounds on both sides") {
  // with n=10 a proportion of exactly 0.1 must be in band
  const std::vector<std::int64_t> ten{10};
  const double v = expected_out_of_band(ten, 0.1, BandSpec{0.1, 0.2});
  // below: k/10 < 0.1 -> k = 0 only; above: k/10 > 0.2 -> k >= 3
  const double expect = binomial_cdf(0, 10, 0.1) + binomial_upper_tail(2, 10, 0.1);
  CHECK(v == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("expected_out_of_band and mixture std match brute-force enumeration") {
  StreamRng rng(31, "oob-oracle");
  for (int trial = 0; trial < 120; ++trial) {
    std::vector<std::int64_t> sizes;
    const int k = 1 + static_cast<int>(rng.next_u64() % 6);
    for (int i = 0; i < k; ++i)
      sizes.push_back(1 + static_cast<std::int64_t>(rng.next_u64() % 20));
    const double p = 0.02 + 0.6 * rng.next_unit();
    const BandSpec band{0.02 + 0.2 * rng.next_unit(), 0.3 + 0.5 * rng.next_unit()};
    const auto oracle = enumerate_mixture(sizes, p, band);
    CHECK(std::fabs(expected_out_of_band(sizes, p, band) - oracle.out_of_band) <= 1e-12);
    CHECK(std::fabs(binomial_mixture_std(sizes, p) - oracle.stddev) <= 1e-9);
  }
}

TEST_CASE("expected_histogram: mass lands in the right half-open bin") {
  const std::vector<std::int64_t> ten{10};
  auto hist = expected_histogram(ten, 0.1, BinGrid{0.05, 0.1});
  // proportion 1/10 falls in [0.05, 0.15)
  const long idx = bin_index(hist.grid, 0.1);
  CHECK(std::fabs(hist.mass[idx - hist.first_bin] - 0.387420489) <= 1e-9);
  double total = 0.0;
  for (double m : hist.mass) total += m;
  CHECK(std::fabs(total - 1.0) <= 1e-9);
}

TEST_CASE("expected_histogram: coarse grid still holds all the mass") {
  const std::vector<std::int64_t> sizes{10, 25, 40};
  auto hist = expected_histogram(sizes, 0.1, BinGrid{0.0, 1.0});
  double total = 0.0;
  for (double m : hist.mass) total += m;
  CHECK(std::fabs(total - 3.0) <= 1e-9);
  // proportion exactly 1.0 goes to the terminal bin [1, 2)
  CHECK(hist.mass.size() == 2);
}

TEST_CASE("expected_histogram: p = 0 concentrates at zero") {
  const std::vector<std::int64_t> sizes{10};
  auto hist = expected_histogram(sizes, 0.0, BinGrid{0.0, 0.25});
  CHECK(hist.mass[bin_index(hist.grid, 0.0) - hist.first_bin] == 1.0);
}

TEST_CASE("observed_histogram: edge values go to the upper bin") {
  auto hist = observed_histogram(std::vector<double>{0.5}, BinGrid{0.0, 0.25});
  CHECK(hist.counts[bin_index(hist.grid, 0.5) - hist.first_bin] == 1);
  CHECK(bin_lo(hist.grid, bin_index(hist.grid, 0.5)) == 0.5);
}

TEST_CASE("observed_histogram: counts are exact and bins distinct") {
  auto hist = observed_histogram(std::vector<double>{0.07, 0.10, 0.14}, BinGrid{0.0, 0.005});
  std::int64_t total = 0;
  int nonzero = 0;
  for (auto c : hist.counts) {
    total += c;
    if (c > 0) ++nonzero;
  }
  CHECK(total == 3);
  CHECK(nonzero == 3);
}

TEST_CASE("ecdf: right-continuous step data with terminal value 1") {
  auto points = ecdf(std::vector<double>{0, 0, 1, 3});
  REQUIRE(points.size() == 3);
  CHECK(points[0] == EcdfPoint{0.0, 0.5});
  CHECK(points[1] == EcdfPoint{1.0, 0.75});
  CHECK(points[2] == EcdfPoint{3.0, 1.0});

  auto single = ecdf(std::vector<double>{2.5});
  REQUIRE(single.size() == 1);
  CHECK(single[0] == EcdfPoint{2.5, 1.0});
}

TEST_CASE("ecdf: distinct scores get fractions i/N; always monotone, ends at 1") {
  auto points = ecdf(std::vector<double>{3, 1, 2, 4});
  for (std::size_t i = 0; i < points.size(); ++i)
    CHECK(points[i].cum_fraction == static_cast<double>(i + 1) / 4.0);

  StreamRng rng(41, "ecdf-monotone");
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> scores;
    const std::size_t n = 1 + rng.next_u64() % 300;
    for (std::size_t i = 0; i < n; ++i)
      scores.push_back(static_cast<double>(rng.next_u64() % 20) / 4.0);
    auto pts = ecdf(scores);
    for (std::size_t i = 1; i < pts.size(); ++i) {
      CHECK(pts[i].score > pts[i - 1].score);
      CHECK(pts[i].cum_fraction > pts[i - 1].cum_fraction);
    }
    CHECK(pts.back().cum_fraction == 1.0);
  }
}

TEST_CASE("correlation: exact endpoints and rank handling") {
  std::vector<double> xs{1, 2, 3, 4};
  std::vector<double> lin{3, 5, 7, 9};  // 2x + 1
  CHECK(correlation(xs, lin, CorrelationMethod::pearson) == 1.0);
  std::vector<double> neg{-1, -2, -3, -4};
  CHECK(correlation(xs, neg, CorrelationMethod::pearson) == -1.0);
  std::vector<double> a{1, 2, 3};
  std::vector<double> b{1, 3, 2};
  CHECK(correlation(a, b, CorrelationMethod::spearman) == doctest::Approx(0.5).epsilon(1e-12));
  std::vector<double> flat{2, 2, 2};
  CHECK_THROWS_AS(correlation(a, flat, CorrelationMethod::pearson), degenerate_error);
  CHECK_THROWS_AS(correlation(a, std::vector<double>{1, 2}, CorrelationMethod::pearson),
                  validation_error);
}

TEST_CASE("correlation: symmetric, and invariant under positive affine maps") {
  StreamRng rng(51, "corr-affine");
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> xs, ys;
    for (int i = 0; i < 30; ++i) {
      xs.push_back(rng.next_normal());
      ys.push_back(rng.next_normal() + 0.5 * xs.back());
    }
    const double base = correlation(xs, ys, CorrelationMethod::pearson);
    CHECK(std::fabs(base - correlation(ys, xs, CorrelationMethod::pearson)) <= 1e-12);
    std::vector<double> mapped;
    for (double x : xs) mapped.push_back(2.5 * x + 7.0);
    CHECK(std::fabs(base - correlation(mapped, ys, CorrelationMethod::pearson)) <= 1e-12);
  }
}

namespace {

std::vector<FieldYearGroup> demo_groups() {
  std::vector<FieldYearGroup> groups;
  groups.push_back(make_group("BIO", 1999, {0, 1, 1, 2, 2, 3, 4, 5, 8, 20}));
  groups.push_back(make_group("ENG", 1999, {0, 0, 0, 0, 1, 1, 2, 3, 5, 30}));
  groups.push_back(make_group("MAT", 1999, {1, 1, 2, 2, 2, 3, 3, 4, 6, 12}));
  return groups;
}

AnalysisConfig demo_config() {
  AnalysisConfig config;
  config.publication_year = 1999;
  config.top_fraction = 0.1;
  config.min_field_size = 0;
  config.bin_width = 0.02;
  return config;
}

}  // namespace

TEST_CASE("analyze: report numbers are the composition of the primitive ops") {
  auto groups = demo_groups();
  auto config = demo_config();
  auto report = analyze(groups, config);

  REQUIRE(report.fields.size() == 3);
  CHECK(report.fields[0].field_id == "BIO");
  CHECK(report.fields[1].field_id == "ENG");
  CHECK(report.fields[2].field_id == "MAT");

  auto sets = rescale_all(groups);
  auto pooled = pool(sets);
  auto threshold = percentile_threshold(pooled, 0.1);
  CHECK(report.threshold == threshold);

  std::vector<double> props;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    props.push_back(topk_proportion(sets[i], threshold));
    CHECK(report.fields[i].prop_topk == props.back());
    CHECK(report.fields[i].mean_citations == group_mean(groups[i]));
    CHECK(report.fields[i].n == static_cast<std::int64_t>(groups[i].members.size()));
  }
  CHECK(report.fields[0].prop_uncited == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(report.fields[1].prop_uncited == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(report.fields[2].prop_uncited == 0.0);

  CHECK(report.observed_std == population_std(props));
  std::vector<std::int64_t> sizes{10, 10, 10};
  CHECK(report.null_model.theoretical_std == binomial_mixture_std(sizes, 0.1));
  CHECK(report.null_model.expected_out_of_band ==
        expected_out_of_band(sizes, 0.1, config.band));
  CHECK(report.pooled_mean_citations ==
        doctest::Approx((46.0 + 42.0 + 36.0) / 30.0).epsilon(1e-15));

  std::int64_t hist_total = 0;
  for (auto c : report.observed_histogram.counts) hist_total += c;
  CHECK(hist_total == 3);
}

TEST_CASE("analyze: a single field surfaces the degenerate-statistics error") {
  std::vector<FieldYearGroup> groups;
  groups.push_back(make_group("ONLY", 1999, {1, 2, 3}));
  CHECK_THROWS_AS(analyze(groups, demo_config()), degenerate_error);
}

TEST_CASE("analyze: permuting field and member order changes nothing") {
  auto groups = demo_groups();
  auto config = demo_config();
  auto base = analyze(groups, config);

  std::swap(groups[0], groups[2]);
  std::reverse(groups[1].members.begin(), groups[1].members.end());
  std::rotate(groups[2].members.begin(), groups[2].members.begin() + 4,
              groups[2].members.end());
  auto shuffled = analyze(groups, config);
  CHECK(base == shuffled);
}

TEST_CASE("analyze: integer count scaling leaves every reported number in place") {
  auto groups = demo_groups();
  auto config = demo_config();
  auto base = analyze(groups, config);

  auto scaled_groups = demo_groups();
  for (auto& group : scaled_groups)
    for (auto& member : group.members) member.citations *= 7;
  auto scaled = analyze(scaled_groups, config);

  CHECK(std::fabs(scaled.threshold.value - base.threshold.value) <=
        1e-12 * std::fabs(base.threshold.value));
  for (std::size_t i = 0; i < base.fields.size(); ++i) {
    CHECK(scaled.fields[i].prop_topk == base.fields[i].prop_topk);
    CHECK(scaled.fields[i].prop_uncited == base.fields[i].prop_uncited);
  }
  CHECK(scaled.observed_out_of_band == base.observed_out_of_band);
  CHECK(scaled.observed_histogram == base.observed_histogram);
  CHECK(scaled.null_model.expected_histogram == base.null_model.expected_histogram);
  CHECK(scaled.observed_std == base.observed_std);
}

TEST_CASE("analyze_full: one summary row per fraction, primary first") {
  auto groups = demo_groups();
  auto config = demo_config();
  const std::vector<double> extras{0.2, 0.4};
  auto art = analyze_full(groups, config, extras);
  REQUIRE(art.fraction_summaries.size() == 3);
  CHECK(art.fraction_summaries[0].top_fraction == 0.1);
  CHECK(art.fraction_summaries[0].observed_std == art.report.observed_std);
  CHECK(art.fraction_summaries[0].theoretical_std == art.report.null_model.theoretical_std);
  CHECK(art.fraction_summaries[1].top_fraction == 0.2);
  CHECK(art.fraction_summaries[2].top_fraction == 0.4);
}

TEST_CASE("compare_years: identical reports correlate perfectly") {
  auto report = analyze(demo_groups(), demo_config());
  auto cmp = compare_years(report, report, CorrelationMethod::pearson);
  CHECK(cmp.rows.size() == 3);
  CHECK(cmp.rho == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("compare_years: disjoint field sets are an error") {
  auto report_a = analyze(demo_groups(), demo_config());
  std::vector<FieldYearGroup> other;
  other.push_back(make_group("XA", 1994, {0, 1, 2, 5, 9}));
  other.push_back(make_group("XB", 1994, {1, 1, 2, 2, 8}));
  auto report_b = analyze(other, demo_config());
  CHECK_THROWS_AS(compare_years(report_a, report_b, CorrelationMethod::pearson),
                  degenerate_error);
}

TEST_CASE("compare_years: mismatched top fractions are rejected") {
  auto report_a = analyze(demo_groups(), demo_config());
  auto config_b = demo_config();
  config_b.top_fraction = 0.2;
  auto report_b = analyze(demo_groups(), config_b);
  CHECK_THROWS_AS(compare_years(report_a, report_b, CorrelationMethod::pearson),
                  validation_error);
}
