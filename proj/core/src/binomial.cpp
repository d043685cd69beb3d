#include "citenorm/binomial.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "citenorm/errors.hpp"

namespace citenorm {

namespace detail {

void check_binomial(std::int64_t k, std::int64_t n, double p) {
  if (n < 1) throw validation_error("binomial: n must be positive, got " + std::to_string(n));
  if (!(p >= 0.0 && p <= 1.0)) throw validation_error("binomial: p must lie in [0, 1]");
  if (k < 0 || k > n)
    throw validation_error("binomial: k must lie in [0, n], got k=" + std::to_string(k) +
                           " n=" + std::to_string(n));
}

}  // namespace detail

namespace {

struct KahanSum {
  double sum = 0.0;
  double comp = 0.0;
  void add(double v) {
    double y = v - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

}  // namespace

double log_binomial_pmf(std::int64_t k, std::int64_t n, double p) {
  detail::check_binomial(k, n, p);
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  if (p == 0.0) return k == 0 ? 0.0 : kNegInf;
  if (p == 1.0) return k == n ? 0.0 : kNegInf;
  const double nd = static_cast<double>(n);
  const double kd = static_cast<double>(k);
  return std::lgamma(nd + 1.0) - std::lgamma(kd + 1.0) - std::lgamma(nd - kd + 1.0) +
         kd * std::log(p) + (nd - kd) * std::log1p(-p);
}

double binomial_pmf(std::int64_t k, std::int64_t n, double p) {
  double lp = log_binomial_pmf(k, n, p);
  return lp < -745.0 ? 0.0 : std::exp(lp);
}

double binomial_cdf(std::int64_t k, std::int64_t n, double p) {
  detail::check_binomial(k, n, p);
  if (p == 0.0) return 1.0;
  if (p == 1.0) return k == n ? 1.0 : 0.0;
  const double log_odds = std::log(p) - std::log1p(-p);
  double lpmf = static_cast<double>(n) * std::log1p(-p);
  KahanSum acc;
  for (std::int64_t j = 0;; ++j) {
    acc.add(lpmf < -745.0 ? 0.0 : std::exp(lpmf));
    if (j == k) break;
    lpmf += std::log(static_cast<double>(n - j)) - std::log(static_cast<double>(j + 1)) + log_odds;
  }
  return std::min(acc.sum, 1.0);
}

double binomial_upper_tail(std::int64_t k, std::int64_t n, double p) {
  detail::check_binomial(k, n, p);
  if (p == 0.0) return 0.0;
  if (p == 1.0) return k < n ? 1.0 : 0.0;
  if (k == n) return 0.0;
  const double log_odds = std::log(p) - std::log1p(-p);
  const double mean = static_cast<double>(n) * p;
  double lpmf = log_binomial_pmf(k + 1, n, p);
  KahanSum acc;
  for (std::int64_t j = k + 1;; ++j) {
    acc.add(lpmf < -745.0 ? 0.0 : std::exp(lpmf));
    if (j == n) break;
    // pmf is decreasing past the mode; once it underflows the rest is dust
    if (static_cast<double>(j) > mean && lpmf < -760.0) break;
    lpmf += std::log(static_cast<double>(n - j)) - std::log(static_cast<double>(j + 1)) + log_odds;
  }
  return std::min(acc.sum, 1.0);
}

}  // namespace citenorm
