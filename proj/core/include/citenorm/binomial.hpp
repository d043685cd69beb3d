#pragma once

#include <cmath>
#include <cstdint>

namespace citenorm {

namespace detail {
void check_binomial(std::int64_t k, std::int64_t n, double p);
}

/// log P(X = k) for X ~ Binomial(n, p); -inf where the mass is zero.
double log_binomial_pmf(std::int64_t k, std::int64_t n, double p);

double binomial_pmf(std::int64_t k, std::int64_t n, double p);

/// P(X <= k). Lower-tail sum of log-space pmf terms with compensated
/// accumulation, so it is monotone in k; absolute error stays within
/// 1e-10 up to n = 1e6.
double binomial_cdf(std::int64_t k, std::int64_t n, double p);

/// P(X > k), summed directly over the upper tail (no 1 - cdf cancellation).
double binomial_upper_tail(std::int64_t k, std::int64_t n, double p);

/// Calls fn(k, pmf) for k = 0..n, walking the pmf with a log-space recurrence.
template <typename Fn>
void for_each_binomial_pmf(std::int64_t n, double p, Fn&& fn) {
  detail::check_binomial(0, n, p);
  if (p == 0.0 || p == 1.0) {
    const std::int64_t spike = p == 0.0 ? 0 : n;
    for (std::int64_t k = 0; k <= n; ++k) fn(k, k == spike ? 1.0 : 0.0);
    return;
  }
  const double log_odds = std::log(p) - std::log1p(-p);
  double lpmf = static_cast<double>(n) * std::log1p(-p);
  for (std::int64_t k = 0;; ++k) {
    fn(k, lpmf < -745.0 ? 0.0 : std::exp(lpmf));
    if (k == n) break;
    lpmf += std::log(static_cast<double>(n - k)) - std::log(static_cast<double>(k + 1)) + log_odds;
  }
}

}  // namespace citenorm
