#include "citenorm/rng.hpp"

#include <cmath>

#include <boost/math/special_functions/erf.hpp>

#include "citenorm/errors.hpp"

namespace citenorm {
namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

StreamRng::StreamRng(std::uint64_t seed, std::string_view stream_id)
    : key_(mix64(mix64(seed + kGolden) ^ fnv1a(stream_id))) {}

std::uint64_t StreamRng::next_u64() { return mix64(key_ + ++counter_ * kGolden); }

double StreamRng::next_unit() {
  // 53-bit mantissa, offset half a step so results stay strictly inside (0, 1)
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double StreamRng::next_normal() {
  constexpr double kSqrt2 = 1.4142135623730951;
  return kSqrt2 * boost::math::erf_inv(2.0 * next_unit() - 1.0);
}

double StreamRng::next_lognormal_mean1(double sigma) {
  if (!(sigma > 0.0)) throw validation_error("lognormal sigma must be positive");
  return std::exp(sigma * next_normal() - 0.5 * sigma * sigma);
}

std::int64_t StreamRng::next_poisson(double lambda) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda))
    throw validation_error("poisson mean must be finite and non-negative");
  std::int64_t total = 0;
  // Split large means so exp(-lambda) stays representable.
  while (lambda > 500.0) {
    double chunk = 500.0;
    double limit = std::exp(-chunk);
    double prod = 1.0;
    std::int64_t k = 0;
    do {
      ++k;
      prod *= next_unit();
    } while (prod > limit);
    total += k - 1;
    lambda -= chunk;
  }
  double limit = std::exp(-lambda);
  double prod = 1.0;
  std::int64_t k = 0;
  do {
    ++k;
    prod *= next_unit();
  } while (prod > limit);
  return total + k - 1;
}

int StreamRng::next_truncated_geometric(double theta, int horizon) {
  if (!(theta > 0.0 && theta < 1.0)) throw validation_error("theta must lie in (0, 1)");
  if (horizon < 1) throw validation_error("horizon must be at least 1");
  if (horizon == 1) return 0;
  double tail = 1.0 - std::pow(theta, horizon);
  double x = std::log1p(-next_unit() * tail) / std::log(theta);
  int d = static_cast<int>(std::ceil(x)) - 1;
  if (d < 0) d = 0;
  if (d >= horizon) d = horizon - 1;
  return d;
}

}  // namespace citenorm
