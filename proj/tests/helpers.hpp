#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <unistd.h>

#include "citenorm/corpus.hpp"

namespace testutil {

inline citenorm::FieldYearGroup make_group(std::string field, int year,
                                           const std::vector<std::int64_t>& counts) {
  citenorm::FieldYearGroup group;
  group.field_id = std::move(field);
  group.year = year;
  int i = 0;
  for (auto count : counts)
    group.members.push_back({group.field_id + "-p" + std::to_string(i++), count});
  return group;
}

class ScopedTempDir {
 public:
  ScopedTempDir() {
    static std::atomic<int> counter{0};
    dir_ = std::filesystem::temp_directory_path() /
           ("citenorm-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::create_directories(dir_);
  }
  ~ScopedTempDir() {
    std::error_code ec;
    std::filesystem::remove_all(dir_, ec);
  }
  ScopedTempDir(const ScopedTempDir&) = delete;
  ScopedTempDir& operator=(const ScopedTempDir&) = delete;

  const std::filesystem::path& path() const { return dir_; }

 private:
  std::filesystem::path dir_;
};

// Two-sample Kolmogorov-Smirnov distance.
inline double ks_distance(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

// E[exp(-c0 * X)] for X mean-1 lognormal with shape sigma, via Simpson
// quadrature over the normal z-axis. Independent check of the generator's
// zero-citation mass under Poisson mixing.
inline double poisson_lognormal_zero_mass(double c0, double sigma) {
  const double lo = -12.0, hi = 12.0;
  const int steps = 24000;  // even
  const double h = (hi - lo) / steps;
  auto f = [&](double z) {
    const double x = std::exp(sigma * z - 0.5 * sigma * sigma);
    return std::exp(-0.5 * z * z) / std::sqrt(2.0 * M_PI) * std::exp(-c0 * x);
  };
  double sum = f(lo) + f(hi);
  for (int i = 1; i < steps; ++i) sum += f(lo + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  return sum * h / 3.0;
}

}  // namespace testutil
