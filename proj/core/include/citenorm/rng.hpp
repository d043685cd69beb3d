#pragma once

#include <cstdint>
#include <string_view>

namespace citenorm {

/// Counter-based random stream keyed on (seed, stream id). Output i depends
/// only on the key and i, so one stream per field gives the same draws no
/// matter how generation is scheduled across fields.
class StreamRng {
 public:
  StreamRng(std::uint64_t seed, std::string_view stream_id);

  std::uint64_t next_u64();

  /// Uniform on the open interval (0, 1).
  double next_unit();

  /// Standard normal via the inverse CDF.
  double next_normal();

  /// Lognormal with mean exactly 1: exp(sigma * Z - sigma^2 / 2).
  double next_lognormal_mean1(double sigma);

  std::int64_t next_poisson(double lambda);

  /// Offset in [0, horizon) with P(d) proportional to theta^d.
  int next_truncated_geometric(double theta, int horizon);

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace citenorm
