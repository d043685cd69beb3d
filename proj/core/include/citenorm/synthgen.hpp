#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "citenorm/corpus.hpp"
#include "citenorm/errors.hpp"

namespace citenorm {

struct FieldSpec {
  std::string field_id;
  std::int64_t n = 0;         // publications in the field
  double c0 = 0.0;            // target mean citations
  double sigma = 0.0;         // lognormal shape
  double aging_theta = 0.75;  // geometric decay of citing-year offsets
};

enum class GeneratorModel { universal, poisson_lognormal, heterogeneous };

struct GeneratorConfig {
  GeneratorModel model = GeneratorModel::universal;
  std::vector<FieldSpec> field_specs;
  int publication_year = 1999;
  int horizon_years = 10;
  std::uint64_t seed = 1;
  /// Global lognormal shape. The universal and poisson_lognormal models use
  /// it for every field (falling back to the specs' sigma when those all
  /// agree); the heterogeneous model reads per-field sigmas and rejects a
  /// global value.
  std::optional<double> sigma;
};

struct FieldLabel {
  std::string field_id;
  std::string model;  // per-field generating distribution tag
  double c0 = 0.0;
  double sigma = 0.0;
  std::int64_t n = 0;
};

struct SyntheticCorpus {
  std::vector<Publication> publications;  // field_id order, then index
  CitationMap citations;
  std::vector<FieldLabel> labels;       // field_id order
  std::optional<double> resolved_sigma;  // set for the global-sigma models
};

class sigma_unattainable_error : public validation_error {
 public:
  sigma_unattainable_error(const std::string& what, double bound_)
      : validation_error(what), bound(bound_) {}

  double bound;
};

/// Largest quantile value a mean-1 lognormal can reach at probability level
/// `prob`: exp(z^2 / 2), z the standard normal quantile.
double max_attainable_quantile(double prob);

/// Shape sigma of the mean-1 lognormal whose `prob` quantile equals
/// `target_q`: a root of exp(z*sigma - sigma^2/2) = target_q. Returns the
/// smaller root unless larger_root is set. Throws sigma_unattainable_error
/// (carrying the bound) when target_q exceeds max_attainable_quantile.
double lognormal_sigma_for_quantile(double target_q, double prob, bool larger_root = false);

/// Parses the field-spec CSV (header `field_id,n,c0,sigma,aging_theta`).
std::vector<FieldSpec> parse_field_specs(std::istream& in);

/// Labels CSV, header `field_id,model,c0,sigma,n`.
void write_labels(std::ostream& out, std::span<const FieldLabel> labels);

/// Seeded corpus generation. Identical configs give identical corpora; RNG
/// streams are keyed per field, so the output does not depend on generation
/// order. Citing years spread over [publication_year, +horizon) by truncated
/// geometric offsets with the field's aging_theta.
SyntheticCorpus generate(const GeneratorConfig& config);

SyntheticCorpus generate_universal(GeneratorConfig config);
SyntheticCorpus generate_poisson_lognormal(GeneratorConfig config);
SyntheticCorpus generate_heterogeneous(GeneratorConfig config);

}  // namespace citenorm
