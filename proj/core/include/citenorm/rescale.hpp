#pragma once

#include <span>
#include <string>
#include <vector>

#include "citenorm/corpus.hpp"

namespace citenorm {

struct ScoreEntry {
  std::string pub_id;
  double score = 0.0;  // citations / group mean

  bool operator==(const ScoreEntry&) const = default;
};

/// Rescaled citation scores of one field-year group. By construction the
/// scores average to 1 (within floating tolerance).
struct RescaledScoreSet {
  std::string field_id;
  int year = 0;
  double c0 = 0.0;  // group mean citations, the rescaling denominator
  std::vector<ScoreEntry> scores;
};

/// Scores of all retained groups taken together, one entry per
/// publication-field instance (multi-field publications appear once per
/// membership).
struct PooledScores {
  std::vector<double> scores;
};

/// Arithmetic mean of member citation counts; integer summation, so a single
/// rounding step. Throws degenerate_error on an empty group.
double group_mean(const FieldYearGroup& group);

/// Throws degenerate_error when the group mean is zero (all uncited).
RescaledScoreSet rescale(const FieldYearGroup& group);

std::vector<RescaledScoreSet> rescale_all(std::span<const FieldYearGroup> groups);

/// Concatenates scores in the given set order.
PooledScores pool(std::span<const RescaledScoreSet> sets);

}  // namespace citenorm
