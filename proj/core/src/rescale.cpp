#include "citenorm/rescale.hpp"

#include <cstdint>

#include "citenorm/errors.hpp"

namespace citenorm {

double group_mean(const FieldYearGroup& group) {
  if (group.members.empty())
    throw degenerate_error("empty group (field " + group.field_id + ", year " +
                           std::to_string(group.year) + ")");
  std::int64_t total = 0;
  for (const auto& member : group.members) total += member.citations;
  return static_cast<double>(total) / static_cast<double>(group.members.size());
}

RescaledScoreSet rescale(const FieldYearGroup& group) {
  const double c0 = group_mean(group);
  if (c0 == 0.0)
    throw degenerate_error("all-uncited group: rescaling undefined (field " + group.field_id +
                           ", year " + std::to_string(group.year) + ")");
  RescaledScoreSet set;
  set.field_id = group.field_id;
  set.year = group.year;
  set.c0 = c0;
  set.scores.reserve(group.members.size());
  for (const auto& member : group.members)
    set.scores.push_back({member.pub_id, static_cast<double>(member.citations) / c0});
  return set;
}

std::vector<RescaledScoreSet> rescale_all(std::span<const FieldYearGroup> groups) {
  std::vector<RescaledScoreSet> sets;
  sets.reserve(groups.size());
  for (const auto& group : groups) sets.push_back(rescale(group));
  return sets;
}

PooledScores pool(std::span<const RescaledScoreSet> sets) {
  PooledScores pooled;
  std::size_t total = 0;
  for (const auto& set : sets) total += set.scores.size();
  pooled.scores.reserve(total);
  for (const auto& set : sets)
    for (const auto& entry : set.scores) pooled.scores.push_back(entry.score);
  return pooled;
}

}  // namespace citenorm
