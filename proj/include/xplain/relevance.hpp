#pragma once

#include "xplain/reasons.hpp"

#include <optional>
#include <vector>

namespace xplain {

struct RelevanceAnswer {
  FeatureIndex feature = 0;
  bool relevant = false;
  /// A sufficient reason containing the feature, when relevant.
  std::optional<FeatureSet> witness;
};

/// The queries below take a tree (booleanized on t(e)) or a CNF that accepts e.

RelevanceAnswer is_relevant(const Model& m, const Entity& e, FeatureIndex x);
FeatureSet all_relevant(const Model& m, const Entity& e);

/// A sufficient reason containing every feature of `y`, if one exists.
std::optional<FeatureSet> sufficient_reason_containing(const Model& m, const Entity& e, const FeatureSet& y,
                                                       std::uint64_t budget = kDefaultSearchBudget);

struct CountOrMore {
  std::vector<FeatureSet> reasons;
  /// True when k reasons were found, so the true count may be larger.
  bool at_least_k = false;
};

/// Up to k distinct sufficient reasons containing x.
CountOrMore count_sufficient_reasons_with(const Model& m, const Entity& e, FeatureIndex x, std::size_t k,
                                          std::uint64_t budget = kDefaultSearchBudget);

/// Up to `limit` sufficient reasons, collected feature by feature with the
/// witness search and sorted by size. `at_least_k` means the limit was reached.
CountOrMore sufficient_reasons(const Model& m, const Entity& e, std::size_t limit,
                               std::uint64_t budget = kDefaultSearchBudget);

}  // namespace xplain
