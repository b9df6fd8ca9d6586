#pragma once

#include "xplain/model.hpp"

#include <vector>

namespace xplain {

/// Number of entities a boolean tree over a categorical space accepts.
/// Throws NotBoolean, NonCategoricalFeature.
Count model_count(const DecisionTree& t);

/// Whether some entity reaches a 1-leaf. Works on numerical features too.
bool satisfiable(const DecisionTree& t);

/// Pointwise equality over all entities. Trees may have any class count;
/// FBDDs and CNFs are converted to trees first. Throws FeatureSpaceMismatch.
bool equivalent(const Model& m1, const Model& m2);

/// Whether conditioning on two different values of x gives inequivalent
/// models.
bool is_useful(const Model& m, FeatureIndex x);

struct UsefulnessScore {
  FeatureIndex feature = 0;
  /// Entities for which x is necessary.
  Count necessary_count;
  Count total_entities;
};

/// Categorical spaces only; throws NonCategoricalFeature.
UsefulnessScore usefulness_score(const DecisionTree& t, FeatureIndex x);

struct ScoreTable {
  std::vector<UsefulnessScore> scores;  ///< in feature order
  std::vector<FeatureIndex> ranking;    ///< descending score, ties by feature order
};

ScoreTable score_all(const DecisionTree& t);

/// Descending by necessary count, ties broken by ascending feature index.
std::vector<FeatureIndex> rank_scores(const std::vector<UsefulnessScore>& scores);

}  // namespace xplain
