#pragma once

#include "xplain/hypergraph.hpp"
#include "xplain/model.hpp"

#include <cstdint>
#include <vector>

namespace xplain {

/// Limits for the exhaustive searches. Exceeding either throws BudgetExceeded.
struct OracleBudget {
  std::uint64_t max_entities = 1u << 12;
  std::uint64_t max_subsets = 1u << 16;
};

/// Every inclusion-minimal reason, checked against all complementary
/// assignments. Numerical features range over one point per threshold cell.
std::vector<FeatureSet> enumerate_sufficient_reasons(const Model& m, const Entity& e, const OracleBudget& budget = {});

struct OracleExplanation {
  std::vector<FeatureSet> reasons;
  FeatureSet necessary;  ///< intersection of the reasons
  FeatureSet relevant;   ///< union of the reasons
};

OracleExplanation explain_by_oracle(const Model& m, const Entity& e, const OracleBudget& budget = {});

bool brute_necessary(const Model& m, const Entity& e, FeatureIndex x, const OracleBudget& budget = {});
bool brute_relevant(const Model& m, const Entity& e, FeatureIndex x, const OracleBudget& budget = {});

/// Exhaustive search for an entity whose prediction changes with x.
bool brute_useful(const Model& m, FeatureIndex x, const OracleBudget& budget = {});

/// Number of entities for which x is necessary. Categorical spaces only.
Count brute_score(const Model& m, FeatureIndex x, const OracleBudget& budget = {});

std::vector<NodeSet> enumerate_minimal_hitting_sets(const Hypergraph& h, const OracleBudget& budget = {});

}  // namespace xplain
