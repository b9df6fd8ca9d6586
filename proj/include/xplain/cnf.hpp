#pragma once

#include "xplain/literal.hpp"
#include "xplain/tree.hpp"
#include "xplain/validation.hpp"

#include <optional>
#include <vector>

namespace xplain {

/// Disjunction of literals. An empty clause is the constant false.
using Clause = std::vector<Literal>;

/// Conjunction of clauses over a feature space.
class CnfFormula {
 public:
  struct Unchecked {};

  /// Rejects malformed literals and tautological clauses (ValidationError).
  CnfFormula(SpacePtr space, std::vector<Clause> clauses);
  CnfFormula(Unchecked, SpacePtr space, std::vector<Clause> clauses);

  /// Builds a formula after dropping tautological clauses and merging the
  /// literals of each clause per feature.
  static CnfFormula normalized(SpacePtr space, const std::vector<Clause>& clauses);

  const SpacePtr& space_ptr() const noexcept { return space_; }
  const FeatureSpace& space() const noexcept { return *space_; }
  const std::vector<Clause>& clauses() const noexcept { return clauses_; }

  ClassLabel evaluate(const Entity& e) const;
  bool tests_feature(FeatureIndex f) const;
  std::vector<Rational> thresholds(FeatureIndex f) const;
  std::size_t literal_count() const;

 private:
  SpacePtr space_;
  std::vector<Clause> clauses_;
};

bool holds(const Clause& clause, const Entity& e);

/// At most one `in` literal per categorical feature and one `<=` plus one `>`
/// per numerical feature, in order of first appearance. Empty optional when
/// the clause is true on every entity.
std::optional<Clause> normalize_clause(const FeatureSpace& space, const Clause& clause);

inline bool tautological(const FeatureSpace& space, const Clause& clause) {
  return !normalize_clause(space, clause).has_value();
}

ValidationReport validate(const CnfFormula& cnf);

/// Satisfied clauses disappear, falsified literals are deleted (possibly
/// leaving an empty clause).
CnfFormula condition(const CnfFormula& cnf, FeatureIndex feature, const Value& value);

/// (c1 and fresh) or (c2 and not fresh), clause by clause.
CnfFormula disjoint_disjunction(const CnfFormula& c1, const CnfFormula& c2, FeatureIndex fresh);

/// Equivalent boolean decision tree by case splitting on the first undecided
/// literal. Throws BudgetExceeded past `max_nodes`.
DecisionTree cnf_to_tree(const CnfFormula& cnf, std::size_t max_nodes = 1u << 22);

}  // namespace xplain
