#pragma once

#include "xplain/hypergraph.hpp"
#include "xplain/model.hpp"

#include <utility>
#include <vector>

namespace xplain {

/// One clause per consistent root-to-0-leaf path, the negation of the path's
/// tests. Throws NotBoolean.
CnfFormula tree_to_path_cnf(const DecisionTree& t);

/// C^e: every clause keeps only the literals that e satisfies.
struct RestrictedCnf {
  std::vector<Clause> clauses;
  /// Indices of clauses left empty, i.e. falsified by e.
  std::vector<std::size_t> empty_clauses;

  bool accepts() const noexcept { return empty_clauses.empty(); }
};

RestrictedCnf restrict_cnf_to_entity(const CnfFormula& cnf, const Entity& e);

/// Hypergraph over features whose minimal hitting sets are the sufficient
/// reasons for the entity.
struct ReasonHypergraph {
  Hypergraph base;
  /// The clauses the edges came from.
  CnfFormula cnf;
  /// For each edge, every clause index whose restriction has that variable set.
  std::vector<std::vector<std::size_t>> provenance;
};

/// k-class trees are booleanized on t(e) first.
ReasonHypergraph reason_hypergraph(const DecisionTree& t, const Entity& e);
/// Throws EntityRejected when some clause is falsified by e.
ReasonHypergraph reason_hypergraph(const CnfFormula& cnf, const Entity& e);
/// Trees and CNFs only; throws UnsupportedModel otherwise.
ReasonHypergraph reason_hypergraph(const Model& m, const Entity& e);

/// Whether fixing `s` to e's values forces the class of e.
bool is_reason(const Model& m, const Entity& e, const FeatureSet& s);
bool is_sufficient_reason(const Model& m, const Entity& e, const FeatureSet& s);

/// Boolean tree accepting exactly `accepted`. Throws NonCategoricalFeature,
/// DuplicateEntity.
DecisionTree sparse_model_to_tree(const std::vector<Entity>& accepted, const SpacePtr& space);

/// A tree over binary features named after the nodes, and the all-ones
/// entity, whose sufficient reasons are the minimal hitting sets of `h`.
std::pair<DecisionTree, Entity> hypergraph_to_tree_instance(const Hypergraph& h);

}  // namespace xplain
