#pragma once

#include "xplain/feature_space.hpp"
#include "xplain/tree.hpp"
#include "xplain/validation.hpp"

#include <vector>

namespace xplain {

struct FbddNode {
  bool leaf = true;
  ClassLabel label = 0;
  FeatureIndex feature = 0;
  NodeRef left = 0;   ///< taken when the feature has its first category ("0")
  NodeRef right = 0;  ///< taken on the second category ("1")

  static FbddNode make_leaf(ClassLabel label) { return FbddNode{true, label, 0, 0, 0}; }
  static FbddNode make_internal(FeatureIndex f, NodeRef left, NodeRef right) {
    return FbddNode{false, 0, f, left, right};
  }
};

/// Free binary decision diagram: a rooted DAG over binary features in which
/// no feature repeats along any directed path.
class Fbdd {
 public:
  struct Unchecked {};

  /// Throws ValidationError (including read-once violations).
  Fbdd(SpacePtr space, std::vector<FbddNode> nodes, NodeRef root);
  Fbdd(Unchecked, SpacePtr space, std::vector<FbddNode> nodes, NodeRef root);

  const SpacePtr& space_ptr() const noexcept { return space_; }
  const FeatureSpace& space() const noexcept { return *space_; }
  const std::vector<FbddNode>& nodes() const noexcept { return nodes_; }
  const FbddNode& node(NodeRef v) const { return nodes_[v]; }
  NodeRef root() const noexcept { return root_; }
  std::size_t size() const noexcept { return nodes_.size(); }

  ClassLabel evaluate(const Entity& e) const;
  bool tests_feature(FeatureIndex f) const;

  /// Nodes in an order where every node precedes its children.
  /// Precondition: acyclic.
  std::vector<NodeRef> topological_order() const;

 private:
  SpacePtr space_;
  std::vector<FbddNode> nodes_;
  NodeRef root_ = 0;
};

ValidationReport validate(const Fbdd& d);

Fbdd condition(const Fbdd& d, FeatureIndex feature, const Value& value);
Fbdd negate(const Fbdd& d);
/// New root testing `fresh`: d1 when fresh = 1, d2 otherwise.
Fbdd disjoint_disjunction(const Fbdd& d1, const Fbdd& d2, FeatureIndex fresh);

/// Unfolds the DAG into an equivalent decision tree. Throws BudgetExceeded
/// when the tree would exceed `max_nodes`.
DecisionTree fbdd_to_tree(const Fbdd& d, std::size_t max_nodes = 1u << 22);

}  // namespace xplain
