#pragma once

#include "xplain/literal.hpp"
#include "xplain/validation.hpp"

#include <vector>

namespace xplain {

using NodeRef = std::uint32_t;

struct TreeNode {
  bool leaf = true;
  ClassLabel label = 0;
  Literal test;  ///< `In` or `Leq`; the left child is taken when it holds
  NodeRef left = 0;
  NodeRef right = 0;

  static TreeNode make_leaf(ClassLabel label) { return TreeNode{true, label, {}, 0, 0}; }
  static TreeNode make_internal(Literal test, NodeRef left, NodeRef right) {
    return TreeNode{false, 0, std::move(test), left, right};
  }
};

/// k-class decision tree over categorical and numerical features, stored as
/// an arena of nodes.
class DecisionTree {
 public:
  struct Unchecked {};

  /// Full structural validation; throws ValidationError.
  DecisionTree(SpacePtr space, ClassLabel class_count, std::vector<TreeNode> nodes, NodeRef root);
  /// Only checks that child references are in range. Used by the loader so that
  /// `validate` can report everything wrong with the input, and by operations
  /// whose output is valid by construction.
  DecisionTree(Unchecked, SpacePtr space, ClassLabel class_count, std::vector<TreeNode> nodes, NodeRef root);

  static DecisionTree constant(SpacePtr space, ClassLabel class_count, ClassLabel label);

  const SpacePtr& space_ptr() const noexcept { return space_; }
  const FeatureSpace& space() const noexcept { return *space_; }
  ClassLabel class_count() const noexcept { return class_count_; }
  bool boolean() const noexcept { return class_count_ == 2; }
  const std::vector<TreeNode>& nodes() const noexcept { return nodes_; }
  const TreeNode& node(NodeRef v) const { return nodes_[v]; }
  NodeRef root() const noexcept { return root_; }
  std::size_t size() const noexcept { return nodes_.size(); }

  ClassLabel evaluate(const Entity& e) const;
  /// Label of the leaf reached from `v`.
  ClassLabel evaluate_from(NodeRef v, const Entity& e) const;
  /// Nodes visited by e, root first.
  std::vector<NodeRef> path(const Entity& e) const;

  bool tests_feature(FeatureIndex f) const;
  std::size_t leaf_count() const;
  std::size_t leaf_count(ClassLabel label) const;
  /// Sorted distinct thresholds compared against a numerical feature.
  std::vector<Rational> thresholds(FeatureIndex f) const;

 private:
  SpacePtr space_;
  ClassLabel class_count_ = 2;
  std::vector<TreeNode> nodes_;
  NodeRef root_ = 0;
};

/// Appends nodes bottom-up; children are always created before parents.
class TreeBuilder {
 public:
  NodeRef leaf(ClassLabel label) {
    nodes_.push_back(TreeNode::make_leaf(label));
    return static_cast<NodeRef>(nodes_.size() - 1);
  }
  NodeRef internal(Literal test, NodeRef left, NodeRef right) {
    nodes_.push_back(TreeNode::make_internal(std::move(test), left, right));
    return static_cast<NodeRef>(nodes_.size() - 1);
  }
  const TreeNode& operator[](NodeRef v) const { return nodes_[v]; }
  std::size_t size() const noexcept { return nodes_.size(); }

  DecisionTree finish(SpacePtr space, ClassLabel class_count, NodeRef root) &&;

 private:
  std::vector<TreeNode> nodes_;
};

ValidationReport validate(const DecisionTree& tree);

/// T_{x=b}: every node testing x is replaced by the child b selects.
DecisionTree condition(const DecisionTree& tree, FeatureIndex feature, const Value& value);

/// Flips leaf labels. Throws NotBoolean.
DecisionTree negate(const DecisionTree& tree);

/// T^c, the indicator of class c. Throws BadClass.
DecisionTree booleanize(const DecisionTree& tree, ClassLabel target);

/// Pointwise conjunction: a copy of t2 is grafted onto every 1-leaf of t1.
/// Tests already decided by the path above are bypassed, so branches with
/// contradictory path constraints never appear. Throws NotBoolean,
/// FeatureSpaceMismatch.
DecisionTree conjoin(const DecisionTree& t1, const DecisionTree& t2);

/// (t1 and fresh) or (t2 and not fresh) as a new root testing `fresh`.
/// "fresh = 1" is the second category of the binary feature.
/// Throws FeatureNotFresh, NotBoolean, FeatureSpaceMismatch.
DecisionTree disjoint_disjunction(const DecisionTree& t1, const DecisionTree& t2, FeatureIndex fresh);

/// Copy of `tree` restricted to the entities of `region`: decided tests are
/// bypassed and sibling leaves with equal labels merge.
DecisionTree restrict_to_region(const DecisionTree& tree, const Region& region);

}  // namespace xplain
