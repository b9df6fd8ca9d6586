#include "xplain/fbdd.hpp"

#include "graph.hpp"
#include "xplain/error.hpp"

#include <unordered_map>

namespace xplain {

namespace {

detail::GraphShape shape_of(const std::vector<FbddNode>& nodes, NodeRef root) {
  return detail::analyze_graph(nodes.size(), root, [&](std::uint32_t v, std::vector<std::uint32_t>& out) {
    if (!nodes[v].leaf) {
      out.push_back(nodes[v].left);
      out.push_back(nodes[v].right);
    }
  });
}

// Copies the part of `d` reachable from `v` into `out`, bypassing nodes that
// test `feature` (when given) according to `value`.
class Rebuilder {
 public:
  Rebuilder(const Fbdd& d, std::vector<FbddNode>& out, std::optional<FeatureIndex> feature, CategoryIndex value,
            bool flip)
      : d_(d), out_(out), feature_(feature), value_(value), flip_(flip) {}

  NodeRef copy(NodeRef v) {
    while (!d_.node(v).leaf && feature_ && d_.node(v).feature == *feature_) {
      v = value_ == 0 ? d_.node(v).left : d_.node(v).right;
    }
    if (auto it = memo_.find(v); it != memo_.end()) return it->second;
    FbddNode n = d_.node(v);
    if (n.leaf) {
      if (flip_) n.label = 1 - n.label;
    } else {
      n.left = copy(n.left);
      n.right = copy(n.right);
    }
    out_.push_back(n);
    auto ref = static_cast<NodeRef>(out_.size() - 1);
    memo_.emplace(v, ref);
    return ref;
  }

 private:
  const Fbdd& d_;
  std::vector<FbddNode>& out_;
  std::optional<FeatureIndex> feature_;
  CategoryIndex value_;
  bool flip_;
  std::unordered_map<NodeRef, NodeRef> memo_;
};

}  // namespace

Fbdd::Fbdd(SpacePtr space, std::vector<FbddNode> nodes, NodeRef root)
    : Fbdd(Unchecked{}, std::move(space), std::move(nodes), root) {
  validate(*this).raise_if_failed("invalid FBDD");
}

Fbdd::Fbdd(Unchecked, SpacePtr space, std::vector<FbddNode> nodes, NodeRef root)
    : space_(std::move(space)), nodes_(std::move(nodes)), root_(root) {
  if (!space_) fail(ErrorKind::InvalidArgument, "FBDD without a feature space");
  const auto n = nodes_.size();
  if (root_ >= n) fail(ErrorKind::ValidationError, "FBDD root out of range");
  for (const auto& node : nodes_) {
    if (!node.leaf && (node.left >= n || node.right >= n || node.feature >= space_->size())) {
      fail(ErrorKind::ValidationError, "FBDD reference out of range");
    }
  }
}

ClassLabel Fbdd::evaluate(const Entity& e) const {
  if (e.size() != space_->size()) fail(ErrorKind::MissingFeature, "entity does not cover the feature space");
  const FbddNode* node = &nodes_[root_];
  while (!node->leaf) node = &nodes_[e.category(node->feature) == 0 ? node->left : node->right];
  return node->label;
}

bool Fbdd::tests_feature(FeatureIndex f) const {
  for (const auto& n : nodes_) {
    if (!n.leaf && n.feature == f) return true;
  }
  return false;
}

std::vector<NodeRef> Fbdd::topological_order() const {
  auto shape = shape_of(nodes_, root_);
  if (!shape.acyclic()) fail(ErrorKind::ValidationError, "FBDD contains a cycle");
  return shape.topological;
}

ValidationReport validate(const Fbdd& d) {
  ValidationReport report;
  const auto& nodes = d.nodes();
  const auto& space = d.space();
  for (FeatureIndex f = 0; f < space.size(); ++f) {
    if (!space[f].binary()) report.add("non-binary-feature", "feature '" + space[f].id + "' is not binary");
  }
  auto shape = shape_of(nodes, d.root());
  detail::report_shape(shape, d.root(), false, report);
  for (std::size_t v = 0; v < nodes.size(); ++v) {
    if (nodes[v].leaf && nodes[v].label > 1) report.add("leaf-label", "leaf " + std::to_string(v) + " is not 0/1");
  }
  if (!shape.acyclic()) return report;

  // below[v]: features tested strictly underneath v.
  std::vector<FeatureSet> below(nodes.size(), FeatureSet(space.size()));
  for (auto it = shape.topological.rbegin(); it != shape.topological.rend(); ++it) {
    const auto& n = nodes[*it];
    if (n.leaf) continue;
    for (auto child : {n.left, n.right}) {
      below[*it] |= below[child];
      if (!nodes[child].leaf) below[*it].set(nodes[child].feature);
    }
    if (below[*it].test(n.feature)) {
      report.add("read-once", "feature '" + space[n.feature].id + "' repeats below node " + std::to_string(*it));
    }
  }
  return report;
}

Fbdd condition(const Fbdd& d, FeatureIndex feature, const Value& value) {
  check_value(d.space(), feature, value);
  std::vector<FbddNode> out;
  Rebuilder rb(d, out, feature, std::get<CategoryIndex>(value), false);
  NodeRef root = rb.copy(d.root());
  return Fbdd(Fbdd::Unchecked{}, d.space_ptr(), std::move(out), root);
}

Fbdd negate(const Fbdd& d) {
  std::vector<FbddNode> out;
  Rebuilder rb(d, out, std::nullopt, 0, true);
  NodeRef root = rb.copy(d.root());
  return Fbdd(Fbdd::Unchecked{}, d.space_ptr(), std::move(out), root);
}

Fbdd disjoint_disjunction(const Fbdd& d1, const Fbdd& d2, FeatureIndex fresh) {
  if (!same_space(d1.space_ptr(), d2.space_ptr())) fail(ErrorKind::FeatureSpaceMismatch, "disjunction over different spaces");
  const auto& space = d1.space();
  if (fresh >= space.size() || !space[fresh].binary()) {
    fail(ErrorKind::FeatureNotFresh, "the selector must be a binary categorical feature of the space");
  }
  if (d1.tests_feature(fresh) || d2.tests_feature(fresh)) {
    fail(ErrorKind::FeatureNotFresh, "feature '" + space[fresh].id + "' is used by an operand");
  }
  std::vector<FbddNode> out;
  NodeRef r1 = Rebuilder(d1, out, std::nullopt, 0, false).copy(d1.root());
  NodeRef r2 = Rebuilder(d2, out, std::nullopt, 0, false).copy(d2.root());
  out.push_back(FbddNode::make_internal(fresh, r2, r1));
  const auto root = static_cast<NodeRef>(out.size() - 1);
  return Fbdd(Fbdd::Unchecked{}, d1.space_ptr(), std::move(out), root);
}

DecisionTree fbdd_to_tree(const Fbdd& d, std::size_t max_nodes) {
  TreeBuilder out;
  auto rec = [&](auto&& self, NodeRef v) -> NodeRef {
    if (out.size() >= max_nodes) fail(ErrorKind::BudgetExceeded, "unfolding the FBDD exceeds the node budget");
    const auto& n = d.node(v);
    if (n.leaf) return out.leaf(n.label);
    NodeRef l = self(self, n.left);
    NodeRef r = self(self, n.right);
    return out.internal(Literal::in(n.feature, make_set(2, {0})), l, r);
  };
  NodeRef root = rec(rec, d.root());
  return std::move(out).finish(d.space_ptr(), 2, root);
}

}  // namespace xplain
