#include "xplain/tree.hpp"

#include "graph.hpp"
#include "xplain/error.hpp"

#include <algorithm>

namespace xplain {

void ValidationReport::raise_if_failed(const std::string& what) const {
  if (ok()) return;
  std::string message = what + ": " + violations.front().message;
  if (violations.size() > 1) message += " (and " + std::to_string(violations.size() - 1) + " more)";
  fail(ErrorKind::ValidationError, message);
}

namespace {

void check_refs(const std::vector<TreeNode>& nodes, NodeRef root) {
  const auto n = nodes.size();
  if (root >= n) fail(ErrorKind::ValidationError, "tree root out of range");
  for (const auto& node : nodes) {
    if (!node.leaf && (node.left >= n || node.right >= n)) {
      fail(ErrorKind::ValidationError, "tree child reference out of range");
    }
  }
}

void require_boolean(const DecisionTree& t) {
  if (!t.boolean()) fail(ErrorKind::NotBoolean, "expected a 2-class tree");
}

// Depth-first copy under a region, bypassing decided tests.
class RegionCopier {
 public:
  RegionCopier(const DecisionTree& tree, TreeBuilder& out) : tree_(tree), out_(out) {}

  NodeRef copy(NodeRef v, Region& region) {
    const TreeNode* node = &tree_.node(v);
    while (!node->leaf) {
      Truth t = region.status(node->test);
      if (t == Truth::Open) break;
      v = t == Truth::True ? node->left : node->right;
      node = &tree_.node(v);
    }
    if (node->leaf) return out_.leaf(node->label);
    return split(*node, region, [&](NodeRef child, Region& r) { return copy(child, r); });
  }

  // Builds an internal node for `node.test`, producing each side with `rec`
  // under the restricted region. Equal sibling leaves collapse.
  template <class Rec>
  NodeRef split(const TreeNode& node, Region& region, Rec&& rec) {
    const auto f = node.test.feature;
    auto slot = region.save(f);
    region.restrict(node.test, true);
    NodeRef l = rec(node.left, region);
    region.restore(f, slot);
    slot = region.save(f);
    region.restrict(node.test, false);
    NodeRef r = rec(node.right, region);
    region.restore(f, std::move(slot));
    if (out_[l].leaf && out_[r].leaf && out_[l].label == out_[r].label) return l;
    return out_.internal(node.test, l, r);
  }

 private:
  const DecisionTree& tree_;
  TreeBuilder& out_;
};

}  // namespace

DecisionTree::DecisionTree(SpacePtr space, ClassLabel class_count, std::vector<TreeNode> nodes, NodeRef root)
    : DecisionTree(Unchecked{}, std::move(space), class_count, std::move(nodes), root) {
  validate(*this).raise_if_failed("invalid decision tree");
}

DecisionTree::DecisionTree(Unchecked, SpacePtr space, ClassLabel class_count, std::vector<TreeNode> nodes,
                           NodeRef root)
    : space_(std::move(space)), class_count_(class_count), nodes_(std::move(nodes)), root_(root) {
  if (!space_) fail(ErrorKind::InvalidArgument, "tree without a feature space");
  check_refs(nodes_, root_);
}

DecisionTree DecisionTree::constant(SpacePtr space, ClassLabel class_count, ClassLabel label) {
  return DecisionTree(std::move(space), class_count, {TreeNode::make_leaf(label)}, 0);
}

ClassLabel DecisionTree::evaluate(const Entity& e) const {
  if (e.size() != space_->size()) fail(ErrorKind::MissingFeature, "entity does not cover the feature space");
  return evaluate_from(root_, e);
}

ClassLabel DecisionTree::evaluate_from(NodeRef v, const Entity& e) const {
  const TreeNode* node = &nodes_[v];
  while (!node->leaf) node = &nodes_[node->test.holds(e) ? node->left : node->right];
  return node->label;
}

std::vector<NodeRef> DecisionTree::path(const Entity& e) const {
  std::vector<NodeRef> out{root_};
  while (!nodes_[out.back()].leaf) {
    const auto& node = nodes_[out.back()];
    out.push_back(node.test.holds(e) ? node.left : node.right);
  }
  return out;
}

bool DecisionTree::tests_feature(FeatureIndex f) const {
  return std::any_of(nodes_.begin(), nodes_.end(), [&](const TreeNode& n) { return !n.leaf && n.test.feature == f; });
}

std::size_t DecisionTree::leaf_count() const {
  return static_cast<std::size_t>(std::count_if(nodes_.begin(), nodes_.end(), [](const TreeNode& n) { return n.leaf; }));
}

std::size_t DecisionTree::leaf_count(ClassLabel label) const {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [&](const TreeNode& n) { return n.leaf && n.label == label; }));
}

std::vector<Rational> DecisionTree::thresholds(FeatureIndex f) const {
  std::vector<Rational> out;
  for (const auto& n : nodes_) {
    if (!n.leaf && n.test.feature == f && !n.test.categorical()) out.push_back(n.test.threshold);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

DecisionTree TreeBuilder::finish(SpacePtr space, ClassLabel class_count, NodeRef root) && {
  // Compact to the nodes reachable from root, renumbered in preorder.
  std::vector<TreeNode> compact;
  compact.reserve(nodes_.size());
  std::vector<std::pair<NodeRef, std::int64_t>> stack{{root, -1}};  // (old node, parent slot)
  while (!stack.empty()) {
    auto [v, parent] = stack.back();
    stack.pop_back();
    auto here = static_cast<NodeRef>(compact.size());
    if (parent >= 0) {
      auto p = static_cast<std::size_t>(parent >> 1);
      if (parent & 1) {
        compact[p].right = here;
      } else {
        compact[p].left = here;
      }
    }
    compact.push_back(nodes_[v]);
    if (!nodes_[v].leaf) {
      stack.emplace_back(nodes_[v].right, (static_cast<std::int64_t>(here) << 1) | 1);
      stack.emplace_back(nodes_[v].left, static_cast<std::int64_t>(here) << 1);
    }
  }
  return DecisionTree(DecisionTree::Unchecked{}, std::move(space), class_count, std::move(compact), 0);
}

ValidationReport validate(const DecisionTree& tree) {
  ValidationReport report;
  const auto& nodes = tree.nodes();
  if (tree.class_count() < 2) report.add("class-count", "a tree needs at least 2 classes");
  auto shape = detail::analyze_graph(nodes.size(), tree.root(), [&](std::uint32_t v, std::vector<std::uint32_t>& out) {
    if (!nodes[v].leaf) {
      out.push_back(nodes[v].left);
      out.push_back(nodes[v].right);
    }
  });
  detail::report_shape(shape, tree.root(), true, report);
  for (std::size_t v = 0; v < nodes.size(); ++v) {
    const auto& node = nodes[v];
    if (node.leaf) {
      if (node.label >= tree.class_count()) {
        report.add("leaf-label", "leaf " + std::to_string(v) + " has label " + std::to_string(node.label) +
                                     " >= " + std::to_string(tree.class_count()));
      }
      continue;
    }
    if (node.test.op != LiteralOp::In && node.test.op != LiteralOp::Leq) {
      report.add("test-kind", "node " + std::to_string(v) + " must test 'in' or '<='");
      continue;
    }
    if (auto problem = literal_problem(tree.space(), node.test)) {
      report.add(node.test.categorical() ? "test-set" : "threshold", "node " + std::to_string(v) + ": " + *problem);
    }
  }
  return report;
}

DecisionTree condition(const DecisionTree& tree, FeatureIndex feature, const Value& value) {
  check_value(tree.space(), feature, value);
  TreeBuilder out;
  auto rec = [&](auto&& self, NodeRef v) -> NodeRef {
    const TreeNode* node = &tree.node(v);
    while (!node->leaf && node->test.feature == feature) {
      v = node->test.holds(value) ? node->left : node->right;
      node = &tree.node(v);
    }
    if (node->leaf) return out.leaf(node->label);
    NodeRef l = self(self, node->left);
    NodeRef r = self(self, node->right);
    return out.internal(node->test, l, r);
  };
  NodeRef root = rec(rec, tree.root());
  return std::move(out).finish(tree.space_ptr(), tree.class_count(), root);
}

DecisionTree negate(const DecisionTree& tree) {
  require_boolean(tree);
  auto nodes = tree.nodes();
  for (auto& n : nodes) {
    if (n.leaf) n.label = 1 - n.label;
  }
  return DecisionTree(DecisionTree::Unchecked{}, tree.space_ptr(), 2, std::move(nodes), tree.root());
}

DecisionTree booleanize(const DecisionTree& tree, ClassLabel target) {
  if (target >= tree.class_count()) {
    fail(ErrorKind::BadClass, "class " + std::to_string(target) + " >= " + std::to_string(tree.class_count()));
  }
  auto nodes = tree.nodes();
  for (auto& n : nodes) {
    if (n.leaf) n.label = n.label == target ? 1 : 0;
  }
  return DecisionTree(DecisionTree::Unchecked{}, tree.space_ptr(), 2, std::move(nodes), tree.root());
}

DecisionTree restrict_to_region(const DecisionTree& tree, const Region& region) {
  TreeBuilder out;
  RegionCopier copier(tree, out);
  Region r = region;
  NodeRef root = copier.copy(tree.root(), r);
  return std::move(out).finish(tree.space_ptr(), tree.class_count(), root);
}

DecisionTree conjoin(const DecisionTree& t1, const DecisionTree& t2) {
  require_boolean(t1);
  require_boolean(t2);
  if (!same_space(t1.space_ptr(), t2.space_ptr())) fail(ErrorKind::FeatureSpaceMismatch, "conjoin over different spaces");

  TreeBuilder out;
  RegionCopier graft(t2, out);
  RegionCopier walk(t1, out);
  auto rec = [&](auto&& self, NodeRef v, Region& region) -> NodeRef {
    const TreeNode* node = &t1.node(v);
    while (!node->leaf) {
      Truth t = region.status(node->test);
      if (t == Truth::Open) break;
      v = t == Truth::True ? node->left : node->right;
      node = &t1.node(v);
    }
    if (node->leaf) return node->label == 1 ? graft.copy(t2.root(), region) : out.leaf(0);
    return walk.split(*node, region, [&](NodeRef child, Region& r) { return self(self, child, r); });
  };
  Region region(t1.space());
  NodeRef root = rec(rec, t1.root(), region);
  return std::move(out).finish(t1.space_ptr(), 2, root);
}

DecisionTree disjoint_disjunction(const DecisionTree& t1, const DecisionTree& t2, FeatureIndex fresh) {
  require_boolean(t1);
  require_boolean(t2);
  if (!same_space(t1.space_ptr(), t2.space_ptr())) fail(ErrorKind::FeatureSpaceMismatch, "disjunction over different spaces");
  const auto& space = t1.space();
  if (fresh >= space.size() || !space[fresh].binary()) {
    fail(ErrorKind::FeatureNotFresh, "the selector must be a binary categorical feature of the space");
  }
  if (t1.tests_feature(fresh) || t2.tests_feature(fresh)) {
    fail(ErrorKind::FeatureNotFresh, "feature '" + space[fresh].id + "' is used by an operand");
  }

  std::vector<TreeNode> nodes;
  nodes.reserve(t1.size() + t2.size() + 1);
  auto append = [&](const DecisionTree& t) {
    auto offset = static_cast<NodeRef>(nodes.size());
    for (auto n : t.nodes()) {
      if (!n.leaf) {
        n.left += offset;
        n.right += offset;
      }
      nodes.push_back(std::move(n));
    }
    return t.root() + offset;
  };
  NodeRef r1 = append(t1);
  NodeRef r2 = append(t2);
  nodes.push_back(TreeNode::make_internal(Literal::in(fresh, make_set(2, {1})), r1, r2));
  const auto root = static_cast<NodeRef>(nodes.size() - 1);
  return DecisionTree(DecisionTree::Unchecked{}, t1.space_ptr(), 2, std::move(nodes), root);
}

}  // namespace xplain
