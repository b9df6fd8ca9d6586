#include "xplain/reasons.hpp"

#include "xplain/error.hpp"

#include <map>

namespace xplain {

namespace {

void check_feature_set(const FeatureSpace& space, const FeatureSet& s) {
  if (s.size() != space.size()) fail(ErrorKind::UnknownFeature, "feature set does not match the feature space");
}

// Bottom-up: does every completion of e off `s` reach `label` from here?
// Exact for read-once diagrams, where every path is realizable.
bool fbdd_forces(const Fbdd& d, const Entity& e, const FeatureSet& s, ClassLabel label) {
  const auto order = d.topological_order();
  std::vector<char> ok(d.size(), 0);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const auto& n = d.node(*it);
    if (n.leaf) {
      ok[*it] = n.label == label;
    } else if (s.test(n.feature)) {
      ok[*it] = ok[e.category(n.feature) == 0 ? n.left : n.right];
    } else {
      ok[*it] = ok[n.left] && ok[n.right];
    }
  }
  return ok[d.root()];
}

}  // namespace

CnfFormula tree_to_path_cnf(const DecisionTree& t) {
  if (!t.boolean()) fail(ErrorKind::NotBoolean, "expected a 2-class tree");
  std::vector<Clause> clauses;
  Clause current;
  Region region(t.space());
  auto rec = [&](auto&& self, NodeRef v) -> void {
    const auto& node = t.node(v);
    if (node.leaf) {
      if (node.label == 0) clauses.push_back(current);
      return;
    }
    const auto f = node.test.feature;
    for (bool side : {true, false}) {
      auto slot = region.save(f);
      region.restrict(node.test, side);
      if (!region.empty()) {
        current.push_back(side ? node.test.negated() : node.test);
        self(self, side ? node.left : node.right);
        current.pop_back();
      }
      region.restore(f, std::move(slot));
    }
  };
  rec(rec, t.root());
  return CnfFormula::normalized(t.space_ptr(), clauses);
}

RestrictedCnf restrict_cnf_to_entity(const CnfFormula& cnf, const Entity& e) {
  RestrictedCnf out;
  out.clauses.reserve(cnf.clauses().size());
  for (std::size_t i = 0; i < cnf.clauses().size(); ++i) {
    Clause kept;
    for (const auto& lit : cnf.clauses()[i]) {
      if (lit.holds(e)) kept.push_back(lit);
    }
    if (kept.empty()) out.empty_clauses.push_back(i);
    out.clauses.push_back(std::move(kept));
  }
  return out;
}

ReasonHypergraph reason_hypergraph(const CnfFormula& cnf, const Entity& e) {
  const auto& space = cnf.space();
  if (e.size() != space.size()) fail(ErrorKind::MissingFeature, "entity does not cover the feature space");
  auto restricted = restrict_cnf_to_entity(cnf, e);
  if (!restricted.accepts()) {
    fail(ErrorKind::EntityRejected,
         "the formula rejects the entity (clause " + std::to_string(restricted.empty_clauses.front()) + ")");
  }
  std::vector<std::string> labels;
  for (const auto& f : space.features()) labels.push_back(f.id);

  std::vector<NodeSet> edges;
  std::vector<std::vector<std::size_t>> provenance;
  std::map<NodeSet, std::size_t> index;
  for (std::size_t i = 0; i < restricted.clauses.size(); ++i) {
    NodeSet vars(space.size());
    for (const auto& lit : restricted.clauses[i]) vars.set(lit.feature);
    auto [it, inserted] = index.try_emplace(vars, edges.size());
    if (inserted) {
      edges.push_back(vars);
      provenance.emplace_back();
    }
    provenance[it->second].push_back(i);
  }
  return ReasonHypergraph{Hypergraph(std::move(labels), std::move(edges)), cnf, std::move(provenance)};
}

ReasonHypergraph reason_hypergraph(const DecisionTree& t, const Entity& e) {
  return reason_hypergraph(tree_to_path_cnf(booleanize(t, t.evaluate(e))), e);
}

ReasonHypergraph reason_hypergraph(const Model& m, const Entity& e) {
  if (const auto* t = std::get_if<DecisionTree>(&m)) return reason_hypergraph(*t, e);
  if (const auto* c = std::get_if<CnfFormula>(&m)) return reason_hypergraph(*c, e);
  fail(ErrorKind::UnsupportedModel, "reason hypergraphs need a tree or a CNF formula");
}

bool is_reason(const Model& m, const Entity& e, const FeatureSet& s) {
  check_feature_set(*space_of(m), s);
  if (const auto* d = std::get_if<Fbdd>(&m)) return fbdd_forces(*d, e, s, d->evaluate(e));
  return is_hitting_set(reason_hypergraph(m, e).base, s);
}

bool is_sufficient_reason(const Model& m, const Entity& e, const FeatureSet& s) {
  check_feature_set(*space_of(m), s);
  if (const auto* d = std::get_if<Fbdd>(&m)) {
    const auto label = d->evaluate(e);
    if (!fbdd_forces(*d, e, s, label)) return false;
    for (auto x : members(s)) {
      FeatureSet smaller = s;
      smaller.reset(x);
      if (fbdd_forces(*d, e, smaller, label)) return false;
    }
    return true;
  }
  return is_minimal_hitting_set(reason_hypergraph(m, e).base, s);
}

DecisionTree sparse_model_to_tree(const std::vector<Entity>& accepted, const SpacePtr& space) {
  if (!space->all_categorical()) fail(ErrorKind::NonCategoricalFeature, "sparse models need categorical features");
  std::vector<TreeNode> nodes{TreeNode::make_leaf(0)};
  const NodeRef root = 0;
  for (const auto& e : accepted) {
    if (e.size() != space->size()) fail(ErrorKind::MissingFeature, "entity does not cover the feature space");
    FeatureSet fixed(space->size());
    NodeRef v = root;
    while (!nodes[v].leaf) {
      const auto& test = nodes[v].test;
      if (test.holds(e)) {
        fixed.set(test.feature);
        v = nodes[v].left;
      } else {
        v = nodes[v].right;
      }
    }
    if (nodes[v].label == 1) fail(ErrorKind::DuplicateEntity, "an entity is listed twice");

    // Graft a chain that pins every feature not yet pinned on the path.
    std::vector<FeatureIndex> open;
    for (FeatureIndex x = 0; x < space->size(); ++x) {
      if (!fixed.test(x)) open.push_back(x);
    }
    if (open.empty()) {
      nodes[v] = TreeNode::make_leaf(1);
      continue;
    }
    auto push = [&](TreeNode n) {
      nodes.push_back(std::move(n));
      return static_cast<NodeRef>(nodes.size() - 1);
    };
    auto pin = [&](FeatureIndex x) { return Literal::in(x, make_set(space->domain_size(x), {e.category(x)})); };
    NodeRef below = push(TreeNode::make_leaf(1));
    for (std::size_t i = open.size() - 1; i > 0; --i) {
      NodeRef reject = push(TreeNode::make_leaf(0));
      below = push(TreeNode::make_internal(pin(open[i]), below, reject));
    }
    NodeRef reject = push(TreeNode::make_leaf(0));
    nodes[v] = TreeNode::make_internal(pin(open[0]), below, reject);
  }
  return DecisionTree(DecisionTree::Unchecked{}, space, 2, std::move(nodes), root);
}

std::pair<DecisionTree, Entity> hypergraph_to_tree_instance(const Hypergraph& h) {
  std::vector<FeatureDecl> decls;
  for (const auto& label : h.labels()) decls.push_back({label, CategoricalDomain{{"0", "1"}}});
  auto space = std::make_shared<const FeatureSpace>(std::move(decls));

  // The clause for B rejects exactly the entity that is 0 on B and 1 elsewhere.
  std::vector<Entity> rejected;
  for (const auto& b : h.edges()) {
    std::vector<Value> values;
    for (NodeId v = 0; v < h.node_count(); ++v) values.emplace_back(CategoryIndex(b.test(v) ? 0 : 1));
    rejected.emplace_back(*space, std::move(values));
  }
  std::vector<Value> ones(h.node_count(), Value(CategoryIndex(1)));
  Entity e(*space, std::move(ones));
  return {negate(sparse_model_to_tree(rejected, space)), std::move(e)};
}

}  // namespace xplain
