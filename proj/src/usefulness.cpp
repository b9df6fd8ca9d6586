#include "xplain/usefulness.hpp"

#include "xplain/error.hpp"

#include <algorithm>

namespace xplain {

namespace {

void require_categorical(const FeatureSpace& space) {
  if (!space.all_categorical()) fail(ErrorKind::NonCategoricalFeature, "this query needs a categorical feature space");
}

bool has_leaf(const DecisionTree& t, ClassLabel c) {
  return std::any_of(t.nodes().begin(), t.nodes().end(), [&](const TreeNode& n) { return n.leaf && n.label == c; });
}

// T^c, or the constant 0 tree when c is not a class of t.
DecisionTree indicator(const DecisionTree& t, ClassLabel c) {
  if (c >= t.class_count()) return DecisionTree::constant(t.space_ptr(), 2, 0);
  return booleanize(t, c);
}

DecisionTree to_tree(const Model& m) {
  if (const auto* t = std::get_if<DecisionTree>(&m)) return *t;
  return as_tree(m);
}

bool equivalent_trees(const DecisionTree& t1, const DecisionTree& t2) {
  if (!same_space(t1.space_ptr(), t2.space_ptr())) fail(ErrorKind::FeatureSpaceMismatch, "models over different spaces");
  if (t1.boolean() && t2.boolean()) {
    return !satisfiable(conjoin(t1, negate(t2))) && !satisfiable(conjoin(negate(t1), t2));
  }
  const auto k = std::max(t1.class_count(), t2.class_count());
  for (ClassLabel c = 0; c < k; ++c) {
    if (!equivalent_trees(indicator(t1, c), indicator(t2, c))) return false;
  }
  return true;
}

}  // namespace

Count model_count(const DecisionTree& t) {
  if (!t.boolean()) fail(ErrorKind::NotBoolean, "model counting expects a 2-class tree");
  require_categorical(t.space());
  Count total = 0;
  Region region(t.space());
  auto rec = [&](auto&& self, NodeRef v) -> void {
    const auto& node = t.node(v);
    if (node.leaf) {
      if (node.label == 1) total += region.count();
      return;
    }
    const auto f = node.test.feature;
    for (bool side : {true, false}) {
      auto slot = region.save(f);
      region.restrict(node.test, side);
      if (!region.empty()) self(self, side ? node.left : node.right);
      region.restore(f, std::move(slot));
    }
  };
  rec(rec, t.root());
  return total;
}

bool satisfiable(const DecisionTree& t) {
  Region region(t.space());
  auto rec = [&](auto&& self, NodeRef v) -> bool {
    const auto& node = t.node(v);
    if (node.leaf) return node.label == 1;
    const auto f = node.test.feature;
    for (bool side : {true, false}) {
      auto slot = region.save(f);
      region.restrict(node.test, side);
      bool found = !region.empty() && self(self, side ? node.left : node.right);
      region.restore(f, std::move(slot));
      if (found) return true;
    }
    return false;
  };
  return rec(rec, t.root());
}

bool equivalent(const Model& m1, const Model& m2) {
  if (!same_space(space_of(m1), space_of(m2))) fail(ErrorKind::FeatureSpaceMismatch, "models over different spaces");
  return equivalent_trees(to_tree(m1), to_tree(m2));
}

bool is_useful(const Model& m, FeatureIndex x) {
  const auto reps = representatives(m, x);
  if (!tests_feature(m, x)) return false;
  const DecisionTree t = to_tree(m);
  const DecisionTree first = condition(t, x, reps.front());
  for (std::size_t i = 1; i < reps.size(); ++i) {
    if (!equivalent_trees(first, condition(t, x, reps[i]))) return true;
  }
  return false;
}

UsefulnessScore usefulness_score(const DecisionTree& t, FeatureIndex x) {
  const auto& space = t.space();
  require_categorical(space);
  if (x >= space.size()) fail(ErrorKind::UnknownFeature, "feature index out of range");
  UsefulnessScore score{x, 0, space.entity_count()};
  if (!t.tests_feature(x)) return score;

  // Entities where x is not necessary: for some class c, every value of x
  // keeps the prediction at c.
  Count stable = 0;
  for (ClassLabel c = 0; c < t.class_count(); ++c) {
    if (!has_leaf(t, c)) continue;
    const auto tc = booleanize(t, c);
    auto all = condition(tc, x, CategoryIndex(0));
    for (CategoryIndex b = 1; b < space.domain_size(x); ++b) {
      if (all.node(all.root()).leaf && all.node(all.root()).label == 0) break;
      all = conjoin(all, condition(tc, x, b));
    }
    stable += model_count(all);
  }
  score.necessary_count = score.total_entities - stable;
  return score;
}

std::vector<FeatureIndex> rank_scores(const std::vector<UsefulnessScore>& scores) {
  std::vector<const UsefulnessScore*> order;
  for (const auto& s : scores) order.push_back(&s);
  std::sort(order.begin(), order.end(), [](const UsefulnessScore* a, const UsefulnessScore* b) {
    if (a->necessary_count != b->necessary_count) return a->necessary_count > b->necessary_count;
    return a->feature < b->feature;
  });
  std::vector<FeatureIndex> out;
  for (const auto* s : order) out.push_back(s->feature);
  return out;
}

ScoreTable score_all(const DecisionTree& t) {
  ScoreTable table;
  for (FeatureIndex x = 0; x < t.space().size(); ++x) table.scores.push_back(usefulness_score(t, x));
  table.ranking = rank_scores(table.scores);
  return table;
}

}  // namespace xplain
