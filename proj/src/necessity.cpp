#include "xplain/necessity.hpp"

#include "xplain/error.hpp"

namespace xplain {

namespace {

void check_feature(const FeatureSpace& space, FeatureIndex x) {
  if (x >= space.size()) fail(ErrorKind::UnknownFeature, "feature index out of range");
}

bool is_empty(const Interval& i) { return i.empty(); }
bool is_empty(const ValueSet& z) { return z.none(); }

std::pair<Interval, Interval> split(const Literal& test, const Interval& i) {
  return {i.clip_leq(test.threshold), i.clip_gt(test.threshold)};
}

std::pair<ValueSet, ValueSet> split(const Literal& test, const ValueSet& z) {
  ValueSet in = z & test.satisfying();
  return {in, z - in};
}

// Depth-first over (node, set) pairs: nodes testing x split the set, other
// nodes follow e, and a nonempty set reaching a leaf needs label `target`.
template <class Set>
bool taut(const DecisionTree& t, NodeRef v, const Entity& e, FeatureIndex x, Set set, ClassLabel target,
          VisitCounter* counter) {
  std::vector<std::pair<NodeRef, Set>> stack;
  stack.emplace_back(v, std::move(set));
  while (!stack.empty()) {
    auto [u, s] = std::move(stack.back());
    stack.pop_back();
    if (counter) ++counter->visits;
    if (is_empty(s)) continue;
    const auto& node = t.node(u);
    if (node.leaf) {
      if (node.label != target) return false;
      continue;
    }
    if (node.test.feature == x) {
      auto [left, right] = split(node.test, s);
      stack.emplace_back(node.right, std::move(right));
      stack.emplace_back(node.left, std::move(left));
    } else {
      stack.emplace_back(node.test.holds(e) ? node.left : node.right, std::move(s));
    }
  }
  return true;
}

void check_boolean(const DecisionTree& t) {
  if (!t.boolean()) fail(ErrorKind::NotBoolean, "taut expects a 2-class tree");
}

}  // namespace

bool is_necessary(const Model& m, const Entity& e, FeatureIndex x) {
  const auto label = evaluate(m, e);
  for (const auto& b : representatives(m, x)) {
    if (evaluate(m, e.with_value_unchecked(x, b)) != label) return true;
  }
  return false;
}

bool taut_numeric(const DecisionTree& t, NodeRef v, const Entity& e, FeatureIndex x, const Interval& interval,
                  VisitCounter* counter) {
  check_boolean(t);
  check_feature(t.space(), x);
  return taut(t, v, e, x, interval, 1, counter);
}

bool taut_categorical(const DecisionTree& t, NodeRef v, const Entity& e, FeatureIndex x, const ValueSet& z,
                      VisitCounter* counter) {
  check_boolean(t);
  check_feature(t.space(), x);
  return taut(t, v, e, x, z, 1, counter);
}

std::vector<ConsistentValueSet> consistent_value_sets(const DecisionTree& t, const Entity& e, FeatureIndex x) {
  const auto& space = t.space();
  check_feature(space, x);
  std::variant<Interval, ValueSet> current;
  if (space.categorical(x)) {
    current = space.full_values(x);
  } else {
    current = space.full_interval(x);
  }
  std::vector<ConsistentValueSet> out;
  NodeRef v = t.root();
  while (!t.node(v).leaf) {
    const auto& node = t.node(v);
    const bool left = node.test.holds(e);
    if (node.test.feature == x) {
      std::visit(
          [&](auto& s) {
            auto [l, r] = split(node.test, s);
            out.push_back({x, left ? node.right : node.left, left ? r : l});
            s = left ? l : r;
          },
          current);
    }
    v = left ? node.left : node.right;
  }
  out.push_back({x, v, std::move(current)});
  return out;
}

FeatureSet all_necessary_tree(const DecisionTree& t, const Entity& e, VisitCounter* counter) {
  const auto& space = t.space();
  const ClassLabel target = t.evaluate(e);
  const auto n = space.size();
  std::vector<Interval> intervals(n);
  std::vector<ValueSet> values(n);
  std::vector<char> started(n, 0);
  FeatureSet necessary(n);

  NodeRef v = t.root();
  while (true) {
    if (counter) ++counter->visits;
    const auto& node = t.node(v);
    if (node.leaf) break;
    const auto x = node.test.feature;
    const bool left = node.test.holds(e);
    const NodeRef off = left ? node.right : node.left;
    if (!started[x]) {
      started[x] = 1;
      if (space.categorical(x)) {
        values[x] = space.full_values(x);
      } else {
        intervals[x] = space.full_interval(x);
      }
    }
    if (space.categorical(x)) {
      auto [l, r] = split(node.test, values[x]);
      if (!necessary.test(x) && !taut(t, off, e, x, left ? r : l, target, counter)) necessary.set(x);
      values[x] = left ? std::move(l) : std::move(r);
    } else {
      auto [l, r] = split(node.test, intervals[x]);
      if (!necessary.test(x) && !taut(t, off, e, x, left ? r : l, target, counter)) necessary.set(x);
      intervals[x] = left ? std::move(l) : std::move(r);
    }
    v = left ? node.left : node.right;
  }
  return necessary;
}

FeatureSet all_necessary_fbdd(const Fbdd& d, const Entity& e) {
  if (validate(d).has("read-once")) fail(ErrorKind::ReadOnceViolation, "the diagram repeats a feature on a path");
  if (e.size() != d.space().size()) fail(ErrorKind::MissingFeature, "entity does not cover the feature space");
  const auto order = d.topological_order();
  std::vector<ClassLabel> value(d.size(), 0);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const auto& n = d.node(*it);
    value[*it] = n.leaf ? n.label : value[e.category(n.feature) == 0 ? n.left : n.right];
  }
  FeatureSet necessary(d.space().size());
  NodeRef v = d.root();
  while (!d.node(v).leaf) {
    const auto& n = d.node(v);
    if (value[n.left] != value[n.right]) necessary.set(n.feature);
    v = e.category(n.feature) == 0 ? n.left : n.right;
  }
  return necessary;
}

FeatureSet all_necessary(const Model& m, const Entity& e) {
  if (const auto* t = std::get_if<DecisionTree>(&m)) return all_necessary_tree(*t, e);
  if (const auto* d = std::get_if<Fbdd>(&m)) return all_necessary_fbdd(*d, e);
  const auto n = space_of(m)->size();
  FeatureSet out(n);
  for (FeatureIndex x = 0; x < n; ++x) {
    if (is_necessary(m, e, x)) out.set(x);
  }
  return out;
}

}  // namespace xplain
