#include "fixtures.hpp"

#include <algorithm>

namespace xplain::testing {

namespace {

ValueSet one(std::size_t d, CategoryIndex c) { return make_set(d, {c}); }

template <class T>
const T& pick(Rng& rng, const std::vector<T>& items) {
  return items[std::uniform_int_distribution<std::size_t>(0, items.size() - 1)(rng)];
}

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool chance(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

Literal random_test(Rng& rng, const FeatureSpace& space) {
  const auto f = static_cast<FeatureIndex>(uniform(rng, 0, space.size() - 1));
  if (!space.categorical(f)) return Literal::leq(f, pick(rng, threshold_grid()));
  const auto d = space.domain_size(f);
  ValueSet s(d);
  while (s.none() || s.all()) {
    for (std::size_t i = 0; i < d; ++i) s[i] = chance(rng, 0.5);
  }
  return Literal::in(f, s);
}

}  // namespace

SpacePtr binary_space(std::size_t n, const std::string& prefix) {
  std::vector<FeatureDecl> decls;
  for (std::size_t i = 1; i <= n; ++i) decls.push_back({prefix + std::to_string(i), CategoricalDomain{{"0", "1"}}});
  return std::make_shared<const FeatureSpace>(std::move(decls));
}

Instance phi() {
  auto space = binary_space(5);
  auto pos = [](FeatureIndex f) { return Literal::in(f, one(2, 1)); };
  auto neg = [](FeatureIndex f) { return Literal::not_in(f, one(2, 1)); };
  std::vector<Clause> clauses{
      {pos(0), neg(1), pos(4)},
      {pos(1), pos(2), pos(3)},
      {neg(1), pos(3), neg(4)},
      {neg(0), neg(1), pos(4)},
  };
  CnfFormula cnf(space, std::move(clauses));
  std::vector<Value> v{CategoryIndex(0), CategoryIndex(0), CategoryIndex(1), CategoryIndex(1), CategoryIndex(0)};
  Entity e(*space, std::move(v));
  return {space, Model(std::move(cnf)), std::move(e)};
}

Instance movies() {
  auto inf = ExtReal::pos_inf();
  auto space = std::make_shared<const FeatureSpace>(std::vector<FeatureDecl>{
      {"Dur", NumericalDomain{Rational(0), inf}},
      {"Rate", NumericalDomain{Rational(0), Rational(1)}},
      {"Year", NumericalDomain{Rational(1888), inf}},
      {"Hst", CategoricalDomain{{"0", "1"}}},
  });
  TreeBuilder b;
  auto year = b.internal(Literal::leq(2, Rational(2000)), b.leaf(0), b.leaf(1));
  auto rate_short = b.internal(Literal::leq(1, parse_rational("0.8")), year, b.leaf(1));
  auto hst = b.internal(Literal::in(3, one(2, 0)), b.leaf(0), b.leaf(1));
  auto rate_long = b.internal(Literal::leq(1, parse_rational("0.95")), b.leaf(0), hst);
  auto root = b.internal(Literal::leq(0, Rational(120)), rate_short, rate_long);
  auto tree = std::move(b).finish(space, 2, root);
  validate(tree).raise_if_failed("movies tree");
  Entity e(*space, {Rational(90), parse_rational("0.85"), Rational(2005), CategoryIndex(0)});
  return {space, Model(std::move(tree)), std::move(e)};
}

FeatureSet features(const FeatureSpace& space, std::initializer_list<const char*> ids) {
  FeatureSet s(space.size());
  for (const auto* id : ids) s.set(space.index_of(id));
  return s;
}

std::vector<std::vector<std::string>> named(const FeatureSpace& space, const std::vector<FeatureSet>& family) {
  std::vector<std::vector<std::string>> out;
  for (const auto& s : family) {
    std::vector<std::string> ids;
    for (auto f : members(s)) ids.push_back(space[f].id);
    out.push_back(std::move(ids));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Entity> all_entities(const FeatureSpace& space) {
  std::vector<Entity> out;
  std::vector<Value> values(space.size(), Value(CategoryIndex(0)));
  while (true) {
    out.emplace_back(space, values);
    std::size_t f = 0;
    for (; f < space.size(); ++f) {
      auto& c = std::get<CategoryIndex>(values[f]);
      if (++c < space.domain_size(f)) break;
      c = 0;
    }
    if (f == space.size()) break;
  }
  return out;
}

const std::vector<Rational>& threshold_grid() {
  static const std::vector<Rational> grid{2, 4, 5, 6, 8};
  return grid;
}

SpacePtr random_space(Rng& rng, const SpaceShape& shape) {
  const auto n = uniform(rng, shape.min_features, shape.max_features);
  std::vector<FeatureDecl> decls;
  for (std::size_t i = 0; i < n; ++i) {
    auto id = "f" + std::to_string(i);
    if (chance(rng, shape.numerical)) {
      decls.push_back({id, NumericalDomain{Rational(0), Rational(10)}});
      continue;
    }
    CategoricalDomain d;
    for (std::size_t c = 0, k = uniform(rng, 2, shape.max_domain); c < k; ++c) d.values.push_back(std::to_string(c));
    decls.push_back({id, std::move(d)});
  }
  return std::make_shared<const FeatureSpace>(std::move(decls));
}

DecisionTree random_tree(Rng& rng, const SpacePtr& space, const TreeShape& shape) {
  std::vector<TreeNode> nodes{TreeNode::make_leaf(0)};
  std::vector<NodeRef> frontier{0};
  while (nodes.size() + 2 <= shape.max_nodes && chance(rng, shape.split)) {
    const auto i = uniform(rng, 0, frontier.size() - 1);
    const NodeRef v = frontier[i];
    frontier[i] = frontier.back();
    frontier.pop_back();
    const auto l = static_cast<NodeRef>(nodes.size());
    nodes[v] = TreeNode::make_internal(random_test(rng, *space), l, l + 1);
    nodes.push_back(TreeNode::make_leaf(0));
    nodes.push_back(TreeNode::make_leaf(0));
    frontier.push_back(l);
    frontier.push_back(l + 1);
  }
  for (auto& n : nodes) {
    if (n.leaf) n.label = static_cast<ClassLabel>(uniform(rng, 0, shape.classes - 1));
  }
  return DecisionTree(space, shape.classes, std::move(nodes), 0);
}

Entity random_entity(Rng& rng, const FeatureSpace& space) {
  static const std::vector<Rational> points{0, 1, 2, 3, 4, Rational(9, 2), 5, Rational(11, 2), 6, 7, 8, 9, 10};
  std::vector<Value> values;
  for (FeatureIndex f = 0; f < space.size(); ++f) {
    if (space.categorical(f)) {
      values.emplace_back(static_cast<CategoryIndex>(uniform(rng, 0, space.domain_size(f) - 1)));
    } else {
      values.emplace_back(pick(rng, points));
    }
  }
  return Entity(space, std::move(values));
}

Fbdd random_fbdd(Rng& rng, const SpacePtr& space, std::size_t max_internal) {
  std::vector<FbddNode> nodes;
  std::vector<IndexSet> support;
  std::vector<NodeRef> built;
  NodeRef leaves[2] = {0, 0};
  bool have_leaf[2] = {false, false};
  std::size_t internal = 0;
  auto leaf = [&](ClassLabel c) {
    if (!have_leaf[c]) {
      have_leaf[c] = true;
      leaves[c] = static_cast<NodeRef>(nodes.size());
      nodes.push_back(FbddNode::make_leaf(c));
      support.emplace_back(space->size());
    }
    return leaves[c];
  };
  auto build = [&](auto&& self, const IndexSet& avail) -> NodeRef {
    if (avail.none() || internal >= max_internal || chance(rng, 0.2)) return leaf(chance(rng, 0.5) ? 1 : 0);
    if (chance(rng, 0.3)) {
      std::vector<NodeRef> fits;
      for (auto v : built) {
        if (support[v].is_subset_of(avail)) fits.push_back(v);
      }
      if (!fits.empty()) return pick(rng, fits);
    }
    const auto choices = members(avail);
    const auto f = pick(rng, choices);
    IndexSet below = avail;
    below.reset(f);
    ++internal;
    NodeRef l = self(self, below);
    NodeRef r = self(self, below);
    IndexSet s = support[l] | support[r];
    s.set(f);
    nodes.push_back(FbddNode::make_internal(f, l, r));
    support.push_back(std::move(s));
    built.push_back(static_cast<NodeRef>(nodes.size() - 1));
    return built.back();
  };
  IndexSet all(space->size());
  all.set();
  NodeRef root = build(build, all);
  return Fbdd(space, std::move(nodes), root);
}

Hypergraph random_hypergraph(Rng& rng, std::size_t n, std::size_t max_edges) {
  std::vector<NodeSet> edges;
  const double p = chance(rng, 0.5) ? 0.25 : 0.45;
  for (std::size_t i = 0, m = uniform(rng, 0, max_edges); i < m; ++i) {
    NodeSet b(n);
    for (std::size_t v = 0; v < n; ++v) b[v] = chance(rng, p);
    if (b.none()) b.set(uniform(rng, 0, n - 1));
    edges.push_back(std::move(b));
  }
  return Hypergraph(n, std::move(edges));
}

DecisionTree wide_tree(Rng& rng, std::size_t features, std::size_t domain, std::size_t leaves) {
  std::vector<FeatureDecl> decls;
  for (std::size_t i = 0; i < features; ++i) {
    CategoricalDomain d;
    for (std::size_t c = 0; c < domain; ++c) d.values.push_back(std::to_string(c));
    decls.push_back({"f" + std::to_string(i), std::move(d)});
  }
  auto space = std::make_shared<const FeatureSpace>(std::move(decls));

  // Splits only use values still possible at the leaf, like a trained tree.
  std::vector<TreeNode> nodes{TreeNode::make_leaf(0)};
  std::vector<Region> region{Region(*space)};
  std::vector<NodeRef> frontier{0};
  while (frontier.size() < leaves) {
    const auto i = uniform(rng, 0, frontier.size() - 1);
    const NodeRef v = frontier[i];
    std::vector<FeatureIndex> open;
    for (FeatureIndex f = 0; f < features; ++f) {
      if (region[v].values(f).count() >= 2) open.push_back(f);
    }
    if (open.empty()) continue;
    const auto f = pick(rng, open);
    const auto possible = members(region[v].values(f));
    ValueSet in(domain);
    const auto take = uniform(rng, 1, std::min<std::size_t>(2, possible.size() - 1));
    auto shuffled = possible;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    for (std::size_t k = 0; k < take; ++k) in.set(shuffled[k]);
    Literal test = Literal::in(f, in);

    frontier[i] = frontier.back();
    frontier.pop_back();
    const auto l = static_cast<NodeRef>(nodes.size());
    Region rl = region[v].restricted(test, true);
    Region rr = region[v].restricted(test, false);
    nodes[v] = TreeNode::make_internal(std::move(test), l, l + 1);
    nodes.push_back(TreeNode::make_leaf(0));
    nodes.push_back(TreeNode::make_leaf(0));
    region.push_back(std::move(rl));
    region.push_back(std::move(rr));
    frontier.push_back(l);
    frontier.push_back(l + 1);
  }
  for (auto& n : nodes) {
    if (n.leaf) n.label = chance(rng, 0.5) ? 1 : 0;
  }
  return DecisionTree(space, 2, std::move(nodes), 0);
}

DecisionTree large_mixed_tree(Rng& rng, std::size_t target) {
  std::vector<FeatureDecl> decls;
  for (std::size_t i = 0; i < 10; ++i) decls.push_back({"n" + std::to_string(i), NumericalDomain{Rational(0), Rational(1000)}});
  for (std::size_t i = 0; i < 10; ++i) decls.push_back({"c" + std::to_string(i), CategoricalDomain{{"a", "b", "c", "d"}}});
  auto space = std::make_shared<const FeatureSpace>(std::move(decls));

  std::vector<TreeNode> nodes{TreeNode::make_leaf(0)};
  std::vector<NodeRef> frontier{0};
  nodes.reserve(target + 2);
  while (nodes.size() + 2 <= target) {
    const auto i = uniform(rng, 0, frontier.size() - 1);
    const NodeRef v = frontier[i];
    frontier[i] = frontier.back();
    frontier.pop_back();
    const auto f = static_cast<FeatureIndex>(uniform(rng, 0, 19));
    Literal test = f < 10 ? Literal::leq(f, Rational(static_cast<long long>(uniform(rng, 0, 999))))
                          : Literal::in(f, one(4, static_cast<CategoryIndex>(uniform(rng, 0, 3))));
    const auto l = static_cast<NodeRef>(nodes.size());
    nodes[v] = TreeNode::make_internal(std::move(test), l, l + 1);
    nodes.push_back(TreeNode::make_leaf(0));
    nodes.push_back(TreeNode::make_leaf(0));
    frontier.push_back(l);
    frontier.push_back(l + 1);
  }
  for (auto& n : nodes) {
    if (n.leaf) n.label = chance(rng, 0.5) ? 1 : 0;
  }
  return DecisionTree(space, 2, std::move(nodes), 0);
}

}  // namespace xplain::testing
