#include "doctest.h"

#include "fixtures.hpp"
#include "xplain/error.hpp"
#include "xplain/reasons.hpp"
#include "xplain/usefulness.hpp"

using namespace xplain;
using namespace xplain::testing;

namespace {

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::InvalidArgument;
}

Entity bits(const FeatureSpace& space, std::initializer_list<CategoryIndex> v) {
  std::vector<Value> values(v.begin(), v.end());
  return Entity(space, std::move(values));
}

Fbdd figure_two_shape() {
  auto space = binary_space(5);
  std::vector<FbddNode> nodes{
      FbddNode::make_internal(1, 1, 2),  // x2
      FbddNode::make_internal(2, 3, 5),  // x3
      FbddNode::make_internal(4, 3, 5),  // x5
      FbddNode::make_internal(3, 4, 5),  // x4
      FbddNode::make_leaf(0),
      FbddNode::make_leaf(1),
  };
  return Fbdd(space, std::move(nodes), 0);
}

}  // namespace

TEST_CASE("feature spaces reject malformed declarations") {
  using V = std::vector<FeatureDecl>;
  CHECK(kind_of([] { FeatureSpace(V{{"a", CategoricalDomain{{"0", "1"}}}, {"a", CategoricalDomain{{"0", "1"}}}}); }) ==
        ErrorKind::ValidationError);
  CHECK(kind_of([] { FeatureSpace(V{{"a", CategoricalDomain{{"0"}}}}); }) == ErrorKind::ValidationError);
  CHECK(kind_of([] { FeatureSpace(V{{"a", CategoricalDomain{{"0", "0"}}}}); }) == ErrorKind::ValidationError);
  CHECK(kind_of([] { FeatureSpace(V{{"a", NumericalDomain{Rational(1), Rational(1)}}}); }) ==
        ErrorKind::ValidationError);
  FeatureSpace ok(V{{"a", NumericalDomain{ExtReal::neg_inf(), ExtReal::pos_inf()}}});
  CHECK(ok.size() == 1);
}

TEST_CASE("entities must be total and in domain") {
  auto inst = movies();
  const auto& space = *inst.space;
  CHECK(kind_of([&] { Entity(space, {Rational(1)}); }) == ErrorKind::MissingFeature);
  CHECK(kind_of([&] { Entity(space, {Rational(-1), Rational(0), Rational(1900), CategoryIndex(0)}); }) ==
        ErrorKind::OutOfDomainValue);
  CHECK(kind_of([&] { Entity(space, {Rational(1), Rational(2), Rational(1900), CategoryIndex(0)}); }) ==
        ErrorKind::OutOfDomainValue);
  CHECK(kind_of([&] { Entity(space, {Rational(1), Rational(0), Rational(1900), CategoryIndex(2)}); }) ==
        ErrorKind::OutOfDomainValue);
  CHECK(kind_of([&] { Entity(space, {CategoryIndex(0), Rational(0), Rational(1900), CategoryIndex(0)}); }) ==
        ErrorKind::OutOfDomainValue);
  CHECK(kind_of([&] { inst.entity.with_value(space, 1, Rational(3, 2)); }) == ErrorKind::OutOfDomainValue);
}

TEST_CASE("evaluate on the running examples") {
  auto p = phi();
  CHECK(evaluate(p.model, p.entity) == 1);
  auto m = movies();
  CHECK(evaluate(m.model, m.entity) == 1);
  auto leaf = DecisionTree::constant(m.space, 2, 0);
  CHECK(leaf.evaluate(m.entity) == 0);
}

TEST_CASE("condition substitutes a value") {
  auto m = movies();
  const auto& t = std::get<DecisionTree>(m.model);
  auto long_film = condition(t, 0, Rational(200));
  CHECK_FALSE(long_film.tests_feature(0));
  CHECK(long_film.evaluate(m.entity) == 0);

  auto p = phi();
  const auto& cnf = std::get<CnfFormula>(p.model);
  auto c = condition(cnf, 0, CategoryIndex(0));
  REQUIRE(c.clauses().size() == 3);
  CHECK(c.clauses()[0].size() == 2);  // x1 in {1} falsified and deleted
  for (const auto& clause : c.clauses()) {
    for (const auto& lit : clause) CHECK(lit.feature != 0);
  }
  for (const auto& e : all_entities(*p.space)) {
    CHECK(c.evaluate(e) == cnf.evaluate(e.with_value_unchecked(0, CategoryIndex(0))));
  }
}

TEST_CASE("conditioning a CNF can leave an empty clause") {
  auto space = binary_space(2);
  CnfFormula cnf(space, {{Literal::in(0, make_set(2, {1}))}});
  auto c = condition(cnf, 0, CategoryIndex(0));
  REQUIRE(c.clauses().size() == 1);
  CHECK(c.clauses()[0].empty());
  CHECK(c.evaluate(bits(*space, {1, 1})) == 0);
}

TEST_CASE("condition agrees with substitution on random models") {
  Rng rng(11);
  for (int round = 0; round < 150; ++round) {
    auto space = random_space(rng, {1, 4, 3, 0.0});
    auto t = random_tree(rng, space, {15, round % 3 == 0 ? 3u : 2u, 0.8});
    auto entities = all_entities(*space);
    for (FeatureIndex x = 0; x < space->size(); ++x) {
      for (CategoryIndex b = 0; b < space->domain_size(x); ++b) {
        auto c = condition(t, x, b);
        CHECK(validate(c).ok());
        for (const auto& e : entities) REQUIRE(c.evaluate(e) == t.evaluate(e.with_value_unchecked(x, b)));
      }
    }
  }
}

TEST_CASE("condition agrees with substitution on mixed trees, FBDDs and CNFs") {
  Rng rng(12);
  for (int round = 0; round < 100; ++round) {
    auto space = random_space(rng, {1, 4, 3, 0.5});
    auto t = random_tree(rng, space, {15, 2, 0.8});
    for (int k = 0; k < 20; ++k) {
      auto e = random_entity(rng, *space);
      auto x = static_cast<FeatureIndex>(rng() % space->size());
      auto b = random_entity(rng, *space)[x];
      REQUIRE(condition(t, x, b).evaluate(e) == t.evaluate(e.with_value_unchecked(x, b)));
    }
  }
  for (int round = 0; round < 100; ++round) {
    auto space = binary_space(1 + rng() % 5);
    auto d = random_fbdd(rng, space);
    auto cnf = tree_to_path_cnf(random_tree(rng, space, {9, 2, 0.8}));
    for (FeatureIndex x = 0; x < space->size(); ++x) {
      for (CategoryIndex b = 0; b < 2; ++b) {
        auto cd = condition(d, x, b);
        CHECK(validate(cd).ok());
        auto cc = condition(cnf, x, b);
        for (const auto& e : all_entities(*space)) {
          REQUIRE(cd.evaluate(e) == d.evaluate(e.with_value_unchecked(x, b)));
          REQUIRE(cc.evaluate(e) == cnf.evaluate(e.with_value_unchecked(x, b)));
        }
      }
    }
  }
}

TEST_CASE("negate flips labels and is an involution") {
  auto m = movies();
  const auto& t = std::get<DecisionTree>(m.model);
  CHECK(negate(t).evaluate(m.entity) == 0);
  auto one = DecisionTree::constant(m.space, 2, 1);
  CHECK(negate(one).node(negate(one).root()).label == 0);

  Rng rng(13);
  for (int round = 0; round < 100; ++round) {
    auto space = random_space(rng, {1, 4, 3, 0.3});
    auto r = random_tree(rng, space, {15, 2, 0.8});
    auto n = negate(r);
    auto nn = negate(n);
    for (int k = 0; k < 20; ++k) {
      auto e = random_entity(rng, *space);
      REQUIRE(n.evaluate(e) == 1 - r.evaluate(e));
      REQUIRE(nn.evaluate(e) == r.evaluate(e));
    }
  }
  auto three = random_tree(rng, random_space(rng, {2, 2, 2, 0}), {7, 3, 1.0});
  CHECK(kind_of([&] { negate(three); }) == ErrorKind::NotBoolean);
  CHECK(kind_of([&] { negate(phi().model); }) == ErrorKind::UnsupportedModel);
}

TEST_CASE("conjoin is pointwise conjunction within the size bound") {
  auto space = binary_space(2);
  TreeBuilder a;
  auto ra = a.internal(Literal::in(0, make_set(2, {1})), a.leaf(1), a.leaf(0));
  auto tx = std::move(a).finish(space, 2, ra);
  TreeBuilder b;
  auto rb = b.internal(Literal::in(1, make_set(2, {1})), b.leaf(1), b.leaf(0));
  auto ty = std::move(b).finish(space, 2, rb);
  auto both = conjoin(tx, ty);
  for (const auto& e : all_entities(*space)) {
    CHECK(both.evaluate(e) == (e.category(0) == 1 && e.category(1) == 1 ? 1 : 0));
  }
  CHECK(model_count(both) == 1);

  Rng rng(14);
  for (int round = 0; round < 150; ++round) {
    auto s = random_space(rng, {1, 4, 3, round % 2 == 0 ? 0.0 : 0.5});
    auto t1 = random_tree(rng, s, {15, 2, 0.8});
    auto t2 = random_tree(rng, s, {15, 2, 0.8});
    auto c = conjoin(t1, t2);
    CHECK(validate(c).ok());
    CHECK(c.size() <= t1.size() + t1.leaf_count(1) * t2.size());
    auto id = conjoin(t1, DecisionTree::constant(s, 2, 1));
    CHECK(!satisfiable(conjoin(t1, negate(t1))));
    for (int k = 0; k < 30; ++k) {
      auto e = random_entity(rng, *s);
      REQUIRE(c.evaluate(e) == (t1.evaluate(e) & t2.evaluate(e)));
      REQUIRE(id.evaluate(e) == t1.evaluate(e));
    }
    if (s->all_categorical()) CHECK(model_count(conjoin(t1, negate(t1))) == 0);
  }
  auto other = binary_space(2, "y");
  CHECK(kind_of([&] { conjoin(tx, DecisionTree::constant(other, 2, 1)); }) == ErrorKind::FeatureSpaceMismatch);
}

TEST_CASE("disjoint disjunction selects by the fresh feature") {
  auto space = binary_space(4);
  Rng rng(15);
  const FeatureIndex fresh = 3;
  auto sub = binary_space(3);
  for (int round = 0; round < 60; ++round) {
    auto lift = [&](const DecisionTree& t) {
      return DecisionTree(space, 2, t.nodes(), t.root());
    };
    auto t1 = lift(random_tree(rng, sub, {11, 2, 0.8}));
    auto t2 = lift(random_tree(rng, sub, {11, 2, 0.8}));
    auto d = disjoint_disjunction(t1, t2, fresh);
    auto lift_fbdd = [&](const Fbdd& d) { return Fbdd(space, d.nodes(), d.root()); };
    auto f1 = lift_fbdd(random_fbdd(rng, sub));
    auto f2 = lift_fbdd(random_fbdd(rng, sub));
    auto fd = disjoint_disjunction(f1, f2, fresh);
    CHECK(validate(fd).ok());
    auto c1 = tree_to_path_cnf(t1);
    auto c2 = tree_to_path_cnf(t2);
    auto cd = disjoint_disjunction(c1, c2, fresh);
    for (const auto& e : all_entities(*space)) {
      const bool sel = e.category(fresh) == 1;
      REQUIRE(d.evaluate(e) == (sel ? t1.evaluate(e) : t2.evaluate(e)));
      REQUIRE(fd.evaluate(e) == (sel ? f1.evaluate(e) : f2.evaluate(e)));
      REQUIRE(cd.evaluate(e) == (sel ? c1.evaluate(e) : c2.evaluate(e)));
    }
    CHECK_FALSE(is_useful(Model(disjoint_disjunction(t1, t1, fresh)), fresh));
  }
  auto one = DecisionTree::constant(space, 2, 1);
  auto zero = DecisionTree::constant(space, 2, 0);
  CHECK(is_useful(Model(disjoint_disjunction(one, zero, fresh)), fresh));
  TreeBuilder b;
  auto r = b.internal(Literal::in(fresh, make_set(2, {1})), b.leaf(1), b.leaf(0));
  auto uses = std::move(b).finish(space, 2, r);
  CHECK(kind_of([&] { disjoint_disjunction(uses, one, fresh); }) == ErrorKind::FeatureNotFresh);
}

TEST_CASE("booleanize is the class indicator") {
  auto m = movies();
  CHECK(booleanize(std::get<DecisionTree>(m.model), 1).evaluate(m.entity) == 1);
  Rng rng(16);
  for (int round = 0; round < 80; ++round) {
    auto space = random_space(rng, {1, 4, 3, 0.0});
    auto t = random_tree(rng, space, {15, 3, 0.8});
    std::vector<DecisionTree> parts;
    for (ClassLabel c = 0; c < 3; ++c) parts.push_back(booleanize(t, c));
    for (const auto& e : all_entities(*space)) {
      ClassLabel sum = 0;
      for (ClassLabel c = 0; c < 3; ++c) {
        sum += parts[c].evaluate(e);
        REQUIRE(parts[c].evaluate(e) == (t.evaluate(e) == c ? 1u : 0u));
      }
      REQUIRE(sum == 1);
    }
    auto b = random_tree(rng, space, {15, 2, 0.8});
    auto same = booleanize(b, 1);
    for (const auto& e : all_entities(*space)) REQUIRE(same.evaluate(e) == b.evaluate(e));
    CHECK(kind_of([&] { booleanize(t, 3); }) == ErrorKind::BadClass);
  }
}

TEST_CASE("validate reports structural problems") {
  CHECK(validate(figure_two_shape()).ok());

  auto space = binary_space(3);
  std::vector<FbddNode> twice{
      FbddNode::make_internal(1, 1, 3),
      FbddNode::make_internal(0, 2, 3),
      FbddNode::make_internal(1, 3, 4),
      FbddNode::make_leaf(0),
      FbddNode::make_leaf(1),
  };
  Fbdd bad(Fbdd::Unchecked{}, space, twice, 0);
  CHECK(validate(bad).has("read-once"));
  CHECK(kind_of([&] { Fbdd(space, twice, 0); }) == ErrorKind::ValidationError);

  std::vector<TreeNode> full{TreeNode::make_internal(Literal::in(0, make_set(2, {0, 1})), 1, 2), TreeNode::make_leaf(0),
                             TreeNode::make_leaf(1)};
  CHECK(validate(DecisionTree(DecisionTree::Unchecked{}, space, 2, full, 0)).has("test-set"));

  std::vector<TreeNode> cyc{TreeNode::make_internal(Literal::in(0, make_set(2, {0})), 1, 2),
                            TreeNode::make_internal(Literal::in(1, make_set(2, {0})), 0, 2), TreeNode::make_leaf(1)};
  auto report = validate(DecisionTree(DecisionTree::Unchecked{}, space, 2, cyc, 0));
  CHECK(report.has("cycle"));

  std::vector<TreeNode> label{TreeNode::make_leaf(2)};
  CHECK(validate(DecisionTree(DecisionTree::Unchecked{}, space, 2, label, 0)).has("leaf-label"));

  auto inf = movies();
  std::vector<TreeNode> top{TreeNode::make_internal(Literal::leq(1, Rational(1)), 1, 2), TreeNode::make_leaf(0),
                            TreeNode::make_leaf(1)};
  CHECK(validate(DecisionTree(DecisionTree::Unchecked{}, inf.space, 2, top, 0)).has("threshold"));

  std::vector<TreeNode> gt{TreeNode::make_internal(Literal::gt(1, Rational(0)), 1, 2), TreeNode::make_leaf(0),
                           TreeNode::make_leaf(1)};
  CHECK(validate(DecisionTree(DecisionTree::Unchecked{}, inf.space, 2, gt, 0)).has("test-kind"));

  std::vector<TreeNode> shared{TreeNode::make_internal(Literal::in(0, make_set(2, {0})), 1, 1),
                               TreeNode::make_internal(Literal::in(1, make_set(2, {0})), 2, 3), TreeNode::make_leaf(0),
                               TreeNode::make_leaf(1)};
  CHECK(validate(DecisionTree(DecisionTree::Unchecked{}, space, 2, shared, 0)).has("multiple-parents"));

  Clause taut{Literal::in(0, make_set(2, {0})), Literal::not_in(0, make_set(2, {0}))};
  CHECK(validate(CnfFormula(CnfFormula::Unchecked{}, space, {taut})).has("tautological-clause"));
  CHECK(kind_of([&] { CnfFormula(space, {taut}); }) == ErrorKind::ValidationError);
  CHECK(CnfFormula::normalized(space, {taut}).clauses().empty());

  std::vector<FbddNode> wide{FbddNode::make_internal(0, 1, 2), FbddNode::make_leaf(0), FbddNode::make_leaf(1)};
  Rng rng(1);
  auto mixed = random_space(rng, {2, 2, 3, 1.0});
  CHECK(validate(Fbdd(Fbdd::Unchecked{}, mixed, wide, 0)).has("non-binary-feature"));
}

TEST_CASE("models built by the library validate") {
  Rng rng(17);
  for (int round = 0; round < 100; ++round) {
    auto space = random_space(rng, {1, 5, 3, 0.4});
    auto t1 = random_tree(rng, space, {15, 2, 0.8});
    auto t2 = random_tree(rng, space, {15, 2, 0.8});
    CHECK(validate(t1).ok());
    CHECK(validate(conjoin(t1, t2)).ok());
    CHECK(validate(negate(t1)).ok());
    CHECK(validate(tree_to_path_cnf(t1)).ok());
    CHECK(validate(cnf_to_tree(tree_to_path_cnf(t1))).ok());
  }
}
