#include "doctest.h"

#include "fixtures.hpp"
#include "xplain/error.hpp"
#include "xplain/necessity.hpp"
#include "xplain/oracle.hpp"
#include "xplain/relevance.hpp"
#include "xplain/usefulness.hpp"

#include <algorithm>

using namespace xplain;
using namespace xplain::testing;

using Names = std::vector<std::vector<std::string>>;

namespace {

std::vector<std::string> ids(const FeatureSpace& space, const FeatureSet& s) { return named(space, {s}).front(); }

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::InvalidArgument;
}

FeatureSet flip_necessary(const Model& m, const Entity& e) {
  FeatureSet s(space_of(m)->size());
  for (FeatureIndex x = 0; x < s.size(); ++x) s[x] = is_necessary(m, e, x);
  return s;
}

FeatureSet intersection(const std::vector<FeatureSet>& family, std::size_t n) {
  FeatureSet s(n);
  s.set();
  for (const auto& r : family) s &= r;
  return s;
}

}  // namespace

TEST_CASE("running CNF example") {
  auto p = phi();
  const auto& space = *p.space;
  auto rh = reason_hypergraph(p.model, p.entity);
  Names edges;
  for (const auto& b : rh.base.edges()) edges.push_back(ids(space, b));
  CHECK(edges == Names{{"x2"}, {"x3", "x4"}, {"x2", "x4", "x5"}, {"x1", "x2"}});

  auto family = enumerate_minimal_hitting_sets(rh.base);
  CHECK(named(space, family) == Names{{"x2", "x3"}, {"x2", "x4"}});
  CHECK(named(space, enumerate_sufficient_reasons(p.model, p.entity)) == Names{{"x2", "x3"}, {"x2", "x4"}});

  CHECK(is_sufficient_reason(p.model, p.entity, features(space, {"x2", "x3"})));
  CHECK(is_reason(p.model, p.entity, features(space, {"x2", "x3", "x5"})));
  CHECK_FALSE(is_sufficient_reason(p.model, p.entity, features(space, {"x2", "x3", "x5"})));
  CHECK_FALSE(is_reason(p.model, p.entity, features(space, {"x3", "x4"})));

  CHECK(ids(space, all_necessary(p.model, p.entity)) == std::vector<std::string>{"x2"});
  CHECK(ids(space, all_relevant(p.model, p.entity)) == std::vector<std::string>{"x2", "x3", "x4"});
  auto x5 = is_relevant(p.model, p.entity, space.index_of("x5"));
  CHECK_FALSE(x5.relevant);
  CHECK_FALSE(x5.witness);
  auto x3 = is_relevant(p.model, p.entity, space.index_of("x3"));
  REQUIRE(x3.witness);
  CHECK(ids(space, *x3.witness) == std::vector<std::string>{"x2", "x3"});

  auto with2 = count_sufficient_reasons_with(p.model, p.entity, space.index_of("x2"), 5);
  CHECK(with2.reasons.size() == 2);
  CHECK_FALSE(with2.at_least_k);
  CHECK(count_sufficient_reasons_with(p.model, p.entity, space.index_of("x2"), 2).at_least_k);
  CHECK_FALSE(sufficient_reason_containing(p.model, p.entity, features(space, {"x3", "x4"})));
}

TEST_CASE("movie recommendation tree") {
  auto m = movies();
  const auto& space = *m.space;
  auto family = enumerate_sufficient_reasons(m.model, m.entity);
  CHECK(named(space, family) == Names{{"Dur", "Rate"}, {"Dur", "Year"}});
  auto rh = reason_hypergraph(m.model, m.entity);
  CHECK(enumerate_minimal_hitting_sets(rh.base) == family);
  CHECK(ids(space, all_necessary(m.model, m.entity)) == std::vector<std::string>{"Dur"});
  CHECK(ids(space, all_relevant(m.model, m.entity)) == std::vector<std::string>{"Dur", "Rate", "Year"});
  CHECK(is_sufficient_reason(m.model, m.entity, features(space, {"Dur", "Year"})));
  CHECK_FALSE(is_reason(m.model, m.entity, features(space, {"Rate", "Year", "Hst"})));
  CHECK_FALSE(is_relevant(m.model, m.entity, space.index_of("Hst")).relevant);

  const auto& t = std::get<DecisionTree>(m.model);
  auto sets = consistent_value_sets(t, m.entity, space.index_of("Dur"));
  REQUIRE(sets.size() == 2);
  const auto& off = std::get<Interval>(sets[0].payload);
  CHECK(off.contains(Rational(121)));
  CHECK_FALSE(off.contains(Rational(120)));
  CHECK(std::get<Interval>(sets[1].payload).contains(Rational(0)));
  CHECK_FALSE(taut_numeric(t, sets[0].node, m.entity, 0, off));
}

TEST_CASE("path CNF is equivalent to the tree") {
  Rng rng(31);
  for (int round = 0; round < 100; ++round) {
    auto space = random_space(rng, {1, 4, 3, 0.4});
    auto t = random_tree(rng, space, {15, 2, 0.8});
    auto cnf = tree_to_path_cnf(t);
    CHECK(validate(cnf).ok());
    CHECK(cnf.clauses().size() <= t.leaf_count(0));
    for (int k = 0; k < 40; ++k) {
      auto e = random_entity(rng, *space);
      REQUIRE(cnf.evaluate(e) == t.evaluate(e));
    }
  }
}

TEST_CASE("restriction to an entity") {
  auto p = phi();
  const auto& cnf = std::get<CnfFormula>(p.model);
  auto r = restrict_cnf_to_entity(cnf, p.entity);
  CHECK(r.accepts());
  CHECK(r.clauses[0].size() == 1);
  auto rejected = p.entity.with_value(*p.space, 1, CategoryIndex(1)).with_value(*p.space, 4, CategoryIndex(0));
  CHECK(cnf.evaluate(rejected) == 0);
  auto rr = restrict_cnf_to_entity(cnf, rejected);
  CHECK_FALSE(rr.accepts());
  CHECK(kind_of([&] { reason_hypergraph(cnf, rejected); }) == ErrorKind::EntityRejected);
  CHECK(kind_of([&] { reason_hypergraph(Model(std::get<CnfFormula>(p.model)), Entity()); }) ==
        ErrorKind::MissingFeature);
}

TEST_CASE("rejected tree entities are explained through the negated tree") {
  auto m = movies();
  auto e = m.entity.with_value(*m.space, 0, Rational(200));
  CHECK(evaluate(m.model, e) == 0);
  auto family = enumerate_sufficient_reasons(m.model, e);
  CHECK(enumerate_minimal_hitting_sets(reason_hypergraph(m.model, e).base) == family);
  CHECK(named(*m.space, family) == Names{{"Dur", "Hst"}, {"Dur", "Rate"}});
}

TEST_CASE("sparse models") {
  auto space = binary_space(3);
  std::vector<Entity> accepted{Entity(*space, {CategoryIndex(1), CategoryIndex(0), CategoryIndex(1)}),
                               Entity(*space, {CategoryIndex(0), CategoryIndex(0), CategoryIndex(0)})};
  auto t = sparse_model_to_tree(accepted, space);
  CHECK(validate(t).ok());
  for (const auto& e : all_entities(*space)) {
    bool in = std::find(accepted.begin(), accepted.end(), e) != accepted.end();
    CHECK(t.evaluate(e) == (in ? 1u : 0u));
  }
  CHECK(kind_of([&] { sparse_model_to_tree({accepted[0], accepted[0]}, space); }) == ErrorKind::DuplicateEntity);
  auto m = movies();
  CHECK(kind_of([&] { sparse_model_to_tree({m.entity}, m.space); }) == ErrorKind::NonCategoricalFeature);
  CHECK(satisfiable(sparse_model_to_tree({}, space)) == false);
}

TEST_CASE("FBDD reason checks") {
  auto space = binary_space(3);
  // x1 ? x2 : x3, with exactly one choice read on each path.
  std::vector<FbddNode> nodes{FbddNode::make_internal(0, 2, 1), FbddNode::make_internal(1, 3, 4),
                              FbddNode::make_internal(2, 3, 4), FbddNode::make_leaf(0), FbddNode::make_leaf(1)};
  Model d = Fbdd(space, nodes, 0);
  Entity e(*space, {CategoryIndex(1), CategoryIndex(1), CategoryIndex(0)});
  CHECK(evaluate(d, e) == 1);
  CHECK(is_sufficient_reason(d, e, features(*space, {"x1", "x2"})));
  CHECK_FALSE(is_reason(d, e, features(*space, {"x2"})));
  CHECK(is_reason(d, e, features(*space, {"x1", "x2", "x3"})));
  CHECK(ids(*space, all_necessary(d, e)) == std::vector<std::string>{"x1", "x2"});
  CHECK(kind_of([&] { reason_hypergraph(d, e); }) == ErrorKind::UnsupportedModel);
  CHECK(kind_of([&] { is_reason(d, e, FeatureSet(2)); }) == ErrorKind::UnknownFeature);
}

TEST_CASE("reasons, relevance and necessity agree with the oracle") {
  Rng rng(32);
  for (int round = 0; round < 250; ++round) {
    auto space = random_space(rng, {1, 5, 3, round % 3 == 0 ? 0.4 : 0.0});
    auto t = random_tree(rng, space, {15, round % 5 == 0 ? 3u : 2u, 0.8});
    Model m = t;
    auto e = random_entity(rng, *space);
    auto oracle = explain_by_oracle(m, e);
    auto rh = reason_hypergraph(t, e);
    REQUIRE(enumerate_minimal_hitting_sets(rh.base) == oracle.reasons);
    for (const auto& s : oracle.reasons) REQUIRE(is_sufficient_reason(m, e, s));
    REQUIRE(all_relevant(m, e) == oracle.relevant);
    REQUIRE(all_necessary(m, e) == oracle.necessary);
    REQUIRE(all_necessary_tree(t, e) == oracle.necessary);
    REQUIRE(flip_necessary(m, e) == oracle.necessary);
    for (FeatureIndex x = 0; x < space->size(); ++x) {
      auto answer = is_relevant(m, e, x);
      REQUIRE(answer.relevant == oracle.relevant.test(x));
      REQUIRE(answer.relevant == brute_relevant(m, e, x));
      REQUIRE(is_necessary(m, e, x) == brute_necessary(m, e, x));
      if (answer.witness) {
        REQUIRE(answer.witness->test(x));
        REQUIRE(std::find(oracle.reasons.begin(), oracle.reasons.end(), *answer.witness) != oracle.reasons.end());
      }
      std::size_t with = std::count_if(oracle.reasons.begin(), oracle.reasons.end(),
                                       [&](const FeatureSet& s) { return s.test(x); });
      auto counted = count_sufficient_reasons_with(m, e, x, 3);
      REQUIRE(counted.reasons.size() == std::min<std::size_t>(3, with));
      REQUIRE(counted.at_least_k == (with >= 3));
    }
    REQUIRE(intersection(oracle.reasons, space->size()) == oracle.necessary);
  }
}

TEST_CASE("CNF reasons agree with the oracle") {
  Rng rng(33);
  int checked = 0;
  for (int round = 0; round < 300 && checked < 120; ++round) {
    auto space = binary_space(1 + rng() % 5);
    Model m = tree_to_path_cnf(random_tree(rng, space, {13, 2, 0.8}));
    auto e = random_entity(rng, *space);
    if (evaluate(m, e) != 1) continue;
    ++checked;
    auto oracle = explain_by_oracle(m, e);
    REQUIRE(enumerate_minimal_hitting_sets(reason_hypergraph(m, e).base) == oracle.reasons);
    REQUIRE(all_necessary(m, e) == oracle.necessary);
    REQUIRE(all_relevant(m, e) == oracle.relevant);
  }
  CHECK(checked >= 100);
}

TEST_CASE("FBDD necessity agrees with flipping") {
  Rng rng(34);
  for (int round = 0; round < 250; ++round) {
    auto space = binary_space(1 + rng() % 6);
    auto d = random_fbdd(rng, space);
    REQUIRE(validate(d).ok());
    auto e = random_entity(rng, *space);
    Model m = d;
    REQUIRE(all_necessary_fbdd(d, e) == flip_necessary(m, e));
    std::vector<FeatureSet> family = enumerate_sufficient_reasons(m, e);
    REQUIRE(all_necessary_fbdd(d, e) == intersection(family, space->size()));
    for (const auto& s : family) REQUIRE(is_sufficient_reason(m, e, s));
  }
  auto space = binary_space(2);
  std::vector<FbddNode> twice{FbddNode::make_internal(0, 1, 2), FbddNode::make_internal(0, 2, 3),
                              FbddNode::make_leaf(0), FbddNode::make_leaf(1)};
  Fbdd bad(Fbdd::Unchecked{}, space, twice, 0);
  Entity e(*space, {CategoryIndex(0), CategoryIndex(0)});
  CHECK(kind_of([&] { all_necessary_fbdd(bad, e); }) == ErrorKind::ReadOnceViolation);
}

TEST_CASE("taut routines match brute force") {
  Rng rng(35);
  for (int round = 0; round < 200; ++round) {
    auto space = random_space(rng, {1, 4, 4, 0.4});
    auto t = random_tree(rng, space, {15, 2, 0.8});
    auto e = random_entity(rng, *space);
    for (FeatureIndex x = 0; x < space->size(); ++x) {
      if (space->categorical(x)) {
        ValueSet z(space->domain_size(x));
        for (std::size_t i = 0; i < z.size(); ++i) z[i] = rng() % 2;
        bool expect = true;
        for (auto b : members(z)) expect = expect && t.evaluate(e.with_value_unchecked(x, b)) == 1;
        REQUIRE(taut_categorical(t, t.root(), e, x, z) == expect);
      } else {
        const auto& grid = threshold_grid();
        Rational a = grid[rng() % grid.size()];
        Rational b = grid[rng() % grid.size()];
        if (b < a) std::swap(a, b);
        Interval iv{ExtReal(a), false, ExtReal(b)};
        bool expect = true;
        for (int k = 0; k <= 40; ++k) {
          Rational c = Rational(k, 4);
          if (iv.contains(c)) expect = expect && t.evaluate(e.with_value_unchecked(x, c)) == 1;
        }
        REQUIRE(taut_numeric(t, t.root(), e, x, iv) == expect);
      }
    }
  }
}

TEST_CASE("necessity visits a linear number of nodes") {
  Rng rng(36);
  auto t = large_mixed_tree(rng, 20000);
  for (int k = 0; k < 5; ++k) {
    auto e = random_entity(rng, t.space());
    VisitCounter counter;
    auto fast = all_necessary_tree(t, e, &counter);
    CHECK(counter.visits <= 2 * t.size());
    CHECK(fast == flip_necessary(Model(t), e));
  }
}

TEST_CASE("listing sufficient reasons through the witness search") {
  auto p = phi();
  auto all = sufficient_reasons(p.model, p.entity, 10);
  CHECK(named(*p.space, all.reasons) == Names{{"x2", "x3"}, {"x2", "x4"}});
  CHECK_FALSE(all.at_least_k);
  CHECK(sufficient_reasons(p.model, p.entity, 1).at_least_k);

  Rng rng(37);
  for (int round = 0; round < 200; ++round) {
    auto space = random_space(rng, {1, 5, 3, 0.3});
    Model m = random_tree(rng, space, {15, 2, 0.8});
    auto e = random_entity(rng, *space);
    auto oracle = enumerate_sufficient_reasons(m, e);
    auto got = sufficient_reasons(m, e, 1000);
    REQUIRE(got.reasons == oracle);
    auto few = sufficient_reasons(m, e, 2);
    REQUIRE(few.reasons.size() == std::min<std::size_t>(2, oracle.size()));
  }
}
