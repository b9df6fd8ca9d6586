#include "xplain/model.hpp"

#include "xplain/error.hpp"

namespace xplain {

namespace {

template <class... Fs>
struct overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

}  // namespace

const SpacePtr& space_of(const Model& m) {
  return std::visit([](const auto& x) -> const SpacePtr& { return x.space_ptr(); }, m);
}

ClassLabel class_count(const Model& m) {
  if (const auto* t = std::get_if<DecisionTree>(&m)) return t->class_count();
  return 2;
}

std::string_view kind_name(const Model& m) {
  return std::visit(overloaded{[](const DecisionTree&) { return std::string_view("tree"); },
                               [](const Fbdd&) { return std::string_view("fbdd"); },
                               [](const CnfFormula&) { return std::string_view("cnf"); }},
                    m);
}

ClassLabel evaluate(const Model& m, const Entity& e) {
  return std::visit([&](const auto& x) { return x.evaluate(e); }, m);
}

Model condition(const Model& m, FeatureIndex feature, const Value& value) {
  return std::visit([&](const auto& x) -> Model { return condition(x, feature, value); }, m);
}

Model negate(const Model& m) {
  return std::visit(overloaded{[](const DecisionTree& t) -> Model { return negate(t); },
                               [](const Fbdd& d) -> Model { return negate(d); },
                               [](const CnfFormula&) -> Model {
                                 fail(ErrorKind::UnsupportedModel, "CNF formulas are not closed under negation here");
                               }},
                    m);
}

Model disjoint_disjunction(const Model& m1, const Model& m2, FeatureIndex fresh) {
  if (m1.index() != m2.index()) fail(ErrorKind::UnsupportedModel, "operands must be of the same model kind");
  return std::visit(
      [&](const auto& a) -> Model {
        using T = std::decay_t<decltype(a)>;
        return disjoint_disjunction(a, std::get<T>(m2), fresh);
      },
      m1);
}

ValidationReport validate(const Model& m) {
  return std::visit([](const auto& x) { return validate(x); }, m);
}

bool tests_feature(const Model& m, FeatureIndex f) {
  return std::visit([&](const auto& x) { return x.tests_feature(f); }, m);
}

std::vector<Rational> thresholds(const Model& m, FeatureIndex f) {
  return std::visit(overloaded{[&](const DecisionTree& t) { return t.thresholds(f); },
                               [&](const Fbdd&) { return std::vector<Rational>{}; },
                               [&](const CnfFormula& c) { return c.thresholds(f); }},
                    m);
}

std::vector<Value> cell_representatives(const FeatureSpace& space, FeatureIndex f,
                                        std::span<const Rational> thresholds) {
  const auto& d = space[f].numerical_domain();
  std::vector<Value> out;
  for (const auto& cell : threshold_cells(d.min, d.max, thresholds)) {
    if (!cell.empty()) out.emplace_back(cell.representative());
  }
  return out;
}

std::vector<Value> representatives(const Model& m, FeatureIndex f) {
  const auto& space = *space_of(m);
  if (f >= space.size()) fail(ErrorKind::UnknownFeature, "feature index out of range");
  if (space.categorical(f)) {
    std::vector<Value> out;
    for (CategoryIndex c = 0; c < space.domain_size(f); ++c) out.emplace_back(c);
    return out;
  }
  auto ts = thresholds(m, f);
  return cell_representatives(space, f, ts);
}

DecisionTree as_tree(const Model& m, std::size_t max_nodes) {
  return std::visit(overloaded{[](const DecisionTree& t) {
                                 if (!t.boolean()) fail(ErrorKind::NotBoolean, "expected a 2-class tree");
                                 return t;
                               },
                               [&](const Fbdd& d) { return fbdd_to_tree(d, max_nodes); },
                               [&](const CnfFormula& c) { return cnf_to_tree(c, max_nodes); }},
                    m);
}

}  // namespace xplain
