#include "xplain/cnf.hpp"

#include "xplain/error.hpp"

#include <algorithm>
#include <map>

namespace xplain {

namespace {

void check_literals(const FeatureSpace& space, const std::vector<Clause>& clauses, ValidationReport& report) {
  for (std::size_t i = 0; i < clauses.size(); ++i) {
    for (const auto& lit : clauses[i]) {
      if (auto problem = literal_problem(space, lit)) {
        report.add(lit.categorical() ? "test-set" : "threshold", "clause " + std::to_string(i) + ": " + *problem);
      }
    }
  }
}

}  // namespace

CnfFormula::CnfFormula(SpacePtr space, std::vector<Clause> clauses)
    : CnfFormula(Unchecked{}, std::move(space), std::move(clauses)) {
  validate(*this).raise_if_failed("invalid CNF");
}

CnfFormula::CnfFormula(Unchecked, SpacePtr space, std::vector<Clause> clauses)
    : space_(std::move(space)), clauses_(std::move(clauses)) {
  if (!space_) fail(ErrorKind::InvalidArgument, "CNF without a feature space");
  for (const auto& c : clauses_) {
    for (const auto& lit : c) {
      if (lit.feature >= space_->size()) fail(ErrorKind::ValidationError, "literal on an unknown feature");
    }
  }
}

CnfFormula CnfFormula::normalized(SpacePtr space, const std::vector<Clause>& clauses) {
  ValidationReport report;
  check_literals(*space, clauses, report);
  report.raise_if_failed("invalid CNF");
  std::vector<Clause> kept;
  kept.reserve(clauses.size());
  for (const auto& c : clauses) {
    if (auto n = normalize_clause(*space, c)) kept.push_back(std::move(*n));
  }
  return CnfFormula(Unchecked{}, std::move(space), std::move(kept));
}

bool holds(const Clause& clause, const Entity& e) {
  return std::any_of(clause.begin(), clause.end(), [&](const Literal& l) { return l.holds(e); });
}

ClassLabel CnfFormula::evaluate(const Entity& e) const {
  if (e.size() != space_->size()) fail(ErrorKind::MissingFeature, "entity does not cover the feature space");
  return std::all_of(clauses_.begin(), clauses_.end(), [&](const Clause& c) { return holds(c, e); }) ? 1 : 0;
}

bool CnfFormula::tests_feature(FeatureIndex f) const {
  for (const auto& c : clauses_) {
    for (const auto& l : c) {
      if (l.feature == f) return true;
    }
  }
  return false;
}

std::vector<Rational> CnfFormula::thresholds(FeatureIndex f) const {
  std::vector<Rational> out;
  for (const auto& c : clauses_) {
    for (const auto& l : c) {
      if (l.feature == f && !l.categorical()) out.push_back(l.threshold);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::size_t CnfFormula::literal_count() const {
  std::size_t n = 0;
  for (const auto& c : clauses_) n += c.size();
  return n;
}

std::optional<Clause> normalize_clause(const FeatureSpace& space, const Clause& clause) {
  struct Merged {
    ValueSet values;
    std::optional<Rational> leq;  // largest
    std::optional<Rational> gt;   // smallest
  };
  std::vector<FeatureIndex> order;
  std::map<FeatureIndex, Merged> merged;
  for (const auto& lit : clause) {
    auto [it, inserted] = merged.try_emplace(lit.feature);
    if (inserted) order.push_back(lit.feature);
    auto& m = it->second;
    switch (lit.op) {
      case LiteralOp::In:
      case LiteralOp::NotIn:
        if (m.values.size() == 0) m.values = ValueSet(space.domain_size(lit.feature));
        m.values |= lit.satisfying();
        break;
      case LiteralOp::Leq:
        if (!m.leq || *m.leq < lit.threshold) m.leq = lit.threshold;
        break;
      case LiteralOp::Gt:
        if (!m.gt || lit.threshold < *m.gt) m.gt = lit.threshold;
        break;
    }
  }
  Clause out;
  for (auto f : order) {
    const auto& m = merged[f];
    if (space.categorical(f)) {
      if (m.values.all()) return std::nullopt;
      out.push_back(Literal::in(f, m.values));
      continue;
    }
    if (m.leq && m.gt && *m.gt <= *m.leq) return std::nullopt;
    const auto& d = space[f].numerical_domain();
    if (m.leq && d.max <= ExtReal(*m.leq)) return std::nullopt;
    if (m.gt && ExtReal(*m.gt) < d.min) return std::nullopt;
    if (m.leq) out.push_back(Literal::leq(f, *m.leq));
    if (m.gt) out.push_back(Literal::gt(f, *m.gt));
  }
  return out;
}

ValidationReport validate(const CnfFormula& cnf) {
  ValidationReport report;
  check_literals(cnf.space(), cnf.clauses(), report);
  if (!report.ok()) return report;
  for (std::size_t i = 0; i < cnf.clauses().size(); ++i) {
    if (tautological(cnf.space(), cnf.clauses()[i])) {
      report.add("tautological-clause", "clause " + std::to_string(i) + " is true on every entity");
    }
  }
  return report;
}

CnfFormula condition(const CnfFormula& cnf, FeatureIndex feature, const Value& value) {
  check_value(cnf.space(), feature, value);
  std::vector<Clause> out;
  for (const auto& c : cnf.clauses()) {
    Clause kept;
    bool satisfied = false;
    for (const auto& lit : c) {
      if (lit.feature != feature) {
        kept.push_back(lit);
      } else if (lit.holds(value)) {
        satisfied = true;
        break;
      }
    }
    if (!satisfied) out.push_back(std::move(kept));
  }
  return CnfFormula(CnfFormula::Unchecked{}, cnf.space_ptr(), std::move(out));
}

CnfFormula disjoint_disjunction(const CnfFormula& c1, const CnfFormula& c2, FeatureIndex fresh) {
  if (!same_space(c1.space_ptr(), c2.space_ptr())) fail(ErrorKind::FeatureSpaceMismatch, "disjunction over different spaces");
  const auto& space = c1.space();
  if (fresh >= space.size() || !space[fresh].binary()) {
    fail(ErrorKind::FeatureNotFresh, "the selector must be a binary categorical feature of the space");
  }
  if (c1.tests_feature(fresh) || c2.tests_feature(fresh)) {
    fail(ErrorKind::FeatureNotFresh, "feature '" + space[fresh].id + "' is used by an operand");
  }
  // fresh = 1 selects c1: each clause of c1 gets "fresh = 0" appended, each of c2 "fresh = 1".
  std::vector<Clause> out;
  for (auto c : c1.clauses()) {
    c.push_back(Literal::in(fresh, make_set(2, {0})));
    out.push_back(std::move(c));
  }
  for (auto c : c2.clauses()) {
    c.push_back(Literal::in(fresh, make_set(2, {1})));
    out.push_back(std::move(c));
  }
  return CnfFormula(CnfFormula::Unchecked{}, c1.space_ptr(), std::move(out));
}

DecisionTree cnf_to_tree(const CnfFormula& cnf, std::size_t max_nodes) {
  TreeBuilder out;
  const auto& clauses = cnf.clauses();
  auto rec = [&](auto&& self, Region& region, const std::vector<std::size_t>& active) -> NodeRef {
    if (out.size() >= max_nodes) fail(ErrorKind::BudgetExceeded, "compiling the CNF exceeds the node budget");
    std::vector<std::size_t> open;
    const Literal* pivot = nullptr;
    for (auto i : active) {
      bool satisfied = false;
      const Literal* undecided = nullptr;
      for (const auto& lit : clauses[i]) {
        Truth t = region.status(lit);
        if (t == Truth::True) {
          satisfied = true;
          break;
        }
        if (t == Truth::Open && undecided == nullptr) undecided = &lit;
      }
      if (satisfied) continue;
      if (undecided == nullptr) return out.leaf(0);
      if (pivot == nullptr) pivot = undecided;
      open.push_back(i);
    }
    if (open.empty()) return out.leaf(1);

    Literal test = pivot->categorical() ? Literal::in(pivot->feature, pivot->satisfying())
                                        : Literal::leq(pivot->feature, pivot->threshold);
    const auto f = test.feature;
    auto slot = region.save(f);
    region.restrict(test, true);
    NodeRef l = self(self, region, open);
    region.restore(f, slot);
    region.restrict(test, false);
    NodeRef r = self(self, region, open);
    region.restore(f, std::move(slot));
    if (out[l].leaf && out[r].leaf && out[l].label == out[r].label) return l;
    return out.internal(std::move(test), l, r);
  };
  Region region(cnf.space());
  std::vector<std::size_t> all(clauses.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  NodeRef root = rec(rec, region, all);
  return std::move(out).finish(cnf.space_ptr(), 2, root);
}

}  // namespace xplain
