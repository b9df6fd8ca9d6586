#include "xplain/literal.hpp"

#include "xplain/error.hpp"

namespace xplain {

bool Literal::holds(const Value& value) const {
  switch (op) {
    case LiteralOp::In: return values.test(std::get<CategoryIndex>(value));
    case LiteralOp::NotIn: return !values.test(std::get<CategoryIndex>(value));
    case LiteralOp::Leq: return std::get<Rational>(value) <= threshold;
    case LiteralOp::Gt: return std::get<Rational>(value) > threshold;
  }
  return false;
}

Literal Literal::negated() const {
  Literal r = *this;
  switch (op) {
    case LiteralOp::In: r.op = LiteralOp::NotIn; break;
    case LiteralOp::NotIn: r.op = LiteralOp::In; break;
    case LiteralOp::Leq: r.op = LiteralOp::Gt; break;
    case LiteralOp::Gt: r.op = LiteralOp::Leq; break;
  }
  return r;
}

std::optional<std::string> literal_problem(const FeatureSpace& space, const Literal& literal) {
  if (literal.feature >= space.size()) return "literal on an unknown feature";
  const auto& f = space[literal.feature];
  if (literal.categorical()) {
    if (!f.categorical()) return "set test on numerical feature '" + f.id + "'";
    if (literal.values.size() != f.categories().size()) return "value set of '" + f.id + "' has the wrong size";
    if (literal.values.none()) return "empty value set on '" + f.id + "'";
    if (literal.values.all()) return "value set covering the whole domain of '" + f.id + "'";
    return std::nullopt;
  }
  if (f.categorical()) return "threshold test on categorical feature '" + f.id + "'";
  const auto& d = f.numerical_domain();
  ExtReal t(literal.threshold);
  if (t < d.min || d.max <= t) return "threshold " + to_string(literal.threshold) + " outside [min, max) of '" + f.id + "'";
  return std::nullopt;
}

std::string to_string(const FeatureSpace& space, const Literal& literal) {
  const auto& f = space[literal.feature];
  auto set_text = [&](const ValueSet& s) {
    std::string out = "{";
    bool first = true;
    for (auto v : members(s)) {
      if (!first) out += ",";
      out += f.categories()[v];
      first = false;
    }
    return out + "}";
  };
  switch (literal.op) {
    case LiteralOp::In: return f.id + " in " + set_text(literal.values);
    case LiteralOp::NotIn: return f.id + " not in " + set_text(literal.values);
    case LiteralOp::Leq: return f.id + " <= " + to_string(literal.threshold);
    case LiteralOp::Gt: return f.id + " > " + to_string(literal.threshold);
  }
  return {};
}

Region::Region(const FeatureSpace& space) : values_(space.size()), intervals_(space.size()) {
  for (FeatureIndex i = 0; i < space.size(); ++i) {
    if (space.categorical(i)) {
      values_[i] = space.full_values(i);
    } else {
      intervals_[i] = space.full_interval(i);
    }
  }
}

Truth Region::status(const Literal& literal) const {
  const auto f = literal.feature;
  bool can_true = false;
  bool can_false = false;
  switch (literal.op) {
    case LiteralOp::In:
    case LiteralOp::NotIn: {
      bool inside = values_[f].intersects(literal.values);
      bool outside = !values_[f].is_subset_of(literal.values);
      can_true = literal.op == LiteralOp::In ? inside : outside;
      can_false = literal.op == LiteralOp::In ? outside : inside;
      break;
    }
    case LiteralOp::Leq:
    case LiteralOp::Gt: {
      bool below = !intervals_[f].clip_leq(literal.threshold).empty();
      bool above = !intervals_[f].clip_gt(literal.threshold).empty();
      can_true = literal.op == LiteralOp::Leq ? below : above;
      can_false = literal.op == LiteralOp::Leq ? above : below;
      break;
    }
  }
  if (can_true && can_false) return Truth::Open;
  return can_true ? Truth::True : Truth::False;
}

void Region::restrict(const Literal& literal, bool truth) {
  const auto f = literal.feature;
  const bool positive = (literal.op == LiteralOp::In || literal.op == LiteralOp::Leq) == truth;
  if (literal.categorical()) {
    if (positive) {
      values_[f] &= literal.values;
    } else {
      values_[f] -= literal.values;
    }
  } else {
    intervals_[f] = positive ? intervals_[f].clip_leq(literal.threshold) : intervals_[f].clip_gt(literal.threshold);
  }
}

Region Region::restricted(const Literal& literal, bool truth) const {
  Region r = *this;
  r.restrict(literal, truth);
  return r;
}

bool Region::empty() const {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i].size() > 0 ? values_[i].none() : intervals_[i].empty()) return true;
  }
  return false;
}

Count Region::count() const {
  Count total = 1;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i].size() == 0) fail(ErrorKind::NonCategoricalFeature, "cannot count over a numerical feature");
    total *= values_[i].count();
  }
  return total;
}

}  // namespace xplain
