#pragma once

#include "xplain/feature_space.hpp"

#include <optional>
#include <string>
#include <vector>

namespace xplain {

enum class LiteralOp : std::uint8_t { In, NotIn, Leq, Gt };

/// `x in S`, `x not in S` for categorical features, `x <= t`, `x > t` for
/// numerical ones.
struct Literal {
  FeatureIndex feature = 0;
  LiteralOp op = LiteralOp::In;
  ValueSet values;
  Rational threshold;

  static Literal in(FeatureIndex f, ValueSet s) { return {f, LiteralOp::In, std::move(s), {}}; }
  static Literal not_in(FeatureIndex f, ValueSet s) { return {f, LiteralOp::NotIn, std::move(s), {}}; }
  static Literal leq(FeatureIndex f, Rational t) { return {f, LiteralOp::Leq, {}, std::move(t)}; }
  static Literal gt(FeatureIndex f, Rational t) { return {f, LiteralOp::Gt, {}, std::move(t)}; }

  bool categorical() const noexcept { return op == LiteralOp::In || op == LiteralOp::NotIn; }

  bool holds(const Value& value) const;
  bool holds(const Entity& e) const { return holds(e[feature]); }

  Literal negated() const;

  /// Categories of the domain that satisfy the literal. Precondition: categorical().
  ValueSet satisfying() const { return op == LiteralOp::In ? values : ~values; }

  friend bool operator==(const Literal&, const Literal&) = default;
};

/// Empty when the literal is well formed over `space`, otherwise a reason.
std::optional<std::string> literal_problem(const FeatureSpace& space, const Literal& literal);

std::string to_string(const FeatureSpace& space, const Literal& literal);

enum class Truth : std::uint8_t { False, True, Open };

/// Axis-aligned box of entities: a value subset per categorical feature and
/// an interval per numerical one. Tracks what a root-to-node path implies.
class Region {
 public:
  explicit Region(const FeatureSpace& space);

  const ValueSet& values(FeatureIndex f) const { return values_[f]; }
  const Interval& interval(FeatureIndex f) const { return intervals_[f]; }

  /// Whether the literal is true on every, no, or some entity of the box.
  Truth status(const Literal& literal) const;

  /// The part of the box where `literal` evaluates to `truth`.
  Region restricted(const Literal& literal, bool truth) const;
  void restrict(const Literal& literal, bool truth);

  /// Undo support for depth-first walks that restrict one feature at a time.
  struct Slot {
    ValueSet values;
    Interval interval;
  };
  Slot save(FeatureIndex f) const { return {values_[f], intervals_[f]}; }
  void restore(FeatureIndex f, Slot slot) {
    values_[f] = std::move(slot.values);
    intervals_[f] = std::move(slot.interval);
  }

  bool empty() const;

  /// Number of entities in the box. Precondition: all features categorical.
  Count count() const;

 private:
  std::vector<ValueSet> values_;
  std::vector<Interval> intervals_;
};

}  // namespace xplain
