#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace xplain {

using Rational = boost::multiprecision::cpp_rational;

/// Arbitrary-precision non-negative integer used by model counting and scores.
using Count = boost::multiprecision::cpp_int;

/// Accepts integers, decimals with optional exponent ("0.85", "-1e3") and
/// fractions ("3/4"). Throws ParseError.
Rational parse_rational(std::string_view text);

/// Finite decimals print as decimals, everything else as "p/q".
std::string to_string(const Rational& value);

std::string to_string(const Count& value);

/// A real number extended with the -inf/+inf sentinels.
class ExtReal {
 public:
  enum class Kind : std::uint8_t { NegInf, Finite, PosInf };

  ExtReal() = default;
  ExtReal(Rational value) : kind_(Kind::Finite), value_(std::move(value)) {}  // NOLINT

  static ExtReal neg_inf() { return ExtReal(Kind::NegInf); }
  static ExtReal pos_inf() { return ExtReal(Kind::PosInf); }

  /// Also understands "inf", "+inf", "-inf", "infinity".
  static ExtReal parse(std::string_view text);

  Kind kind() const noexcept { return kind_; }
  bool is_finite() const noexcept { return kind_ == Kind::Finite; }
  bool is_neg_inf() const noexcept { return kind_ == Kind::NegInf; }
  bool is_pos_inf() const noexcept { return kind_ == Kind::PosInf; }
  /// Precondition: is_finite().
  const Rational& value() const noexcept { return value_; }

  friend bool operator==(const ExtReal& a, const ExtReal& b) {
    return a.kind_ == b.kind_ && (a.kind_ != Kind::Finite || a.value_ == b.value_);
  }
  friend bool operator<(const ExtReal& a, const ExtReal& b) {
    if (a.kind_ != b.kind_) return a.kind_ < b.kind_;
    return a.kind_ == Kind::Finite && a.value_ < b.value_;
  }
  friend bool operator<=(const ExtReal& a, const ExtReal& b) { return !(b < a); }
  friend bool operator>(const ExtReal& a, const ExtReal& b) { return b < a; }
  friend bool operator>=(const ExtReal& a, const ExtReal& b) { return !(a < b); }

 private:
  explicit ExtReal(Kind kind) : kind_(kind) {}

  Kind kind_ = Kind::Finite;
  Rational value_{0};
};

std::string to_string(const ExtReal& value);

/// Set of finite reals {c : lo < c <= hi}, or lo <= c when `lo_closed`.
///
/// A closed lower end encodes the symbolic "just below lo" endpoint, so that
/// the numerical domain [m, M] is still a left-open interval.
struct Interval {
  ExtReal lo = ExtReal::neg_inf();
  bool lo_closed = false;
  ExtReal hi = ExtReal::pos_inf();

  static Interval domain(const ExtReal& min, const ExtReal& max) {
    return Interval{min, min.is_finite(), max};
  }
  /// The canonical empty interval.
  static Interval empty_interval() { return Interval{ExtReal::pos_inf(), false, ExtReal::neg_inf()}; }

  bool empty() const;
  bool contains(const Rational& c) const;

  /// Intersection with {c : c <= t}.
  Interval clip_leq(const Rational& t) const;
  /// Intersection with {c : c > t}.
  Interval clip_gt(const Rational& t) const;

  /// The exact point used to stand for the whole interval. Midpoint of
  /// finite intervals, endpoint -/+ 1 on an infinite side, 0 when unbounded.
  /// Precondition: !empty().
  Rational representative() const;

  friend bool operator==(const Interval& a, const Interval& b) {
    if (a.empty() || b.empty()) return a.empty() && b.empty();
    return a.lo == b.lo && a.lo_closed == b.lo_closed && a.hi == b.hi;
  }
};

std::string to_string(const Interval& interval);

/// Cells induced on [min, max] by sorted distinct thresholds t1 < ... < tm:
/// [min, t1], (t1, t2], ..., (tm, max].
std::vector<Interval> threshold_cells(const ExtReal& min, const ExtReal& max,
                                      std::span<const Rational> thresholds);

/// Index of the cell of `threshold_cells` containing `value`.
std::size_t cell_index(std::span<const Rational> thresholds, const Rational& value);

}  // namespace xplain
