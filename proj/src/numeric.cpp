#include "xplain/numeric.hpp"

#include "xplain/error.hpp"

#include <algorithm>
#include <cctype>

namespace xplain {

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

Count pow10(unsigned n) {
  Count r = 1;
  for (unsigned i = 0; i < n; ++i) r *= 10;
  return r;
}

// cpp_int reads a leading zero as an octal prefix.
Count decimal(std::string_view digits) {
  auto first = digits.find_first_not_of('0');
  return first == std::string_view::npos ? Count(0) : Count(std::string(digits.substr(first)));
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto bad = [&] { fail(ErrorKind::ParseError, "not an exact number: '" + std::string(text) + "'"); };
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) bad();

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash);
    auto den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) bad();
    Count d = decimal(den);
    if (d == 0) bad();
    Rational r(decimal(num), d);
    return negative ? Rational(-r) : r;
  }

  long long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    auto exp_text = s.substr(e + 1);
    bool exp_negative = false;
    if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
      exp_negative = exp_text.front() == '-';
      exp_text.remove_prefix(1);
    }
    if (!all_digits(exp_text) || exp_text.size() > 6) bad();
    exponent = std::stoll(std::string(exp_text));
    if (exp_negative) exponent = -exponent;
    s = s.substr(0, e);
  }

  std::string digits;
  long long scale = 0;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    auto int_part = s.substr(0, dot);
    auto frac_part = s.substr(dot + 1);
    if (int_part.empty() && frac_part.empty()) bad();
    if (!int_part.empty() && !all_digits(int_part)) bad();
    if (!frac_part.empty() && !all_digits(frac_part)) bad();
    digits = std::string(int_part) + std::string(frac_part);
    scale = static_cast<long long>(frac_part.size());
  } else {
    if (!all_digits(s)) bad();
    digits = std::string(s);
  }
  exponent -= scale;
  Count mantissa = decimal(digits);
  Rational r = exponent >= 0 ? Rational(mantissa * pow10(static_cast<unsigned>(exponent)))
                             : Rational(mantissa, pow10(static_cast<unsigned>(-exponent)));
  return negative ? Rational(-r) : r;
}

std::string to_string(const Count& value) { return value.str(); }

std::string to_string(const Rational& value) {
  Count num = boost::multiprecision::numerator(value);
  Count den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();

  // Finite decimal iff the denominator has no prime factors besides 2 and 5.
  Count rest = den;
  unsigned twos = 0, fives = 0;
  while (rest % 2 == 0) { rest /= 2; ++twos; }
  while (rest % 5 == 0) { rest /= 5; ++fives; }
  if (rest != 1) return num.str() + "/" + den.str();

  unsigned places = std::max(twos, fives);
  Count scaled = num * pow10(places) / den;
  bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  std::string digits = scaled.str();
  if (digits.size() <= places) digits.insert(0, places + 1 - digits.size(), '0');
  digits.insert(digits.size() - places, ".");
  return negative ? "-" + digits : digits;
}

ExtReal ExtReal::parse(std::string_view text) {
  std::string t = lower(text);
  if (t == "inf" || t == "+inf" || t == "infinity" || t == "+infinity") return pos_inf();
  if (t == "-inf" || t == "-infinity") return neg_inf();
  return ExtReal(parse_rational(text));
}

std::string to_string(const ExtReal& value) {
  switch (value.kind()) {
    case ExtReal::Kind::NegInf: return "-inf";
    case ExtReal::Kind::PosInf: return "inf";
    case ExtReal::Kind::Finite: break;
  }
  return to_string(value.value());
}

bool Interval::empty() const {
  if (hi.is_neg_inf() || lo.is_pos_inf()) return true;
  if (lo < hi) return false;
  return !(lo == hi && lo.is_finite() && lo_closed);
}

bool Interval::contains(const Rational& c) const {
  ExtReal v(c);
  bool above = lo_closed ? lo <= v : lo < v;
  return above && v <= hi;
}

Interval Interval::clip_leq(const Rational& t) const {
  Interval r = *this;
  ExtReal bound(t);
  if (bound < r.hi) r.hi = std::move(bound);
  return r;
}

Interval Interval::clip_gt(const Rational& t) const {
  Interval r = *this;
  ExtReal bound(t);
  if (r.lo <= bound) {
    r.lo = std::move(bound);
    r.lo_closed = false;
  }
  return r;
}

Rational Interval::representative() const {
  if (lo.is_finite() && hi.is_finite()) {
    if (lo.value() == hi.value()) return lo.value();
    return (lo.value() + hi.value()) / 2;
  }
  if (hi.is_finite()) return hi.value() - 1;
  if (lo.is_finite()) return lo.value() + 1;
  return Rational(0);
}

std::string to_string(const Interval& interval) {
  if (interval.empty()) return "{}";
  return std::string(interval.lo_closed ? "[" : "(") + to_string(interval.lo) + ", " +
         to_string(interval.hi) + (interval.hi.is_finite() ? "]" : ")");
}

std::vector<Interval> threshold_cells(const ExtReal& min, const ExtReal& max,
                                      std::span<const Rational> thresholds) {
  std::vector<Interval> cells;
  cells.reserve(thresholds.size() + 1);
  Interval current = Interval::domain(min, max);
  for (const auto& t : thresholds) {
    cells.push_back(current.clip_leq(t));
    current = current.clip_gt(t);
  }
  cells.push_back(current);
  return cells;
}

std::size_t cell_index(std::span<const Rational> thresholds, const Rational& value) {
  return static_cast<std::size_t>(std::lower_bound(thresholds.begin(), thresholds.end(), value) -
                                  thresholds.begin());
}

}  // namespace xplain
