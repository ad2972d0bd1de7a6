#pragma once

// Extended real numbers with an exact rational representation.
//
// An ExtReal is one of: an exact rational, a finite double, +inf or -inf.
// Arithmetic keeps values exact as long as every operand is exact and the
// operation has a rational result; otherwise the result degrades to a
// double. The undefined forms inf - inf and 0 * inf throw.

#include <boost/multiprecision/cpp_int.hpp>

#include <charconv>
#include <cmath>
#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>

namespace wass {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Malformed or out-of-domain input.
class invalid_input : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// inf - inf, 0 * inf and similar forms that have no value.
class undefined_arithmetic : public invalid_input {
 public:
  using invalid_input::invalid_input;
};

/// A computation whose preconditions cannot be certified.
class refused_computation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exponent in [1, inf] used for l^p norms, p-metrics and Wasserstein orders.
class Exponent {
 public:
  constexpr Exponent() = default;
  constexpr Exponent(double p) : value_(p) {  // NOLINT(google-explicit-constructor)
    if (!(p >= 1.0)) throw invalid_input("exponent must lie in [1, inf]");
  }
  static constexpr Exponent infinity() {
    return Exponent(std::numeric_limits<double>::infinity());
  }

  static Exponent parse(std::string_view text) {
    if (text == "inf" || text == "+inf") return infinity();
    double v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size())
      throw invalid_input("cannot parse exponent '" + std::string(text) + "'");
    return Exponent(v);
  }

  constexpr bool is_infinite() const { return std::isinf(value_); }
  constexpr bool is_integer() const {
    return !is_infinite() && value_ == std::floor(value_) && value_ < 1e6;
  }
  constexpr double value() const { return value_; }
  constexpr unsigned as_uint() const { return static_cast<unsigned>(value_); }

  std::string str() const {
    if (is_infinite()) return "inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, value_);
    return std::string(buf, res.ptr);
  }

  friend constexpr auto operator<=>(Exponent a, Exponent b) {
    return a.value_ <=> b.value_;
  }
  friend constexpr bool operator==(Exponent a, Exponent b) = default;

 private:
  double value_ = 1.0;
};

namespace detail {

inline BigInt ipow(const BigInt& base, unsigned e) {
  BigInt result = 1;
  BigInt b = base;
  while (e != 0) {
    if (e & 1U) result *= b;
    e >>= 1U;
    if (e != 0) b *= b;
  }
  return result;
}

inline Rational ipow(const Rational& base, unsigned e) {
  return Rational(ipow(boost::multiprecision::numerator(base), e),
                  ipow(boost::multiprecision::denominator(base), e));
}

// Exact k-th root of a nonnegative integer, if it exists.
inline std::optional<BigInt> exact_iroot(const BigInt& x, unsigned k) {
  if (x < 0) return std::nullopt;
  if (x < 2 || k == 1) return x;
  // Newton iteration from above converges to floor(x^(1/k)).
  unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(x)) + 1;
  BigInt r = BigInt(1) << (bits / k + 1);
  for (;;) {
    BigInt next = ((k - 1) * r + x / ipow(r, k - 1)) / k;
    if (next >= r) break;
    r = next;
  }
  if (ipow(r, k) == x) return r;
  return std::nullopt;
}

inline std::optional<Rational> exact_root(const Rational& x, unsigned k) {
  auto n = exact_iroot(boost::multiprecision::numerator(x), k);
  if (!n) return std::nullopt;
  auto d = exact_iroot(boost::multiprecision::denominator(x), k);
  if (!d) return std::nullopt;
  return Rational(*n, *d);
}

// Decimal digits only; leading zeros would otherwise select octal.
inline BigInt decimal_bigint(std::string_view digits) {
  auto first = digits.find_first_not_of('0');
  if (first == std::string_view::npos) return 0;
  return BigInt(std::string(digits.substr(first)));
}

inline bool terminating_decimal(BigInt den, unsigned& digits) {
  unsigned twos = 0, fives = 0;
  while (den % 2 == 0) { den /= 2; ++twos; }
  while (den % 5 == 0) { den /= 5; ++fives; }
  digits = std::max(twos, fives);
  return den == 1;
}

}  // namespace detail

class ExtReal {
 public:
  enum class Kind : std::uint8_t { exact, approx, pos_inf, neg_inf };

  ExtReal() = default;
  ExtReal(int v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  ExtReal(Rational v) : q_(std::move(v)) {}  // NOLINT(google-explicit-constructor)

  static ExtReal approx(double v) {
    if (std::isnan(v)) throw undefined_arithmetic("NaN is not an extended real");
    if (std::isinf(v)) return v > 0 ? infinity() : neg_infinity();
    ExtReal r;
    r.kind_ = Kind::approx;
    r.f_ = v;
    return r;
  }
  static ExtReal infinity() {
    ExtReal r;
    r.kind_ = Kind::pos_inf;
    return r;
  }
  static ExtReal neg_infinity() {
    ExtReal r;
    r.kind_ = Kind::neg_inf;
    return r;
  }

  /// Parses "inf", "-inf", "p/q", or a decimal (with optional exponent).
  /// In exact mode decimals become rationals, otherwise doubles.
  static ExtReal parse(std::string_view text, bool exact);

  Kind kind() const { return kind_; }
  bool is_exact() const { return kind_ == Kind::exact; }
  bool is_finite() const { return kind_ == Kind::exact || kind_ == Kind::approx; }
  bool is_inf() const { return kind_ == Kind::pos_inf; }
  bool is_neg_inf() const { return kind_ == Kind::neg_inf; }
  int sign() const {
    switch (kind_) {
      case Kind::exact: return q_.sign();
      case Kind::approx: return (f_ > 0) - (f_ < 0);
      case Kind::pos_inf: return 1;
      case Kind::neg_inf: return -1;
    }
    return 0;
  }
  bool is_zero() const { return is_finite() && sign() == 0; }

  /// Exact value; only valid when is_exact().
  const Rational& rational() const { return q_; }

  double to_double() const {
    switch (kind_) {
      case Kind::exact: return static_cast<double>(q_);
      case Kind::approx: return f_;
      case Kind::pos_inf: return std::numeric_limits<double>::infinity();
      case Kind::neg_inf: return -std::numeric_limits<double>::infinity();
    }
    return 0;
  }

  /// Same value as a double-backed ExtReal.
  ExtReal to_approx() const { return is_exact() ? approx(to_double()) : *this; }

  std::string str() const;

  ExtReal operator-() const {
    switch (kind_) {
      case Kind::exact: return ExtReal(Rational(-q_));
      case Kind::approx: return approx(-f_);
      case Kind::pos_inf: return neg_infinity();
      case Kind::neg_inf: return infinity();
    }
    return {};
  }

  friend ExtReal operator+(const ExtReal& a, const ExtReal& b) {
    if (!a.is_finite() || !b.is_finite()) {
      if (a.is_finite()) return b;
      if (b.is_finite()) return a;
      if (a.kind_ != b.kind_) throw undefined_arithmetic("inf - inf is undefined");
      return a;
    }
    if (a.is_exact() && b.is_exact()) return ExtReal(Rational(a.q_ + b.q_));
    return approx(a.to_double() + b.to_double());
  }
  friend ExtReal operator-(const ExtReal& a, const ExtReal& b) { return a + (-b); }

  friend ExtReal operator*(const ExtReal& a, const ExtReal& b) {
    if (!a.is_finite() || !b.is_finite()) {
      int s = a.sign() * b.sign();
      if (s == 0) throw undefined_arithmetic("0 * inf is undefined");
      return s > 0 ? infinity() : neg_infinity();
    }
    if (a.is_exact() && b.is_exact()) return ExtReal(Rational(a.q_ * b.q_));
    return approx(a.to_double() * b.to_double());
  }

  friend ExtReal operator/(const ExtReal& a, const ExtReal& b) {
    if (b.is_zero()) throw undefined_arithmetic("division by zero");
    if (!b.is_finite()) {
      if (!a.is_finite()) throw undefined_arithmetic("inf / inf is undefined");
      return ExtReal(0);
    }
    if (!a.is_finite()) return (a.sign() * b.sign() > 0) ? infinity() : neg_infinity();
    if (a.is_exact() && b.is_exact()) return ExtReal(Rational(a.q_ / b.q_));
    return approx(a.to_double() / b.to_double());
  }

  ExtReal& operator+=(const ExtReal& o) { return *this = *this + o; }
  ExtReal& operator-=(const ExtReal& o) { return *this = *this - o; }
  ExtReal& operator*=(const ExtReal& o) { return *this = *this * o; }

  /// Total order; exact and approximate values are compared by value.
  friend std::strong_ordering operator<=>(const ExtReal& a, const ExtReal& b) {
    auto rank = [](Kind k) { return k == Kind::neg_inf ? 0 : k == Kind::pos_inf ? 2 : 1; };
    int ra = rank(a.kind_), rb = rank(b.kind_);
    if (ra != rb || ra != 1) return ra <=> rb;
    if (a.is_exact() && b.is_exact()) return cmp(a.q_, b.q_);
    if (!a.is_exact() && !b.is_exact()) {
      return a.f_ < b.f_ ? std::strong_ordering::less
             : a.f_ > b.f_ ? std::strong_ordering::greater
                           : std::strong_ordering::equal;
    }
    // Mixed: compare against the exact rational value of the double.
    Rational qa = a.is_exact() ? a.q_ : Rational(a.f_);
    Rational qb = b.is_exact() ? b.q_ : Rational(b.f_);
    return cmp(qa, qb);
  }
  friend bool operator==(const ExtReal& a, const ExtReal& b) {
    return (a <=> b) == std::strong_ordering::equal;
  }

 private:
  static std::strong_ordering cmp(const Rational& a, const Rational& b) {
    int c = a.compare(b);
    return c < 0 ? std::strong_ordering::less
           : c > 0 ? std::strong_ordering::greater
                   : std::strong_ordering::equal;
  }

  Kind kind_ = Kind::exact;
  double f_ = 0.0;
  Rational q_;
};

inline ExtReal abs(const ExtReal& x) { return x.sign() < 0 ? -x : x; }
inline const ExtReal& min(const ExtReal& a, const ExtReal& b) { return b < a ? b : a; }
inline const ExtReal& max(const ExtReal& a, const ExtReal& b) { return a < b ? b : a; }

/// x^p for x >= 0. Exact for exact x and integer p.
inline ExtReal pow(const ExtReal& x, Exponent p) {
  if (x.sign() < 0) throw invalid_input("pow of a negative extended real");
  if (p.is_infinite()) throw invalid_input("pow with infinite exponent");
  if (x.is_inf()) return x;
  if (x.is_exact() && p.is_integer()) return ExtReal(detail::ipow(x.rational(), p.as_uint()));
  return ExtReal::approx(std::pow(x.to_double(), p.value()));
}

/// x^(1/p) for x >= 0. Exact whenever the root is rational.
inline ExtReal root(const ExtReal& x, Exponent p) {
  if (x.sign() < 0) throw invalid_input("root of a negative extended real");
  if (p.is_infinite()) throw invalid_input("root with infinite exponent");
  if (x.is_inf() || p.value() == 1.0) return x;
  if (x.is_exact() && p.is_integer()) {
    if (auto r = detail::exact_root(x.rational(), p.as_uint())) return ExtReal(*r);
  }
  return ExtReal::approx(std::pow(x.to_double(), 1.0 / p.value()));
}

/// l^p norm of a vector of nonnegative extended reals; the empty norm is 0.
inline ExtReal lp_norm(std::span<const ExtReal> v, Exponent p) {
  for (const auto& x : v)
    if (x.sign() < 0) throw invalid_input("lp_norm of a negative entry");
  if (p.is_infinite()) {
    ExtReal m = 0;
    for (const auto& x : v) m = max(m, x);
    return m;
  }
  ExtReal sum = 0;
  for (const auto& x : v) {
    if (x.is_inf()) return x;
    sum += p.value() == 1.0 ? x : pow(x, p);
  }
  return root(sum, p);
}

inline ExtReal lp_norm(std::initializer_list<ExtReal> v, Exponent p) {
  return lp_norm(std::span<const ExtReal>(v.begin(), v.size()), p);
}

/// |a - b| <= tol * max(1, |a|, |b|); exact values compare exactly. Two
/// infinities of the same sign are close.
inline bool approx_equal(const ExtReal& a, const ExtReal& b, double tol = 1e-9) {
  if (a.is_exact() && b.is_exact()) return a == b;
  if (!a.is_finite() || !b.is_finite()) return a == b;
  double x = a.to_double(), y = b.to_double();
  double scale = std::max({1.0, std::fabs(x), std::fabs(y)});
  return std::fabs(x - y) <= tol * scale;
}

inline ExtReal ExtReal::parse(std::string_view text, bool exact) {
  auto fail = [&] {
    return invalid_input("cannot parse number '" + std::string(text) + "'");
  };
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r'))
    text.remove_suffix(1);
  if (text.empty()) throw fail();
  if (text == "inf" || text == "+inf") return infinity();
  if (text == "-inf") return neg_infinity();

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto parse_int = [&](std::string_view s) {
      if (s.empty()) throw fail();
      std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
      if (i == s.size()) throw fail();
      for (std::size_t j = i; j < s.size(); ++j)
        if (s[j] < '0' || s[j] > '9') throw fail();
      BigInt v = detail::decimal_bigint(s.substr(i));
      return s[0] == '-' ? BigInt(-v) : v;
    };
    BigInt num = parse_int(text.substr(0, slash));
    BigInt den = parse_int(text.substr(slash + 1));
    if (den == 0) throw fail();
    Rational q(num, den);
    return exact ? ExtReal(q) : approx(static_cast<double>(q));
  }

  if (!exact) {
    double v = 0;
    std::string_view s = text;
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) throw fail();
    return approx(v);
  }

  // Exact decimal: [sign] digits [. digits] [e [sign] digits]
  std::size_t i = 0;
  bool negative = false;
  if (text[i] == '+' || text[i] == '-') negative = text[i++] == '-';
  std::string digits;
  long frac_digits = 0;
  bool seen_point = false, any_digit = false;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c >= '0' && c <= '9') {
      digits.push_back(c);
      any_digit = true;
      if (seen_point) ++frac_digits;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!any_digit) throw fail();
  long exponent = 0;
  if (i < text.size()) {
    if (text[i] != 'e' && text[i] != 'E') throw fail();
    ++i;
    std::string_view e = text.substr(i);
    if (!e.empty() && e.front() == '+') e.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(e.data(), e.data() + e.size(), exponent);
    if (ec != std::errc() || ptr != e.data() + e.size() || e.empty()) throw fail();
    if (exponent > 4000 || exponent < -4000) throw fail();
  }
  BigInt num = detail::decimal_bigint(digits);
  long shift = exponent - frac_digits;
  Rational q = shift >= 0 ? Rational(num * detail::ipow(BigInt(10), static_cast<unsigned>(shift)))
                          : Rational(num, detail::ipow(BigInt(10), static_cast<unsigned>(-shift)));
  if (negative) q = -q;
  return ExtReal(q);
}

inline std::string ExtReal::str() const {
  switch (kind_) {
    case Kind::pos_inf: return "inf";
    case Kind::neg_inf: return "-inf";
    case Kind::approx: {
      char buf[64];
      auto res = std::to_chars(buf, buf + sizeof buf, f_);
      return std::string(buf, res.ptr);
    }
    case Kind::exact: break;
  }
  const BigInt& num = boost::multiprecision::numerator(q_);
  const BigInt& den = boost::multiprecision::denominator(q_);
  unsigned digits = 0;
  if (!detail::terminating_decimal(den, digits)) return num.str() + "/" + den.str();
  BigInt scaled = abs(num) * detail::ipow(BigInt(10), digits) / den;
  std::string s = scaled.str();
  if (digits > 0) {
    if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
    s.insert(s.size() - digits, ".");
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  }
  return (num < 0 ? "-" : "") + s;
}

}  // namespace wass
