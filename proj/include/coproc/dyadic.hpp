#pragma once

// Exact dyadic and rational numbers on checked 64-bit integers, and the
// extended reals built from dyadics plus the two infinities.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <ostream>
#include <string>

#include "coproc/error.hpp"

namespace coproc {

namespace detail {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw BoundError("arithmetic overflow");
  return r;
}
inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw BoundError("arithmetic overflow");
  return r;
}
inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw BoundError("arithmetic overflow");
  return r;
}
inline std::int64_t checked_shl(std::int64_t a, unsigned k) {
  if (k >= 63) {
    if (a == 0) return 0;
    throw BoundError("arithmetic overflow");
  }
  return checked_mul(a, std::int64_t{1} << k);
}

inline bool parse_int64(const std::string& s, std::int64_t& out) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (std::size_t j = i; j < s.size(); ++j)
    if (s[j] < '0' || s[j] > '9') return false;
  try {
    out = std::stoll(s);
  } catch (const std::exception&) {
    return false;
  }
  return true;
}

}  // namespace detail

// value = numerator / 2^exponent, in lowest terms.
class Dyadic {
 public:
  static constexpr unsigned max_exponent = 62;

  constexpr Dyadic() = default;
  Dyadic(std::int64_t numerator, unsigned exponent = 0) : num_(numerator), exp_(exponent) {
    if (exp_ > max_exponent) throw BoundError("dyadic exponent exceeds 62");
    normalize();
  }

  std::int64_t numerator() const { return num_; }
  unsigned exponent() const { return exp_; }
  bool is_integer() const { return exp_ == 0; }
  int sign() const { return (num_ > 0) - (num_ < 0); }

  // Largest integer <= value.
  std::int64_t floor() const {
    if (exp_ == 0) return num_;
    const std::int64_t d = std::int64_t{1} << exp_;
    std::int64_t q = num_ / d;
    if (num_ % d != 0 && num_ < 0) --q;
    return q;
  }
  std::int64_t ceil() const { return -(-*this).floor(); }

  friend Dyadic operator-(const Dyadic& a) { return Dyadic(detail::checked_sub(0, a.num_), a.exp_); }

  friend Dyadic operator+(const Dyadic& a, const Dyadic& b) {
    const unsigned e = std::max(a.exp_, b.exp_);
    return Dyadic(detail::checked_add(detail::checked_shl(a.num_, e - a.exp_),
                                      detail::checked_shl(b.num_, e - b.exp_)),
                  e);
  }
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }
  friend Dyadic operator*(const Dyadic& a, const Dyadic& b) {
    return Dyadic(detail::checked_mul(a.num_, b.num_), a.exp_ + b.exp_);
  }
  // Exact halving.
  Dyadic half() const { return Dyadic(num_, exp_ + 1); }

  friend bool operator==(const Dyadic&, const Dyadic&) = default;
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
    const unsigned e = std::max(a.exp_, b.exp_);
    return detail::checked_shl(a.num_, e - a.exp_) <=> detail::checked_shl(b.num_, e - b.exp_);
  }

  // "n" for integers, "p/q" otherwise (q a power of two).
  std::string str() const {
    if (exp_ == 0) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(std::int64_t{1} << exp_);
  }
  friend std::ostream& operator<<(std::ostream& os, const Dyadic& d) { return os << d.str(); }

 private:
  void normalize() {
    if (num_ == 0) {
      exp_ = 0;
      return;
    }
    while (exp_ > 0 && (num_ & 1) == 0) {
      num_ /= 2;
      --exp_;
    }
  }

  std::int64_t num_ = 0;
  unsigned exp_ = 0;
};

// Reduced fraction with positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1) : num_(num), den_(den) {
    if (den_ == 0) throw DomainError("rational with zero denominator");
    if (den_ < 0) {
      num_ = detail::checked_sub(0, num_);
      den_ = detail::checked_sub(0, den_);
    }
    const std::int64_t g = std::gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }
  Rational(const Dyadic& d) : Rational(d.numerator(), std::int64_t{1} << d.exponent()) {}  // NOLINT

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_dyadic() const { return (den_ & (den_ - 1)) == 0; }
  Dyadic to_dyadic() const {
    if (!is_dyadic()) throw DomainError("rational " + str() + " is not dyadic");
    unsigned e = 0;
    while ((std::int64_t{1} << e) < den_) ++e;
    return Dyadic(num_, e);
  }

  friend Rational operator-(const Rational& a) { return Rational(detail::checked_sub(0, a.num_), a.den_); }
  friend Rational operator+(const Rational& a, const Rational& b) {
    const std::int64_t g = std::gcd(a.den_, b.den_);
    const std::int64_t l = detail::checked_mul(a.den_ / g, b.den_);
    return Rational(detail::checked_add(detail::checked_mul(a.num_, l / a.den_),
                                        detail::checked_mul(b.num_, l / b.den_)),
                    l);
  }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    const std::int64_t g1 = std::gcd(a.num_, b.den_), g2 = std::gcd(b.num_, a.den_);
    return Rational(detail::checked_mul(a.num_ / (g1 ? g1 : 1), b.num_ / (g2 ? g2 : 1)),
                    detail::checked_mul(a.den_ / (g2 ? g2 : 1), b.den_ / (g1 ? g1 : 1)));
  }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const __int128 l = static_cast<__int128>(a.num_) * b.den_;
    const __int128 r = static_cast<__int128>(b.num_) * a.den_;
    return l <=> r;
  }

  std::string str() const {
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
  }
  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

// Parses "n", "p/q", "p/2^k" and finite decimals such as "-1.25".
inline Rational parse_rational(const std::string& text) {
  std::int64_t a = 0, b = 0;
  if (detail::parse_int64(text, a)) return Rational(a);
  if (auto slash = text.find('/'); slash != std::string::npos) {
    const std::string lhs = text.substr(0, slash), rhs = text.substr(slash + 1);
    if (!detail::parse_int64(lhs, a)) throw InputError("bad numerator in '" + text + "'");
    if (rhs.rfind("2^", 0) == 0) {
      std::int64_t k = 0;
      if (!detail::parse_int64(rhs.substr(2), k) || k < 0 || k > Dyadic::max_exponent)
        throw InputError("bad exponent in '" + text + "'");
      return Rational(Dyadic(a, static_cast<unsigned>(k)));
    }
    if (!detail::parse_int64(rhs, b) || b <= 0) throw InputError("bad denominator in '" + text + "'");
    return Rational(a, b);
  }
  if (auto dot = text.find('.'); dot != std::string::npos) {
    const std::string whole = text.substr(0, dot), frac = text.substr(dot + 1);
    if (frac.empty() || frac.find_first_not_of("0123456789") != std::string::npos || frac.size() > 17)
      throw InputError("bad decimal '" + text + "'");
    const bool negative = !whole.empty() && whole[0] == '-';
    std::int64_t w = 0;
    if (!whole.empty() && whole != "-" && whole != "+" && !detail::parse_int64(whole, w))
      throw InputError("bad decimal '" + text + "'");
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale = detail::checked_mul(scale, 10);
    const Rational f(std::stoll(frac), scale);
    const Rational mag = Rational(w < 0 ? -w : w) + f;
    return negative ? -mag : mag;
  }
  throw InputError("not a number: '" + text + "'");
}

class ExtReal {
 public:
  enum class Kind { finite, pos_inf, neg_inf };

  ExtReal(Dyadic d) : kind_(Kind::finite), value_(d) {}  // NOLINT
  static ExtReal pos_inf() { return ExtReal(Kind::pos_inf); }
  static ExtReal neg_inf() { return ExtReal(Kind::neg_inf); }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::finite; }
  const Dyadic& value() const {
    if (!is_finite()) throw DomainError("infinite extended real has no dyadic value");
    return value_;
  }

  friend bool operator==(const ExtReal& a, const ExtReal& b) {
    return a.kind_ == b.kind_ && (a.kind_ != Kind::finite || a.value_ == b.value_);
  }
  friend std::strong_ordering operator<=>(const ExtReal& a, const ExtReal& b) {
    auto rank = [](Kind k) { return k == Kind::neg_inf ? 0 : k == Kind::finite ? 1 : 2; };
    if (a.kind_ != b.kind_ || a.kind_ != Kind::finite) return rank(a.kind_) <=> rank(b.kind_);
    return a.value_ <=> b.value_;
  }

  std::string str() const {
    switch (kind_) {
      case Kind::pos_inf: return "inf";
      case Kind::neg_inf: return "-inf";
      default: return value_.str();
    }
  }
  friend std::ostream& operator<<(std::ostream& os, const ExtReal& x) { return os << x.str(); }

 private:
  explicit ExtReal(Kind k) : kind_(k) {}
  Kind kind_;
  Dyadic value_;
};

}  // namespace coproc
