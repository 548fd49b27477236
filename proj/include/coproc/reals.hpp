#pragma once

// Sign strings and the alternating dyadic codec between them and the
// extended reals, plus the retraction between sign strings and numeric
// games.

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <unordered_map>
#include <vector>

#include "coproc/dyadic.hpp"
#include "coproc/error.hpp"
#include "coproc/games.hpp"

namespace coproc::reals {

class SignString {
 public:
  enum class Kind { finite, pos_inf, neg_inf };

  SignString() = default;
  explicit SignString(std::string signs) : signs_(std::move(signs)) {
    for (char c : signs_)
      if (c != '+' && c != '-') throw InputError("sign string may contain only '+' and '-'");
  }
  static SignString pos_inf() { return SignString(Kind::pos_inf); }
  static SignString neg_inf() { return SignString(Kind::neg_inf); }

  // "+-+", "" , "inf", "+inf", "-inf".
  static SignString parse(const std::string& text) {
    if (text == "inf" || text == "+inf") return pos_inf();
    if (text == "-inf") return neg_inf();
    return SignString(text);
  }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::finite; }
  const std::string& signs() const {
    if (!is_finite()) throw DomainError("infinite sign string has no finite signs");
    return signs_;
  }
  std::size_t size() const { return signs().size(); }

  std::string str() const {
    switch (kind_) {
      case Kind::pos_inf: return "inf";
      case Kind::neg_inf: return "-inf";
      default: return signs_;
    }
  }
  friend std::ostream& operator<<(std::ostream& os, const SignString& s) { return os << s.str(); }
  friend bool operator==(const SignString&, const SignString&) = default;

 private:
  explicit SignString(Kind k) : kind_(k) {}
  Kind kind_ = Kind::finite;
  std::string signs_;
};

// Length of the maximal constant initial run.
inline std::size_t unary_run(const std::string& s) {
  std::size_t z = 0;
  while (z < s.size() && s[z] == s[0]) ++z;
  return z;
}

inline ExtReal phi(const SignString& s) {
  if (s.kind() == SignString::Kind::pos_inf) return ExtReal::pos_inf();
  if (s.kind() == SignString::Kind::neg_inf) return ExtReal::neg_inf();
  const std::string& v = s.signs();
  if (v.empty()) return Dyadic(0);
  const std::size_t z = unary_run(v);
  const std::int64_t first = v[0] == '+' ? 1 : -1;
  Dyadic sum(coproc::detail::checked_mul(static_cast<std::int64_t>(z), first));
  for (std::size_t i = z; i < v.size(); ++i) {
    const std::size_t k = i + 1 - z;
    if (k > Dyadic::max_exponent) throw BoundError("sign string too long for 64-bit dyadics");
    sum = sum + Dyadic(v[i] == '+' ? 1 : -1, static_cast<unsigned>(k));
  }
  return sum;
}

namespace detail {

// Greedy expansion: a unary run to the nearest integer on the far side of
// x from zero, then alternating halving steps. Stops at max_len signs or
// when x is hit exactly.
inline std::string expand(const Rational& x, std::size_t max_len) {
  std::string out;
  if (x == Rational(0)) return out;
  // x > 0 lies in (n-1, n], x < 0 in [-n, -n+1).
  const Rational m = x > Rational(0) ? x : -x;
  const std::int64_t n = m.num() / m.den() + (m.num() % m.den() != 0 ? 1 : 0);
  const char unit = x > Rational(0) ? '+' : '-';
  for (std::int64_t i = 0; i < n && out.size() < max_len; ++i) out.push_back(unit);
  Dyadic v(x > Rational(0) ? n : -n);
  Dyadic w(1, 1);
  while (out.size() < max_len && Rational(v) != x) {
    if (Rational(v) > x) {
      out.push_back('-');
      v = v - w;
    } else {
      out.push_back('+');
      v = v + w;
    }
    if (out.size() < max_len && Rational(v) != x) w = w.half();
  }
  return out;
}

}  // namespace detail

inline SignString encode(const ExtReal& x) {
  if (x.kind() == ExtReal::Kind::pos_inf) return SignString::pos_inf();
  if (x.kind() == ExtReal::Kind::neg_inf) return SignString::neg_inf();
  return SignString(detail::expand(Rational(x.value()), static_cast<std::size_t>(-1)));
}

inline SignString encode(const Rational& x) {
  if (!x.is_dyadic()) throw DomainError(x.str() + " is not dyadic; use encode_approx");
  return encode(ExtReal(x.to_dyadic()));
}

// Length-max_len prefix of the (possibly infinite) greedy expansion.
inline SignString encode_approx(const Rational& x, std::size_t max_len) {
  if (max_len == 0) throw DomainError("encode_approx: max_len must be at least 1");
  return SignString(detail::expand(x, max_len));
}

// Position-wise comparison with the shorter string padded by a neutral
// symbol sitting between '-' and '+'.
inline std::strong_ordering lex_cmp(const SignString& s, const SignString& t) {
  auto rank = [](SignString::Kind k) {
    return k == SignString::Kind::neg_inf ? 0 : k == SignString::Kind::finite ? 1 : 2;
  };
  if (!s.is_finite() || !t.is_finite()) return rank(s.kind()) <=> rank(t.kind());
  const std::string& a = s.signs();
  const std::string& b = t.signs();
  auto at = [](const std::string& v, std::size_t i) { return i < v.size() ? (v[i] == '+' ? 1 : -1) : 0; };
  for (std::size_t i = 0; i < std::max(a.size(), b.size()); ++i)
    if (auto c = at(a, i) <=> at(b, i); c != 0) return c;
  return std::strong_ordering::equal;
}

// Shortest-sign-string dyadic strictly between the bounds (absent bound =
// unbounded on that side).
inline Dyadic simplest_between(const std::optional<Dyadic>& lo, const std::optional<Dyadic>& hi) {
  if (lo && hi && !(*lo < *hi))
    throw DomainError("simplest_between: empty interval (" + lo->str() + ", " + hi->str() + ")");
  const Dyadic zero(0);
  if ((!lo || *lo < zero) && (!hi || zero < *hi)) return zero;
  if (hi && !(zero < *hi)) {
    // Everything is negative: mirror.
    std::optional<Dyadic> mlo, mhi;
    mlo = -*hi;
    if (lo) mhi = -*lo;
    return -simplest_between(mlo, mhi);
  }
  const std::int64_t a = lo->floor();
  const Dyadic next(coproc::detail::checked_add(a, 1));
  if (!hi || next < *hi) return next;
  Dyadic l(a), r = next;
  for (;;) {
    const Dyadic m = (l + r).half();
    if (*lo < m && m < *hi) return m;
    if (!(*lo < m)) l = m; else r = m;
  }
}

inline Dyadic simplest_between(const std::optional<ExtReal>& lo, const std::optional<ExtReal>& hi) {
  if ((lo && lo->kind() == ExtReal::Kind::pos_inf) || (hi && hi->kind() == ExtReal::Kind::neg_inf))
    throw DomainError("simplest_between: empty interval");
  std::optional<Dyadic> l, h;
  if (lo && lo->is_finite()) l = lo->value();
  if (hi && hi->is_finite()) h = hi->value();
  return simplest_between(l, h);
}

// Prefix method: left options are the games of proper prefixes below s,
// right options those of prefixes above.
inline games::GameId gamma_in(games::GameStore& st, const SignString& s) {
  if (!s.is_finite()) throw DomainError("gamma: truncate infinite sign strings first");
  const std::string& v = s.signs();
  std::vector<games::GameId> ids;  // ids[k] = game of the length-k prefix
  for (std::size_t k = 0; k <= v.size(); ++k) {
    const SignString p(v.substr(0, k));
    std::vector<games::GameId> l, r;
    for (std::size_t j = 0; j < k; ++j) {
      const SignString q(v.substr(0, j));
      (lex_cmp(q, p) < 0 ? l : r).push_back(ids[j]);
    }
    ids.push_back(st.intern(std::move(l), std::move(r)));
  }
  return ids.back();
}

inline games::SignedGame gamma(const SignString& s) {
  games::GameStore st;
  return st.export_game(gamma_in(st, s));
}

// Numeric value of a numeric game, by the simplicity rule.
class Valuation {
 public:
  explicit Valuation(games::GameStore& st) : st_(st) {}

  Dyadic value(games::GameId g) {
    if (auto it = memo_.find(g); it != memo_.end()) return it->second;
    if (!st_.is_number(g)) throw DomainError("game is not a number");
    std::optional<Dyadic> lo, hi;
    for (games::GameId x : st_.left(g)) {
      const Dyadic d = value(x);
      if (!lo || *lo < d) lo = d;
    }
    for (games::GameId x : st_.right(g)) {
      const Dyadic d = value(x);
      if (!hi || d < *hi) hi = d;
    }
    const Dyadic out = simplest_between(lo, hi);
    memo_.emplace(g, out);
    return out;
  }

 private:
  games::GameStore& st_;
  std::unordered_map<games::GameId, Dyadic> memo_;
};

inline Dyadic game_value(const games::SignedGame& g) {
  games::GameStore st;
  const games::GameId id = st.import(g);
  return Valuation(st).value(id);
}

inline SignString upsilon(const games::SignedGame& g) { return encode(ExtReal(game_value(g))); }

}  // namespace coproc::reals
