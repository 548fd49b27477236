#pragma once

// A toy programming language (untyped lambda calculus, de Bruijn indices,
// natural literals, succ/pred/ifz, pairs) with a fuel-bounded evaluator,
// an application-based specializer, programs-as-processes stepping, a
// self-application fixpoint and a Mealy machine compiler.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <functional>
#include <istream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "coproc/error.hpp"
#include "coproc/proc.hpp"

namespace coproc::catcomp {

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  enum class Kind { var, lam, app, lit, succ, pred, ifz, pair, fst, snd };
  Kind kind;
  std::uint64_t n = 0;  // de Bruijn index or literal
  TermPtr a, b, c;
  std::uint64_t depth = 0;  // binders needed to close the term
};

inline TermPtr make(Term::Kind k, std::uint64_t n = 0, TermPtr a = {}, TermPtr b = {}, TermPtr c = {}) {
  std::uint64_t d = 0;
  if (k == Term::Kind::var) d = n + 1;
  else if (k == Term::Kind::lam) d = a->depth == 0 ? 0 : a->depth - 1;
  else
    for (const TermPtr* p : {&a, &b, &c})
      if (*p) d = std::max(d, (*p)->depth);
  return std::make_shared<const Term>(Term{k, n, std::move(a), std::move(b), std::move(c), d});
}

inline TermPtr var(std::uint64_t k) { return make(Term::Kind::var, k); }
inline TermPtr lam(TermPtr body) { return make(Term::Kind::lam, 0, std::move(body)); }
inline TermPtr app(TermPtr f, TermPtr x) { return make(Term::Kind::app, 0, std::move(f), std::move(x)); }
inline TermPtr lit(std::uint64_t n) { return make(Term::Kind::lit, n); }
inline TermPtr succ(TermPtr t) { return make(Term::Kind::succ, 0, std::move(t)); }
inline TermPtr pred(TermPtr t) { return make(Term::Kind::pred, 0, std::move(t)); }
inline TermPtr ifz(TermPtr c, TermPtr a, TermPtr b) {
  return make(Term::Kind::ifz, 0, std::move(c), std::move(a), std::move(b));
}
inline TermPtr pair(TermPtr a, TermPtr b) { return make(Term::Kind::pair, 0, std::move(a), std::move(b)); }
inline TermPtr fst(TermPtr t) { return make(Term::Kind::fst, 0, std::move(t)); }
inline TermPtr snd(TermPtr t) { return make(Term::Kind::snd, 0, std::move(t)); }

template <typename... Ts>
TermPtr apps(TermPtr f, Ts... xs) {
  ((f = app(f, xs)), ...);
  return f;
}

inline bool equal(const TermPtr& x, const TermPtr& y) {
  if (x == y) return true;
  if (!x || !y) return false;
  return x->kind == y->kind && x->n == y->n && equal(x->a, y->a) && equal(x->b, y->b) && equal(x->c, y->c);
}

// Number of binders a term needs around it to be closed.
inline std::uint64_t free_depth(const TermPtr& t) { return t->depth; }

inline bool closed(const TermPtr& t) { return free_depth(t) == 0; }

namespace detail {

// Replaces variable `depth` by the closed term `arg` and lowers the
// variables above it.
inline TermPtr subst(const TermPtr& t, std::uint64_t depth, const TermPtr& arg) {
  using K = Term::Kind;
  // Nothing free at or above depth: keep the node, and with it any sharing.
  if (t->depth <= depth) return t;
  switch (t->kind) {
    case K::var:
      if (t->n == depth) return arg;
      return t->n > depth ? var(t->n - 1) : t;
    case K::lit: return t;
    case K::lam: return lam(subst(t->a, depth + 1, arg));
    default:
      return make(t->kind, t->n, t->a ? subst(t->a, depth, arg) : nullptr, t->b ? subst(t->b, depth, arg) : nullptr,
                  t->c ? subst(t->c, depth, arg) : nullptr);
  }
}

struct OutOfFuelSignal {};

class Machine {
 public:
  explicit Machine(std::uint64_t fuel) : fuel_(fuel) {}

  void tick() {
    if (fuel_ == 0) throw OutOfFuelSignal{};
    --fuel_;
  }

  // Weak head normal form, normal order (leftmost outermost). Closed
  // terms have one whnf, so results are memoized by node: an argument
  // substituted in several places is reduced once.
  TermPtr whnf(TermPtr t) {
    using K = Term::Kind;
    std::vector<TermPtr> chain;
    auto done = [&](const TermPtr& v) {
      for (const TermPtr& u : chain) memo_.emplace(u.get(), std::make_pair(u, v));
      return v;
    };
    for (;;) {
      if (auto it = memo_.find(t.get()); it != memo_.end()) return done(it->second.second);
      switch (t->kind) {
        case K::lit:
        case K::lam:
        case K::pair: return done(t);
        case K::var: throw InputError("eval: open term");
        case K::app: {
          const TermPtr f = whnf(t->a);
          if (f->kind != K::lam) throw DomainError("eval: applying a non-function");
          tick();
          chain.push_back(t);
          t = subst(f->a, 0, t->b);
          continue;
        }
        case K::succ:
        case K::pred: {
          const TermPtr v = whnf(t->a);
          if (v->kind != K::lit) throw DomainError("eval: succ/pred of a non-literal");
          tick();
          chain.push_back(t);
          return done(lit(t->kind == K::succ ? v->n + 1 : (v->n == 0 ? 0 : v->n - 1)));
        }
        case K::ifz: {
          const TermPtr v = whnf(t->a);
          if (v->kind != K::lit) throw DomainError("eval: ifz on a non-literal");
          tick();
          chain.push_back(t);
          t = v->n == 0 ? t->b : t->c;
          continue;
        }
        case K::fst:
        case K::snd: {
          const TermPtr v = whnf(t->a);
          if (v->kind != K::pair) throw DomainError("eval: projection of a non-pair");
          tick();
          chain.push_back(t);
          t = t->kind == K::fst ? v->a : v->b;
          continue;
        }
      }
    }
  }

  // Weak head normal form, then pairs componentwise.
  TermPtr value(const TermPtr& t) {
    const TermPtr v = whnf(t);
    if (v->kind == Term::Kind::pair) return pair(value(v->a), value(v->b));
    return v;
  }

  std::uint64_t fuel_left() const { return fuel_; }

 private:
  std::uint64_t fuel_;
  // Keyed by node address; the stored key pointer keeps the node alive.
  std::unordered_map<const Term*, std::pair<TermPtr, TermPtr>> memo_;
};

}  // namespace detail

struct OutOfFuel {
  friend bool operator==(const OutOfFuel&, const OutOfFuel&) = default;
};

struct EvalResult {
  std::variant<TermPtr, OutOfFuel> result;

  bool ok() const { return std::holds_alternative<TermPtr>(result); }
  const TermPtr& value() const {
    if (!ok()) throw DomainError("evaluation ran out of fuel");
    return std::get<TermPtr>(result);
  }
};

inline constexpr std::uint64_t default_fuel = 100000;

inline EvalResult eval(const TermPtr& t, std::uint64_t fuel = default_fuel) {
  if (fuel == 0) throw InputError("eval: fuel must be positive");
  if (!closed(t)) throw InputError("eval: open term");
  detail::Machine m(fuel);
  try {
    return {m.value(t)};
  } catch (const detail::OutOfFuelSignal&) {
    return {OutOfFuel{}};
  }
}

// Results agree when both are values that print the same, or both ran
// out of fuel.
inline bool same_result(const EvalResult& x, const EvalResult& y) {
  if (x.ok() != y.ok()) return false;
  return !x.ok() || equal(x.value(), y.value());
}

inline TermPtr specialize(const TermPtr& p, const TermPtr& a) { return app(p, a); }

struct StepResult {
  std::uint64_t output = 0;
  TermPtr residual;
};

// One observable step of a program read as a process: p a must evaluate to
// a pair (literal output, residual program).
inline std::optional<StepResult> step(const TermPtr& p, std::uint64_t input, std::uint64_t fuel = default_fuel) {
  const EvalResult r = eval(app(p, lit(input)), fuel);
  if (!r.ok()) return std::nullopt;
  const TermPtr& v = r.value();
  if (v->kind != Term::Kind::pair || v->a->kind != Term::Kind::lit)
    throw ProtocolError("step: program did not produce a pair (literal, program)");
  return StepResult{v->a->n, v->b};
}

// fix(t) = r r with r = lam x. t (x x), built through the specializer.
inline TermPtr fix(const TermPtr& t) {
  if (!closed(t)) throw InputError("fix: open term");
  const TermPtr r = lam(app(t, app(var(0), var(0))));
  return specialize(r, r);
}

inline TermPtr omega() {
  const TermPtr w = lam(app(var(0), var(0)));
  return app(w, w);
}

// Selects cases[v] by an ifz chain on v, pred-ing as it goes; values past
// the end select the last case.
inline TermPtr select(const TermPtr& v, const std::vector<TermPtr>& cases) {
  if (cases.empty()) throw InputError("select: no cases");
  std::vector<TermPtr> probes{v};
  for (std::size_t i = 1; i < cases.size(); ++i) probes.push_back(pred(probes.back()));
  TermPtr out = cases.back();
  for (std::size_t i = cases.size() - 1; i-- > 0;) out = ifz(probes[i], cases[i], out);
  return out;
}

// Literal encoding of machine outputs: 0 for no output, k+1 for symbol k.
inline std::uint64_t encode_output(const std::optional<proc::Symbol>& s) { return s ? *s + 1 : 0; }

// One closed program per state. Stepping the program for state x on input
// literal a yields the machine's encoded output and the program for the
// next state.
inline std::vector<TermPtr> compile_mealy(const proc::MealyMachine& m) {
  const std::size_t ni = m.inputs().size();
  if (ni == 0) throw InputError("compile_mealy: empty input alphabet");
  // Body under binders self (2), x (1), a (0).
  std::vector<TermPtr> out_rows, next_rows;
  for (proc::MealyMachine::State x = 0; x < m.state_count(); ++x) {
    std::vector<TermPtr> outs, nexts;
    for (proc::Symbol a = 0; a < ni; ++a) {
      outs.push_back(lit(encode_output(m.at(x, a).output)));
      nexts.push_back(lit(m.at(x, a).next));
    }
    out_rows.push_back(select(var(0), outs));
    next_rows.push_back(select(var(0), nexts));
  }
  const TermPtr body = pair(select(var(1), out_rows), app(var(2), select(var(1), next_rows)));
  const TermPtr e = fix(lam(lam(lam(body))));
  std::vector<TermPtr> programs;
  for (proc::MealyMachine::State x = 0; x < m.state_count(); ++x) programs.push_back(specialize(e, lit(x)));
  return programs;
}

// S-expression syntax: (lam b) (app f x) (var k) (lit n) (succ t) (pred t)
// (ifz c a b) (pair a b) (fst t) (snd t).
inline TermPtr parse_term(const std::string& text) {
  std::size_t pos = 0;
  std::size_t line = 1;
  auto skip = [&] {
    while (pos < text.size()) {
      if (text[pos] == ';' || text[pos] == '#') {
        while (pos < text.size() && text[pos] != '\n') ++pos;
      } else if (std::isspace(static_cast<unsigned char>(text[pos]))) {
        if (text[pos] == '\n') ++line;
        ++pos;
      } else {
        break;
      }
    }
  };
  auto word = [&] {
    skip();
    const std::size_t start = pos;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) && text[pos] != '(' &&
           text[pos] != ')')
      ++pos;
    return text.substr(start, pos - start);
  };
  auto expect = [&](char c) {
    skip();
    if (pos >= text.size() || text[pos] != c) throw ParseError(line, std::string("expected '") + c + "'");
    ++pos;
  };
  auto number = [&] {
    const std::string w = word();
    if (w.empty() || w.size() > 18 || w.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError(line, "expected a natural number, got '" + w + "'");
    return static_cast<std::uint64_t>(std::stoull(w));
  };
  std::function<TermPtr()> term = [&]() -> TermPtr {
    expect('(');
    const std::string head = word();
    TermPtr out;
    if (head == "var") out = var(number());
    else if (head == "lit") out = lit(number());
    else if (head == "lam") out = lam(term());
    else if (head == "app") { auto f = term(); out = app(f, term()); }
    else if (head == "succ") out = succ(term());
    else if (head == "pred") out = pred(term());
    else if (head == "ifz") { auto c = term(); auto a = term(); out = ifz(c, a, term()); }
    else if (head == "pair") { auto a = term(); out = pair(a, term()); }
    else if (head == "fst") out = fst(term());
    else if (head == "snd") out = snd(term());
    else throw ParseError(line, "unknown form '" + head + "'");
    expect(')');
    return out;
  };
  const TermPtr t = term();
  skip();
  if (pos != text.size()) throw ParseError(line, "trailing input after term");
  return t;
}

inline TermPtr parse_term(std::istream& in) {
  std::ostringstream os;
  os << in.rdbuf();
  return parse_term(os.str());
}

inline void write_term(std::ostream& os, const TermPtr& t) {
  using K = Term::Kind;
  switch (t->kind) {
    case K::var: os << "(var " << t->n << ')'; return;
    case K::lit: os << "(lit " << t->n << ')'; return;
    case K::lam: os << "(lam "; write_term(os, t->a); os << ')'; return;
    case K::app: os << "(app "; break;
    case K::succ: os << "(succ "; break;
    case K::pred: os << "(pred "; break;
    case K::ifz: os << "(ifz "; break;
    case K::pair: os << "(pair "; break;
    case K::fst: os << "(fst "; break;
    case K::snd: os << "(snd "; break;
  }
  write_term(os, t->a);
  for (const TermPtr* p : {&t->b, &t->c})
    if (*p) {
      os << ' ';
      write_term(os, *p);
    }
  os << ')';
}

inline std::string to_string(const TermPtr& t) {
  std::ostringstream os;
  write_term(os, t);
  return os.str();
}

}  // namespace coproc::catcomp
