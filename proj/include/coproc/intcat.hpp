#pragma once

// Traced monoidal base instances and the Int construction over them.
// Two instances ship: finite relations under direct sum (trace by
// reachability through the fed-back block) and the discrete naturals.

#include <algorithm>
#include <cctype>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "coproc/error.hpp"

namespace coproc::intcat {

// Boolean matrix source x target.
class FinRel {
 public:
  FinRel() = default;
  FinRel(std::size_t source, std::size_t target) : source_(source), target_(target), bits_(source * target, 0) {}

  static FinRel identity(std::size_t n) {
    FinRel r(n, n);
    for (std::size_t i = 0; i < n; ++i) r.set(i, i);
    return r;
  }

  static FinRel from_pairs(std::size_t source, std::size_t target,
                           const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
    FinRel r(source, target);
    for (auto [i, j] : pairs) r.set(i, j);
    return r;
  }

  std::size_t source() const { return source_; }
  std::size_t target() const { return target_; }

  bool at(std::size_t i, std::size_t j) const {
    check(i, j);
    return bits_[i * target_ + j] != 0;
  }
  void set(std::size_t i, std::size_t j, bool v = true) {
    check(i, j);
    bits_[i * target_ + j] = v ? 1 : 0;
  }

  std::vector<std::pair<std::size_t, std::size_t>> pairs() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < source_; ++i)
      for (std::size_t j = 0; j < target_; ++j)
        if (bits_[i * target_ + j]) out.emplace_back(i, j);
    return out;
  }
  bool empty() const { return std::none_of(bits_.begin(), bits_.end(), [](char b) { return b != 0; }); }

  // Sub-block rows [r0, r0+rn) x cols [c0, c0+cn).
  FinRel block(std::size_t r0, std::size_t rn, std::size_t c0, std::size_t cn) const {
    if (r0 + rn > source_ || c0 + cn > target_) throw InputError("relation block out of range");
    FinRel out(rn, cn);
    for (std::size_t i = 0; i < rn; ++i)
      for (std::size_t j = 0; j < cn; ++j) out.bits_[i * cn + j] = bits_[(r0 + i) * target_ + c0 + j];
    return out;
  }

  friend bool operator==(const FinRel&, const FinRel&) = default;

 private:
  void check(std::size_t i, std::size_t j) const {
    if (i >= source_ || j >= target_)
      throw InputError("relation index (" + std::to_string(i) + ", " + std::to_string(j) + ") out of range");
  }

  std::size_t source_ = 0, target_ = 0;
  std::vector<char> bits_;
};

// f then g.
inline FinRel rel_compose(const FinRel& f, const FinRel& g) {
  if (f.target() != g.source())
    throw InputError("rel_compose: target size " + std::to_string(f.target()) + " does not match source size " +
                     std::to_string(g.source()));
  FinRel out(f.source(), g.target());
  for (std::size_t i = 0; i < f.source(); ++i)
    for (std::size_t k = 0; k < f.target(); ++k)
      if (f.at(i, k))
        for (std::size_t j = 0; j < g.target(); ++j)
          if (g.at(k, j)) out.set(i, j);
  return out;
}

inline FinRel rel_union(const FinRel& f, const FinRel& g) {
  if (f.source() != g.source() || f.target() != g.target()) throw InputError("rel_union: size mismatch");
  FinRel out = f;
  for (auto [i, j] : g.pairs()) out.set(i, j);
  return out;
}

// Reflexive-transitive closure of an endorelation.
inline FinRel rel_star(const FinRel& f) {
  if (f.source() != f.target()) throw InputError("rel_star: not an endorelation");
  FinRel out = FinRel::identity(f.source());
  const std::size_t n = f.source();
  for (auto [i, j] : f.pairs()) out.set(i, j);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (out.at(i, k))
        for (std::size_t j = 0; j < n; ++j)
          if (out.at(k, j)) out.set(i, j);
  return out;
}

// Block-diagonal direct sum.
inline FinRel rel_tensor(const FinRel& f, const FinRel& g) {
  FinRel out(f.source() + g.source(), f.target() + g.target());
  for (auto [i, j] : f.pairs()) out.set(i, j);
  for (auto [i, j] : g.pairs()) out.set(f.source() + i, f.target() + j);
  return out;
}

// A+B -> B+A.
inline FinRel rel_symmetry(std::size_t a, std::size_t b) {
  FinRel out(a + b, b + a);
  for (std::size_t i = 0; i < a; ++i) out.set(i, b + i);
  for (std::size_t i = 0; i < b; ++i) out.set(a + i, i);
  return out;
}

struct Blocks {
  std::size_t a = 0, y = 0, b = 0;
};

// f : A+Y -> B+Y. Tr(f) = f_AB u f_AY ; f_YY* ; f_YB.
inline FinRel rel_trace(const FinRel& f, const Blocks& k) {
  if (f.source() != k.a + k.y || f.target() != k.b + k.y)
    throw InputError("rel_trace: relation is " + std::to_string(f.source()) + "x" + std::to_string(f.target()) +
                     " but blocks give " + std::to_string(k.a + k.y) + "x" + std::to_string(k.b + k.y));
  const FinRel ab = f.block(0, k.a, 0, k.b);
  const FinRel ay = f.block(0, k.a, k.b, k.y);
  const FinRel yy = f.block(k.a, k.y, k.b, k.y);
  const FinRel yb = f.block(k.a, k.y, 0, k.b);
  return rel_union(ab, rel_compose(rel_compose(ay, rel_star(yy)), yb));
}

// A base instance is a record of static operations on objects and
// morphisms. Tensor is strict; compose(f, g) means f then g; trace(f, y)
// feeds the last y-block of f's target back into the last y-block of its
// source.
template <typename I>
concept TracedInstance = requires(const typename I::Obj& x, const typename I::Mor& f) {
  { I::unit() } -> std::same_as<typename I::Obj>;
  { I::otensor(x, x) } -> std::same_as<typename I::Obj>;
  { I::id(x) } -> std::same_as<typename I::Mor>;
  { I::compose(f, f) } -> std::same_as<typename I::Mor>;
  { I::tensor(f, f) } -> std::same_as<typename I::Mor>;
  { I::sym(x, x) } -> std::same_as<typename I::Mor>;
  { I::trace(f, x) } -> std::same_as<typename I::Mor>;
  { I::dom(f) } -> std::same_as<typename I::Obj>;
  { I::cod(f) } -> std::same_as<typename I::Obj>;
  { x == x } -> std::convertible_to<bool>;
};

struct RelInstance {
  using Obj = std::size_t;
  using Mor = FinRel;
  static Obj unit() { return 0; }
  static Obj otensor(Obj a, Obj b) { return a + b; }
  static Mor id(Obj a) { return FinRel::identity(a); }
  static Mor compose(const Mor& f, const Mor& g) { return rel_compose(f, g); }
  static Mor tensor(const Mor& f, const Mor& g) { return rel_tensor(f, g); }
  static Mor sym(Obj a, Obj b) { return rel_symmetry(a, b); }
  static Mor trace(const Mor& f, Obj y) {
    if (f.source() < y || f.target() < y) throw InputError("trace: feedback block larger than the morphism");
    return rel_trace(f, {f.source() - y, y, f.target() - y});
  }
  static Obj dom(const Mor& f) { return f.source(); }
  static Obj cod(const Mor& f) { return f.target(); }
};

// Discrete monoidal category on the naturals: only identities, tensor is
// addition.
struct NatMor {
  std::uint64_t n = 0;
  friend bool operator==(const NatMor&, const NatMor&) = default;
};

struct NatInstance {
  using Obj = std::uint64_t;
  using Mor = NatMor;
  static Obj unit() { return 0; }
  static Obj otensor(Obj a, Obj b) { return a + b; }
  static Mor id(Obj a) { return {a}; }
  static Mor compose(const Mor& f, const Mor& g) {
    if (f.n != g.n) throw InputError("nat: composing identities on different objects");
    return f;
  }
  static Mor tensor(const Mor& f, const Mor& g) { return {f.n + g.n}; }
  static Mor sym(Obj a, Obj b) { return {a + b}; }
  static Mor trace(const Mor& f, Obj y) {
    if (f.n < y) throw InputError("nat: trace block larger than the object");
    return {f.n - y};
  }
  static Obj dom(const Mor& f) { return f.n; }
  static Obj cod(const Mor& f) { return f.n; }
};

static_assert(TracedInstance<RelInstance>);
static_assert(TracedInstance<NatInstance>);

template <TracedInstance I>
struct IntObj {
  typename I::Obj minus{};
  typename I::Obj plus{};
  friend bool operator==(const IntObj&, const IntObj&) = default;
};

// f : A -> B is a base morphism A- + B+ -> B- + A+.
template <TracedInstance I>
struct IntMor {
  IntObj<I> dom;
  IntObj<I> cod;
  typename I::Mor base;

  IntMor(IntObj<I> d, IntObj<I> c, typename I::Mor m) : dom(d), cod(c), base(std::move(m)) {
    if (!(I::dom(base) == I::otensor(dom.minus, cod.plus)) || !(I::cod(base) == I::otensor(cod.minus, dom.plus)))
      throw InputError("int morphism: base morphism has the wrong type");
  }
  friend bool operator==(const IntMor&, const IntMor&) = default;
};

template <TracedInstance I>
IntMor<I> int_identity(const IntObj<I>& a) {
  return IntMor<I>(a, a, I::id(I::otensor(a.minus, a.plus)));
}

// f : A -> B, g : B -> C. Run both side by side, route the B wires of each
// into the other and trace them out.
template <TracedInstance I>
IntMor<I> int_compose(const IntMor<I>& f, const IntMor<I>& g) {
  if (!(f.cod == g.dom)) throw InputError("int_compose: codomain of the first does not match domain of the second");
  const auto& am = f.dom.minus;
  const auto& ap = f.dom.plus;
  const auto& bm = f.cod.minus;
  const auto& bp = f.cod.plus;
  const auto& cm = g.cod.minus;
  const auto& cp = g.cod.plus;
  const auto bb = I::otensor(bm, bp);
  // A- C+ B- B+  ->  A- B+ B- C+
  const auto in = I::tensor(I::id(am), I::compose(I::sym(cp, bb), I::tensor(I::sym(bm, bp), I::id(cp))));
  // B- A+ C- B+  ->  C- A+ B- B+
  const auto out = I::compose(I::tensor(I::sym(bm, I::otensor(ap, cm)), I::id(bp)),
                              I::tensor(I::sym(ap, cm), I::id(bb)));
  const auto body = I::compose(I::compose(in, I::tensor(f.base, g.base)), out);
  return IntMor<I>(f.dom, g.cod, I::trace(body, bb));
}

template <TracedInstance I>
IntObj<I> int_tensor(const IntObj<I>& a, const IntObj<I>& b) {
  return {I::otensor(a.minus, b.minus), I::otensor(a.plus, b.plus)};
}

// Integers as formal differences plus - minus.
struct ZPair {
  std::uint64_t m_minus = 0;
  std::uint64_t m_plus = 0;
  friend bool operator==(const ZPair&, const ZPair&) = default;

  std::int64_t value() const { return static_cast<std::int64_t>(m_plus) - static_cast<std::int64_t>(m_minus); }
  std::string str() const { return "<" + std::to_string(m_minus) + "," + std::to_string(m_plus) + ">"; }
};

inline ZPair znorm(const ZPair& z) {
  const std::uint64_t k = std::min(z.m_minus, z.m_plus);
  return {z.m_minus - k, z.m_plus - k};
}

inline ZPair ztensor(const ZPair& a, const ZPair& b) { return {a.m_minus + b.m_minus, a.m_plus + b.m_plus}; }

inline IntObj<NatInstance> to_int_obj(const ZPair& z) { return {z.m_minus, z.m_plus}; }
inline ZPair to_zpair(const IntObj<NatInstance>& o) { return {o.minus, o.plus}; }

// Relation text: one edge per line, `a3 -> b1`. A name is a letter prefix
// and an index; only the index is kept, blocks are resolved by the caller
// through the prefix. Lines `rel <source> <target>` fix the sizes.
struct NamedEdge {
  std::string from_prefix;
  std::size_t from = 0;
  std::string to_prefix;
  std::size_t to = 0;
  std::size_t line = 0;
};

struct RelText {
  std::optional<std::pair<std::size_t, std::size_t>> sizes;
  std::vector<NamedEdge> edges;
};

inline RelText parse_rel_text(std::istream& in) {
  RelText out;
  std::string line;
  std::size_t lineno = 0;
  auto name = [&](const std::string& tok, std::string& prefix, std::size_t& index) {
    std::size_t k = 0;
    while (k < tok.size() && std::isalpha(static_cast<unsigned char>(tok[k]))) ++k;
    const std::string digits = tok.substr(k);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos || digits.size() > 9)
      throw ParseError(lineno, "expected a name like a3, got '" + tok + "'");
    prefix = tok.substr(0, k);
    index = std::stoul(digits);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (tok[0] == "rel" && tok.size() == 3) {
      if (out.sizes) throw ParseError(lineno, "duplicate 'rel' header");
      std::size_t s = 0, t = 0;
      std::string p;
      name(tok[1], p, s);
      name(tok[2], p, t);
      out.sizes = std::make_pair(s, t);
    } else if (tok.size() == 3 && tok[1] == "->") {
      NamedEdge e;
      e.line = lineno;
      name(tok[0], e.from_prefix, e.from);
      name(tok[2], e.to_prefix, e.to);
      out.edges.push_back(e);
    } else {
      throw ParseError(lineno, "expected '<name> -> <name>' or 'rel <source> <target>'");
    }
  }
  return out;
}

// Plain relation: names index the source and target directly. Sizes come
// from the header, else from the largest index seen.
inline FinRel parse_rel(std::istream& in) {
  const RelText t = parse_rel_text(in);
  std::size_t s = 0, g = 0;
  for (const auto& e : t.edges) {
    s = std::max(s, e.from + 1);
    g = std::max(g, e.to + 1);
  }
  if (t.sizes) {
    for (const auto& e : t.edges)
      if (e.from >= t.sizes->first || e.to >= t.sizes->second)
        throw ParseError(e.line, "edge outside the declared sizes");
    s = t.sizes->first;
    g = t.sizes->second;
  }
  FinRel r(s, g);
  for (const auto& e : t.edges) r.set(e.from, e.to);
  return r;
}

// Traced relation: sources are `a<i>` (A block) or `y<i>` (Y block),
// targets `b<i>` or `y<i>`.
inline FinRel parse_traced_rel(std::istream& in, const Blocks& k) {
  const RelText t = parse_rel_text(in);
  FinRel r(k.a + k.y, k.b + k.y);
  for (const auto& e : t.edges) {
    std::size_t i = 0, j = 0;
    if (e.from_prefix == "a" && e.from < k.a) i = e.from;
    else if (e.from_prefix == "y" && e.from < k.y) i = k.a + e.from;
    else throw ParseError(e.line, "source must be a<i> with i < " + std::to_string(k.a) + " or y<i> with i < " + std::to_string(k.y));
    if (e.to_prefix == "b" && e.to < k.b) j = e.to;
    else if (e.to_prefix == "y" && e.to < k.y) j = k.b + e.to;
    else throw ParseError(e.line, "target must be b<i> with i < " + std::to_string(k.b) + " or y<i> with i < " + std::to_string(k.y));
    r.set(i, j);
  }
  return r;
}

inline void write_rel(std::ostream& out, const FinRel& r, const std::string& from = "a", const std::string& to = "b") {
  out << "rel " << from << r.source() << ' ' << to << r.target() << '\n';
  for (auto [i, j] : r.pairs()) out << from << i << " -> " << to << j << '\n';
}

}  // namespace coproc::intcat
