#pragma once

// Histories, safety specifications, Mealy machines and the two process
// bisimulation checkers.
//
// A safety specification is a prefix-closed set of histories stored as a
// deterministic trie; the root is the empty history. Relations between
// specifications are sets of trie-node pairs. Every table is depth bounded.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "coproc/error.hpp"

namespace coproc::proc {

using Symbol = std::uint32_t;
using Word = std::vector<Symbol>;
using NodeId = std::uint32_t;

class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> tokens) : tokens_(std::move(tokens)) {
    if (tokens_.empty()) throw InputError("alphabet: must be nonempty");
    for (std::size_t i = 0; i < tokens_.size(); ++i)
      if (!index_.emplace(tokens_[i], static_cast<Symbol>(i)).second)
        throw InputError("alphabet: duplicate token '" + tokens_[i] + "'");
  }

  std::size_t size() const { return tokens_.size(); }
  const std::string& token(Symbol s) const { return tokens_.at(s); }
  const std::vector<std::string>& tokens() const { return tokens_; }

  Symbol index_of(const std::string& tok) const {
    auto it = index_.find(tok);
    if (it == index_.end()) throw InputError("symbol '" + tok + "' is not in the alphabet");
    return it->second;
  }
  bool contains(const std::string& tok) const { return index_.count(tok) != 0; }

  std::string render(const Word& w) const {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i) out += ' ';
      out += token(w[i]);
    }
    return out;
  }

  friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.tokens_ == b.tokens_; }

 private:
  std::vector<std::string> tokens_;
  std::map<std::string, Symbol> index_;
};

// Every word over `size` symbols with length in [1, depth], shortlex order.
inline std::vector<Word> words_up_to(std::size_t size, std::size_t depth) {
  std::vector<Word> out;
  std::vector<Word> layer{Word{}};
  for (std::size_t n = 1; n <= depth; ++n) {
    std::vector<Word> next;
    for (const Word& w : layer)
      for (Symbol a = 0; a < size; ++a) {
        Word x = w;
        x.push_back(a);
        next.push_back(x);
      }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

// The unique map out of nonempty histories determined by its value on a
// single symbol and its step: fold(a) = init(a), fold(h a) = cons(a, fold(h)).
template <typename V>
V fold_history(const Word& h, const std::function<V(Symbol)>& init,
               const std::function<V(Symbol, V)>& cons) {
  if (h.empty()) throw DomainError("fold_history: histories are nonempty");
  V acc = init(h.front());
  for (std::size_t i = 1; i < h.size(); ++i) acc = cons(h[i], std::move(acc));
  return acc;
}

class SafetySpec {
 public:
  // `histories` must be prefix closed unless `close` is set, in which case
  // the prefix closure is taken. The empty history is always present.
  SafetySpec(Alphabet alphabet, const std::vector<Word>& histories, bool close = false)
      : alphabet_(std::move(alphabet)) {
    nodes_.push_back(Node{});
    std::set<Word> given(histories.begin(), histories.end());
    for (const Word& h : given) {
      for (Symbol s : h)
        if (s >= alphabet_.size()) throw InputError("spec: symbol index outside the alphabet");
      if (!close) {
        for (std::size_t k = 1; k < h.size(); ++k) {
          Word p(h.begin(), h.begin() + static_cast<std::ptrdiff_t>(k));
          if (!given.count(p))
            throw InputError("spec: not prefix closed, missing '" + alphabet_.render(p) +
                             "' (prefix of '" + alphabet_.render(h) + "')");
        }
      }
      NodeId v = 0;
      for (Symbol s : h) v = ensure_child(v, s);
    }
  }

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t node_count() const { return nodes_.size(); }
  static constexpr NodeId root() { return 0; }

  std::optional<NodeId> child(NodeId v, Symbol s) const {
    const auto& kids = nodes_.at(v).children;
    auto it = std::lower_bound(kids.begin(), kids.end(), std::make_pair(s, NodeId{0}),
                               [](const auto& a, const auto& b) { return a.first < b.first; });
    if (it == kids.end() || it->first != s) return std::nullopt;
    return it->second;
  }

  // (symbol, child) pairs in symbol order.
  const std::vector<std::pair<Symbol, NodeId>>& children(NodeId v) const {
    return nodes_.at(v).children;
  }
  std::size_t depth(NodeId v) const { return nodes_.at(v).depth; }
  std::size_t max_depth() const {
    std::size_t d = 0;
    for (const auto& n : nodes_) d = std::max(d, n.depth);
    return d;
  }

  Word history(NodeId v) const {
    Word w;
    while (v != root()) {
      w.push_back(nodes_[v].symbol);
      v = nodes_[v].parent;
    }
    std::reverse(w.begin(), w.end());
    return w;
  }

  std::optional<NodeId> find(const Word& w) const {
    NodeId v = root();
    for (Symbol s : w) {
      auto c = child(v, s);
      if (!c) return std::nullopt;
      v = *c;
    }
    return v;
  }
  bool contains(const Word& w) const { return find(w).has_value(); }

  // Nonempty member histories in shortlex order.
  std::vector<Word> histories() const {
    std::vector<Word> out;
    for (NodeId v = 1; v < nodes_.size(); ++v) out.push_back(history(v));
    std::sort(out.begin(), out.end(), [](const Word& a, const Word& b) {
      return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    return out;
  }

  // The node and all of its descendants.
  std::vector<NodeId> subtree(NodeId v) const {
    std::vector<NodeId> out{v};
    for (std::size_t i = 0; i < out.size(); ++i)
      for (const auto& [s, c] : nodes_[out[i]].children) out.push_back(c);
    return out;
  }

  friend bool operator==(const SafetySpec& a, const SafetySpec& b) {
    return a.alphabet_ == b.alphabet_ && a.histories() == b.histories();
  }

 private:
  struct Node {
    NodeId parent = 0;
    Symbol symbol = 0;
    std::size_t depth = 0;
    std::vector<std::pair<Symbol, NodeId>> children;
  };

  NodeId ensure_child(NodeId v, Symbol s) {
    if (auto c = child(v, s)) return *c;
    const NodeId id = static_cast<NodeId>(nodes_.size());
    nodes_.push_back(Node{v, s, nodes_[v].depth + 1, {}});
    auto& kids = nodes_[v].children;
    kids.insert(std::upper_bound(kids.begin(), kids.end(), std::make_pair(s, id)),
                std::make_pair(s, id));
    return id;
  }

  Alphabet alphabet_;
  std::vector<Node> nodes_;
};

// Finite Mealy machine; an empty output is the deletion (no output) case.
class MealyMachine {
 public:
  using State = std::uint32_t;

  struct Transition {
    std::optional<Symbol> output;
    State next;
  };

  MealyMachine(Alphabet inputs, Alphabet outputs, std::size_t state_count, State init,
               std::vector<Transition> table)
      : inputs_(std::move(inputs)),
        outputs_(std::move(outputs)),
        state_count_(state_count),
        init_(init),
        table_(std::move(table)) {
    if (state_count_ == 0) throw InputError("mealy: needs at least one state");
    if (init_ >= state_count_) throw InputError("mealy: init state out of range");
    if (table_.size() != state_count_ * inputs_.size())
      throw InputError("mealy: transition table must be total over states x inputs");
    for (const auto& t : table_) {
      if (t.next >= state_count_) throw InputError("mealy: next state out of range");
      if (t.output && *t.output >= outputs_.size())
        throw InputError("mealy: output symbol out of range");
    }
  }

  const Alphabet& inputs() const { return inputs_; }
  const Alphabet& outputs() const { return outputs_; }
  std::size_t state_count() const { return state_count_; }
  State init() const { return init_; }

  const Transition& at(State x, Symbol a) const {
    if (x >= state_count_ || a >= inputs_.size()) throw InputError("mealy: lookup out of range");
    return table_[x * inputs_.size() + a];
  }

  // Outputs along the input word starting from `from`.
  std::vector<std::optional<Symbol>> run(const Word& input, State from) const {
    std::vector<std::optional<Symbol>> out;
    State x = from;
    for (Symbol a : input) {
      const auto& t = at(x, a);
      out.push_back(t.output);
      x = t.next;
    }
    return out;
  }

 private:
  Alphabet inputs_;
  Alphabet outputs_;
  std::size_t state_count_;
  State init_;
  std::vector<Transition> table_;
};

template <typename V>
using Table = std::map<Word, V>;

using OutputTable = Table<Symbol>;
using PartialTable = Table<std::optional<Symbol>>;
using HistoryTable = Table<Word>;

// f(a1..an) = output at step n of the run from the initial state.
inline PartialTable unfold(const MealyMachine& m, std::size_t depth) {
  if (depth == 0) throw DomainError("unfold: depth must be at least 1");
  PartialTable f;
  for (const Word& w : words_up_to(m.inputs().size(), depth)) f[w] = m.run(w, m.init()).back();
  return f;
}

// Same, for an explicit list of histories; rejects symbols outside the
// machine's input alphabet.
inline PartialTable unfold_on(const MealyMachine& m, const std::vector<Word>& histories) {
  PartialTable f;
  for (const Word& w : histories) {
    if (w.empty()) throw InputError("unfold: histories are nonempty");
    for (Symbol s : w)
      if (s >= m.inputs().size()) throw InputError("unfold: history symbol outside the alphabet");
    f[w] = m.run(w, m.init()).back();
  }
  return f;
}

namespace detail {

template <typename V>
const V& lookup(const Table<V>& f, const Word& w, const char* who) {
  auto it = f.find(w);
  if (it == f.end()) throw DomainError(std::string(who) + ": table has no entry for a prefix of length " +
                                       std::to_string(w.size()));
  return it->second;
}

}  // namespace detail

// f#(a1..an) = (f(a1), f(a1 a2), ..., f(a1..an)) for every entry of f of
// length at most depth.
inline HistoryTable cumulative(const OutputTable& f, std::size_t depth) {
  HistoryTable out;
  for (const auto& [h, unused] : f) {
    if (h.empty() || h.size() > depth) continue;
    Word lifted;
    Word prefix;
    for (Symbol a : h) {
      prefix.push_back(a);
      lifted.push_back(detail::lookup(f, prefix, "cumulative"));
    }
    out.emplace(h, std::move(lifted));
  }
  return out;
}

// Asynchronous cumulative form: deleted outputs are skipped, so the output
// history may be shorter than the input.
inline HistoryTable cumulative_async(const PartialTable& f, std::size_t depth) {
  HistoryTable out;
  for (const auto& [h, unused] : f) {
    if (h.empty() || h.size() > depth) continue;
    Word lifted;
    Word prefix;
    for (Symbol a : h) {
      prefix.push_back(a);
      if (const auto& b = detail::lookup(f, prefix, "cumulative_async")) lifted.push_back(*b);
    }
    out.emplace(h, std::move(lifted));
  }
  return out;
}

// (f ; g)(h) = g(f#(h)).
inline OutputTable compose_causal(const OutputTable& f, const OutputTable& g, std::size_t depth) {
  OutputTable out;
  for (const auto& [h, lifted] : cumulative(f, depth))
    out.emplace(h, detail::lookup(g, lifted, "compose_causal"));
  return out;
}

// The identity of causal composition: the last symbol of the history.
inline OutputTable last_symbol_table(std::size_t alphabet_size, std::size_t depth) {
  OutputTable f;
  for (const Word& w : words_up_to(alphabet_size, depth)) f[w] = w.back();
  return f;
}

enum class Mode { strong, weak };

inline const char* to_string(Mode m) { return m == Mode::strong ? "strong" : "weak"; }

struct TimedRelation {
  Mode mode = Mode::strong;
  std::vector<std::pair<NodeId, NodeId>> pairs;  // sorted, unique

  bool contains(NodeId s, NodeId t) const {
    return std::binary_search(pairs.begin(), pairs.end(), std::make_pair(s, t));
  }
  void normalize() {
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  }
  friend bool operator==(const TimedRelation&, const TimedRelation&) = default;
};

namespace detail {

class PairSet {
 public:
  PairSet(std::size_t n, std::size_t m, bool fill) : m_(m), bits_(n * m, fill ? 1 : 0) {}
  bool operator()(NodeId s, NodeId t) const { return bits_[s * m_ + t] != 0; }
  void set(NodeId s, NodeId t, bool v) { bits_[s * m_ + t] = v ? 1 : 0; }

 private:
  std::size_t m_;
  std::vector<char> bits_;
};

template <typename Rel>
bool strong_clause(const SafetySpec& S, const SafetySpec& T, const Rel& r, NodeId s, NodeId t) {
  for (const auto& [a, s1] : S.children(s)) {
    bool ok = false;
    for (const auto& [b, t1] : T.children(t))
      if (r(s1, t1)) { ok = true; break; }
    if (!ok) return false;
  }
  for (const auto& [b, t1] : T.children(t)) {
    bool ok = false;
    for (const auto& [a, s1] : S.children(s))
      if (r(s1, t1)) { ok = true; break; }
    if (!ok) return false;
  }
  return true;
}

// Weak clause: a move may also be answered by the other side standing still
// while this side continues by any (possibly empty) further history.
template <typename Rel>
bool weak_clause(const SafetySpec& S, const SafetySpec& T, const Rel& r, NodeId s, NodeId t) {
  for (const auto& [a, s1] : S.children(s)) {
    bool ok = false;
    for (const auto& [b, t1] : T.children(t))
      if (r(s1, t1)) { ok = true; break; }
    if (!ok)
      for (NodeId w : S.subtree(s1))
        if (r(w, t)) { ok = true; break; }
    if (!ok) return false;
  }
  for (const auto& [b, t1] : T.children(t)) {
    bool ok = false;
    for (const auto& [a, s1] : S.children(s))
      if (r(s1, t1)) { ok = true; break; }
    if (!ok)
      for (NodeId w : T.subtree(t1))
        if (r(s, w)) { ok = true; break; }
    if (!ok) return false;
  }
  return true;
}

template <typename Rel>
bool clause(Mode mode, const SafetySpec& S, const SafetySpec& T, const Rel& r, NodeId s, NodeId t) {
  return mode == Mode::strong ? strong_clause(S, T, r, s, t) : weak_clause(S, T, r, s, t);
}

// Strong bisimilarity on finite tries is well founded, so the greatest
// fixpoint is the unique solution of the clause read as a recursion.
inline PairSet strong_table(const SafetySpec& S, const SafetySpec& T) {
  const std::size_t n = S.node_count(), m = T.node_count();
  PairSet r(n, m, false);
  // Children always carry larger ids than parents, so a reverse sweep visits
  // every pair after all of its child pairs.
  for (std::size_t s = n; s-- > 0;)
    for (std::size_t t = m; t-- > 0;)
      r.set(static_cast<NodeId>(s), static_cast<NodeId>(t),
            strong_clause(S, T, r, static_cast<NodeId>(s), static_cast<NodeId>(t)));
  return r;
}

inline PairSet weak_table(const SafetySpec& S, const SafetySpec& T) {
  const std::size_t n = S.node_count(), m = T.node_count();
  PairSet r(n, m, true);
  bool changed = true;
  while (changed) {
    changed = false;
    for (NodeId s = 0; s < n; ++s)
      for (NodeId t = 0; t < m; ++t)
        if (r(s, t) && !weak_clause(S, T, r, s, t)) {
          r.set(s, t, false);
          changed = true;
        }
  }
  return r;
}

}  // namespace detail

// Greatest relation satisfying the mode's clause, restricted to the pairs
// that can witness a move from (root, root). Empty when the roots are not
// related.
inline std::optional<TimedRelation> greatest_bisim(const SafetySpec& S, const SafetySpec& T,
                                                   Mode mode) {
  const auto r = mode == Mode::strong ? detail::strong_table(S, T) : detail::weak_table(S, T);
  if (!r(SafetySpec::root(), SafetySpec::root())) return std::nullopt;
  std::set<std::pair<NodeId, NodeId>> seen{{SafetySpec::root(), SafetySpec::root()}};
  std::vector<std::pair<NodeId, NodeId>> work{{SafetySpec::root(), SafetySpec::root()}};
  auto visit = [&](NodeId s, NodeId t) {
    if (r(s, t) && seen.emplace(s, t).second) work.emplace_back(s, t);
  };
  while (!work.empty()) {
    const auto [s, t] = work.back();
    work.pop_back();
    for (const auto& [a, s1] : S.children(s)) {
      for (const auto& [b, t1] : T.children(t)) visit(s1, t1);
      if (mode == Mode::weak)
        for (NodeId w : S.subtree(s1)) visit(w, t);
    }
    if (mode == Mode::weak)
      for (const auto& [b, t1] : T.children(t))
        for (NodeId w : T.subtree(t1)) visit(s, w);
  }
  TimedRelation out{mode, {seen.begin(), seen.end()}};
  return out;
}

struct BisimCheck {
  bool clause_holds = false;   // every pair satisfies the mode's clause
  bool contains_root = false;  // (root, root) is related
  bool total = false;          // every node of both specs occurs in a pair

  // A morphism witness is a bisimulation that relates the roots.
  bool is_witness() const { return clause_holds && contains_root; }
};

inline BisimCheck verify_bisim(const TimedRelation& R, const SafetySpec& S, const SafetySpec& T,
                               Mode mode) {
  for (const auto& [s, t] : R.pairs)
    if (s >= S.node_count() || t >= T.node_count())
      throw InputError("verify_bisim: relation mentions a node outside the specs");
  auto rel = [&](NodeId s, NodeId t) { return R.contains(s, t); };
  BisimCheck out;
  out.clause_holds = std::all_of(R.pairs.begin(), R.pairs.end(), [&](const auto& p) {
    return detail::clause(mode, S, T, rel, p.first, p.second);
  });
  out.contains_root = R.contains(SafetySpec::root(), SafetySpec::root());
  std::vector<bool> hit_s(S.node_count(), false), hit_t(T.node_count(), false);
  for (const auto& [s, t] : R.pairs) {
    hit_s[s] = true;
    hit_t[t] = true;
  }
  out.total = std::all_of(hit_s.begin(), hit_s.end(), [](bool b) { return b; }) &&
              std::all_of(hit_t.begin(), hit_t.end(), [](bool b) { return b; });
  return out;
}

inline TimedRelation identity_relation(const SafetySpec& S, Mode mode) {
  TimedRelation r{mode, {}};
  for (NodeId v = 0; v < S.node_count(); ++v) r.pairs.emplace_back(v, v);
  return r;
}

// Relational composition R1 ; R2 on trie nodes.
inline TimedRelation compose_rel(const TimedRelation& r1, const TimedRelation& r2) {
  if (r1.mode != r2.mode) throw InputError("compose_rel: mode mismatch");
  std::multimap<NodeId, NodeId> by_middle;
  for (const auto& [t, u] : r2.pairs) by_middle.emplace(t, u);
  TimedRelation out{r1.mode, {}};
  for (const auto& [s, t] : r1.pairs) {
    auto [lo, hi] = by_middle.equal_range(t);
    for (auto it = lo; it != hi; ++it) out.pairs.emplace_back(s, it->second);
  }
  out.normalize();
  return out;
}

// All interleavings: histories over the disjoint union of the alphabets
// whose restriction to each side is a history of that side (or empty).
// With `tag` set, tokens are prefixed "1." and "2." so overlapping
// alphabets become disjoint.
inline SafetySpec shuffle(const SafetySpec& S, const SafetySpec& T, bool tag = false) {
  std::vector<std::string> tokens;
  for (const auto& a : S.alphabet().tokens()) tokens.push_back(tag ? "1." + a : a);
  for (const auto& b : T.alphabet().tokens()) {
    const std::string tok = tag ? "2." + b : b;
    if (std::find(tokens.begin(), tokens.end(), tok) != tokens.end())
      throw InputError("shuffle: alphabets share the token '" + b + "'; use tagging");
    tokens.push_back(tok);
  }
  const Symbol offset = static_cast<Symbol>(S.alphabet().size());
  std::vector<Word> histories;
  struct Item {
    NodeId s, t;
    Word w;
  };
  std::vector<Item> work{{SafetySpec::root(), SafetySpec::root(), {}}};
  while (!work.empty()) {
    Item it = std::move(work.back());
    work.pop_back();
    if (!it.w.empty()) histories.push_back(it.w);
    for (const auto& [a, s1] : S.children(it.s)) {
      Word w = it.w;
      w.push_back(a);
      work.push_back({s1, it.t, std::move(w)});
    }
    for (const auto& [b, t1] : T.children(it.t)) {
      Word w = it.w;
      w.push_back(offset + b);
      work.push_back({it.s, t1, std::move(w)});
    }
  }
  return SafetySpec(Alphabet(std::move(tokens)), histories);
}

// .spec: `alphabet <tok> ...` then one history per line.
inline SafetySpec parse_spec(std::istream& in, bool close = false) {
  std::optional<Alphabet> alphabet;
  std::vector<Word> histories;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (!alphabet) {
      if (tok[0] != "alphabet" || tok.size() < 2)
        throw ParseError(lineno, "first line must be 'alphabet <tok> ...'");
      try {
        alphabet.emplace(std::vector<std::string>(tok.begin() + 1, tok.end()));
      } catch (const InputError& e) {
        throw ParseError(lineno, e.what());
      }
      continue;
    }
    Word w;
    for (const auto& t : tok) {
      if (!alphabet->contains(t)) throw ParseError(lineno, "symbol '" + t + "' is not in the alphabet");
      w.push_back(alphabet->index_of(t));
    }
    histories.push_back(std::move(w));
  }
  if (!alphabet) throw ParseError(lineno, "missing alphabet line");
  return SafetySpec(*alphabet, histories, close);
}

inline SafetySpec parse_spec(const std::string& text, bool close = false) {
  std::istringstream in(text);
  return parse_spec(in, close);
}

inline void write_spec(std::ostream& out, const SafetySpec& S) {
  out << "alphabet";
  for (const auto& t : S.alphabet().tokens()) out << ' ' << t;
  out << '\n';
  for (const Word& h : S.histories()) out << S.alphabet().render(h) << '\n';
}

// .mealy: `states n`, `init i`, `trans <state> <in> <out|_> <state'>`.
// Input and output alphabets are the tokens in order of first appearance;
// optional `inputs ...` / `outputs ...` lines fix them explicitly.
inline MealyMachine parse_mealy(std::istream& in) {
  std::optional<std::size_t> states;
  std::optional<std::uint32_t> init;
  std::vector<std::string> ins, outs;
  bool ins_fixed = false, outs_fixed = false;
  struct Raw {
    std::uint32_t from;
    std::string in, out;
    std::uint32_t to;
    std::size_t line;
  };
  std::vector<Raw> raw;
  std::string line;
  std::size_t lineno = 0;
  auto num = [&](const std::string& t) -> std::uint32_t {
    if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError(lineno, "expected a natural number, got '" + t + "'");
    return static_cast<std::uint32_t>(std::stoul(t));
  };
  auto note = [](std::vector<std::string>& v, const std::string& t) {
    if (std::find(v.begin(), v.end(), t) == v.end()) v.push_back(t);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (tok[0] == "states" && tok.size() == 2) {
      states = num(tok[1]);
    } else if (tok[0] == "init" && tok.size() == 2) {
      init = num(tok[1]);
    } else if (tok[0] == "inputs" && tok.size() >= 2) {
      ins.assign(tok.begin() + 1, tok.end());
      ins_fixed = true;
    } else if (tok[0] == "outputs" && tok.size() >= 2) {
      outs.assign(tok.begin() + 1, tok.end());
      outs_fixed = true;
    } else if (tok[0] == "trans" && tok.size() == 5) {
      raw.push_back({num(tok[1]), tok[2], tok[3], num(tok[4]), lineno});
    } else {
      throw ParseError(lineno, "unrecognized line");
    }
  }
  if (!states) throw ParseError(lineno, "missing 'states'");
  if (!init) throw ParseError(lineno, "missing 'init'");
  for (const auto& r : raw) {
    if (!ins_fixed) note(ins, r.in);
    if (!outs_fixed && r.out != "_") note(outs, r.out);
  }
  if (outs.empty()) outs.push_back("_none");
  Alphabet in_alpha(ins), out_alpha(outs);
  std::vector<std::optional<MealyMachine::Transition>> table(*states * in_alpha.size());
  for (const auto& r : raw) {
    if (r.from >= *states || r.to >= *states) throw ParseError(r.line, "state out of range");
    if (!in_alpha.contains(r.in)) throw ParseError(r.line, "undeclared input '" + r.in + "'");
    if (r.out != "_" && !out_alpha.contains(r.out))
      throw ParseError(r.line, "undeclared output '" + r.out + "'");
    auto& slot = table[r.from * in_alpha.size() + in_alpha.index_of(r.in)];
    if (slot) throw ParseError(r.line, "duplicate transition");
    std::optional<Symbol> o;
    if (r.out != "_") o = out_alpha.index_of(r.out);
    slot = MealyMachine::Transition{o, r.to};
  }
  std::vector<MealyMachine::Transition> total;
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (!table[i])
      throw ParseError(lineno, "missing transition for state " + std::to_string(i / in_alpha.size()) +
                                   " on input '" + in_alpha.token(static_cast<Symbol>(i % in_alpha.size())) + "'");
    total.push_back(*table[i]);
  }
  return MealyMachine(in_alpha, out_alpha, *states, *init, std::move(total));
}

inline MealyMachine parse_mealy(const std::string& text) {
  std::istringstream in(text);
  return parse_mealy(in);
}

}  // namespace coproc::proc
