#pragma once

// Polarized (signed) games: pointed graphs whose edges are left options or
// right options. Left options are the ones that sit at or below a game in
// Conway's order, right options the ones at or above it.
//
// Well-founded games are interned into a GameStore, which hash-conses nodes
// by their option sets. Ids in one store are therefore canonical, and every
// memo table below is keyed by them.

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
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "coproc/dyadic.hpp"
#include "coproc/detail/refine.hpp"
#include "coproc/error.hpp"

namespace coproc::games {

using NodeId = std::uint32_t;

struct Edge {
  NodeId source;
  NodeId target;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

enum class Side { left, right };

class SignedGame {
 public:
  SignedGame(std::size_t node_count, const std::vector<Edge>& left_edges,
             const std::vector<Edge>& right_edges, NodeId root) {
    if (node_count == 0) throw InputError("game: needs at least one node");
    if (root >= node_count) throw InputError("game: root out of range");
    std::vector<std::vector<NodeId>> l(node_count), r(node_count);
    auto add = [&](std::vector<std::vector<NodeId>>& dst, const Edge& e) {
      if (e.source >= node_count || e.target >= node_count)
        throw InputError("game: dangling edge " + std::to_string(e.source) + " -> " +
                         std::to_string(e.target));
      dst[e.source].push_back(e.target);
    };
    for (const Edge& e : left_edges) add(l, e);
    for (const Edge& e : right_edges) add(r, e);
    detail::LabeledGraph g(node_count, 2);
    g.succ[0] = l;
    g.succ[1] = r;
    const auto order = detail::reachable_from(g, root);
    std::vector<NodeId> renumber(node_count, 0);
    std::vector<bool> seen(node_count, false);
    for (NodeId v : order) seen[v] = true;
    NodeId next = 0;
    for (std::size_t v = 0; v < node_count; ++v)
      if (seen[v]) renumber[v] = next++;
    left_.assign(next, {});
    right_.assign(next, {});
    for (std::size_t v = 0; v < node_count; ++v) {
      if (!seen[v]) continue;
      for (NodeId w : l[v]) left_[renumber[v]].push_back(renumber[w]);
      for (NodeId w : r[v]) right_[renumber[v]].push_back(renumber[w]);
    }
    for (auto* side : {&left_, &right_})
      for (auto& s : *side) {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
      }
    root_ = renumber[root];
    wellfounded_ = detail::acyclic_from(labeled(), root_);
  }

  std::size_t node_count() const { return left_.size(); }
  NodeId root() const { return root_; }
  bool wellfounded() const { return wellfounded_; }
  const std::vector<NodeId>& left(NodeId v) const { return left_.at(v); }
  const std::vector<NodeId>& right(NodeId v) const { return right_.at(v); }
  const std::vector<NodeId>& options(NodeId v, Side s) const {
    return s == Side::left ? left(v) : right(v);
  }

  std::vector<Edge> left_edges() const { return edges_of(left_); }
  std::vector<Edge> right_edges() const { return edges_of(right_); }

  detail::LabeledGraph labeled() const {
    detail::LabeledGraph g(left_.size(), 2);
    g.succ[0] = left_;
    g.succ[1] = right_;
    return g;
  }

  friend bool operator==(const SignedGame& a, const SignedGame& b) {
    return a.root_ == b.root_ && a.left_ == b.left_ && a.right_ == b.right_;
  }

 private:
  static std::vector<Edge> edges_of(const std::vector<std::vector<NodeId>>& adj) {
    std::vector<Edge> out;
    for (NodeId v = 0; v < adj.size(); ++v)
      for (NodeId w : adj[v]) out.push_back({v, w});
    return out;
  }

  std::vector<std::vector<NodeId>> left_, right_;
  NodeId root_ = 0;
  bool wellfounded_ = true;
};

// Quotient by the greatest signed bisimulation, numbered canonically.
inline SignedGame canonical(const SignedGame& g) {
  const auto lg = g.labeled();
  const auto form = detail::canonical_quotient(lg, g.root(), detail::refine_ranks(lg));
  std::vector<Edge> l, r;
  for (NodeId v = 0; v < form.graph.node_count; ++v) {
    for (NodeId w : form.graph.succ[0][v]) l.push_back({v, w});
    for (NodeId w : form.graph.succ[1][v]) r.push_back({v, w});
  }
  return SignedGame(form.graph.node_count, l, r, 0);
}

inline std::uint64_t digest_of(const SignedGame& g) {
  const SignedGame c = canonical(g);
  detail::Fnv1a h;
  h.add(std::string_view("signed-game"));
  h.add(static_cast<std::uint64_t>(c.node_count()));
  for (const Edge& e : c.left_edges()) {
    h.add(std::uint64_t{0});
    h.add(static_cast<std::uint64_t>(e.source));
    h.add(static_cast<std::uint64_t>(e.target));
  }
  for (const Edge& e : c.right_edges()) {
    h.add(std::uint64_t{1});
    h.add(static_cast<std::uint64_t>(e.source));
    h.add(static_cast<std::uint64_t>(e.target));
  }
  return h.value();
}

using GameId = std::uint32_t;

namespace detail {

struct PairHash {
  std::size_t operator()(const std::pair<GameId, GameId>& p) const noexcept {
    return std::hash<std::uint64_t>{}((std::uint64_t{p.first} << 32) | p.second);
  }
};

struct OptionsHash {
  std::size_t operator()(const std::pair<std::vector<GameId>, std::vector<GameId>>& k) const noexcept {
    coproc::detail::Fnv1a h;
    h.add(static_cast<std::uint64_t>(k.first.size()));
    for (GameId g : k.first) h.add(static_cast<std::uint64_t>(g));
    for (GameId g : k.second) h.add(static_cast<std::uint64_t>(g));
    return static_cast<std::size_t>(h.value());
  }
};

}  // namespace detail

// Hash-consed universe of well-founded games with memoized operations.
// Structurally equal games (same option sets, hereditarily) get the same id.
class GameStore {
 public:
  GameStore() { zero_ = intern({}, {}); }

  GameId zero() const { return zero_; }

  GameId intern(std::vector<GameId> left, std::vector<GameId> right) {
    for (auto* v : {&left, &right}) {
      std::sort(v->begin(), v->end());
      v->erase(std::unique(v->begin(), v->end()), v->end());
      for (GameId g : *v)
        if (g >= nodes_.size()) throw InputError("game store: unknown option id");
    }
    auto key = std::make_pair(std::move(left), std::move(right));
    auto it = index_.find(key);
    if (it != index_.end()) return it->second;
    const GameId id = static_cast<GameId>(nodes_.size());
    std::size_t day = 0;
    for (GameId g : key.first) day = std::max(day, birthday_[g] + 1);
    for (GameId g : key.second) day = std::max(day, birthday_[g] + 1);
    nodes_.push_back(key);
    birthday_.push_back(day);
    index_.emplace(std::move(key), id);
    return id;
  }

  std::size_t size() const { return nodes_.size(); }
  const std::vector<GameId>& left(GameId g) const { return nodes_.at(g).first; }
  const std::vector<GameId>& right(GameId g) const { return nodes_.at(g).second; }
  std::size_t birthday(GameId g) const { return birthday_.at(g); }

  // Conway integer n: {n-1 |} for n > 0, {| n+1} for n < 0.
  GameId integer(std::int64_t n) {
    GameId g = zero_;
    for (std::int64_t k = 0; k < (n < 0 ? -n : n); ++k) g = n > 0 ? intern({g}, {}) : intern({}, {g});
    return g;
  }

  GameId import(const SignedGame& s) {
    if (!s.wellfounded()) throw WellFoundednessError("game has a cycle; a well-founded game is required");
    std::vector<std::optional<GameId>> id(s.node_count());
    std::function<GameId(NodeId)> go = [&](NodeId v) -> GameId {
      if (id[v]) return *id[v];
      std::vector<GameId> l, r;
      for (NodeId w : s.left(v)) l.push_back(go(w));
      for (NodeId w : s.right(v)) r.push_back(go(w));
      id[v] = intern(std::move(l), std::move(r));
      return *id[v];
    };
    return go(s.root());
  }

  SignedGame export_game(GameId g) const {
    std::map<GameId, NodeId> number{{g, 0}};
    std::vector<GameId> order{g};
    for (std::size_t i = 0; i < order.size(); ++i)
      for (const auto* side : {&left(order[i]), &right(order[i])})
        for (GameId c : *side)
          if (number.emplace(c, static_cast<NodeId>(order.size())).second) order.push_back(c);
    std::vector<Edge> l, r;
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (GameId c : left(order[i])) l.push_back({static_cast<NodeId>(i), number[c]});
      for (GameId c : right(order[i])) r.push_back({static_cast<NodeId>(i), number[c]});
    }
    return SignedGame(order.size(), l, r, 0);
  }

  // s <= t iff no left option of s is >= t and no right option of t is <= s.
  bool leq(GameId s, GameId t) {
    const auto key = std::make_pair(s, t);
    if (auto it = leq_memo_.find(key); it != leq_memo_.end()) return it->second;
    bool result = true;
    for (GameId sl : left(s))
      if (leq(t, sl)) { result = false; break; }
    if (result)
      for (GameId tr : right(t))
        if (leq(tr, s)) { result = false; break; }
    leq_memo_.emplace(key, result);
    return result;
  }
  bool equiv(GameId s, GameId t) { return leq(s, t) && leq(t, s); }
  bool less(GameId s, GameId t) { return leq(s, t) && !leq(t, s); }

  GameId neg(GameId s) {
    if (auto it = neg_memo_.find(s); it != neg_memo_.end()) return it->second;
    std::vector<GameId> l, r;
    for (GameId x : right(s)) l.push_back(neg(x));
    for (GameId x : left(s)) r.push_back(neg(x));
    const GameId out = intern(std::move(l), std::move(r));
    neg_memo_.emplace(s, out);
    return out;
  }

  GameId add(GameId s, GameId t) {
    if (s > t) std::swap(s, t);
    const auto key = std::make_pair(s, t);
    if (auto it = add_memo_.find(key); it != add_memo_.end()) return it->second;
    std::vector<GameId> l, r;
    for (GameId x : left(s)) l.push_back(add(x, t));
    for (GameId x : left(t)) l.push_back(add(s, x));
    for (GameId x : right(s)) r.push_back(add(x, t));
    for (GameId x : right(t)) r.push_back(add(s, x));
    const GameId out = intern(std::move(l), std::move(r));
    add_memo_.emplace(key, out);
    return out;
  }

  GameId sub(GameId s, GameId t) { return add(s, neg(t)); }

  // Hereditarily: every option is a number and every left option is
  // strictly below every right option.
  bool is_number(GameId s) {
    if (auto it = number_memo_.find(s); it != number_memo_.end()) return it->second;
    bool ok = true;
    for (const auto* side : {&left(s), &right(s)})
      for (GameId x : *side) ok = ok && is_number(x);
    for (GameId l : left(s))
      for (GameId r : right(s)) ok = ok && less(l, r);
    number_memo_.emplace(s, ok);
    return ok;
  }

  // Conway's product. Both factors must be numbers.
  GameId mul(GameId s, GameId t) {
    if (!is_number(s) || !is_number(t)) throw DomainError("mul: both factors must be numeric games");
    return mul_unchecked(s, t);
  }

  // Canonical form: drop dominated options and bypass reversible ones,
  // hereditarily. Equivalent games get the same id.
  GameId simplify(GameId g) {
    if (auto it = simplify_memo_.find(g); it != simplify_memo_.end()) return it->second;
    std::vector<GameId> l, r;
    for (GameId x : left(g)) l.push_back(simplify(x));
    for (GameId x : right(g)) r.push_back(simplify(x));
    GameId cur = intern(l, r);
    for (bool changed = true; changed;) {
      changed = false;
      l = left(cur);
      r = right(cur);
      // Dominated: a left option below another, a right option above another.
      auto prune = [&](std::vector<GameId>& opts, bool keep_max) {
        std::vector<GameId> kept;
        for (std::size_t i = 0; i < opts.size(); ++i) {
          bool dominated = false;
          for (std::size_t j = 0; j < opts.size() && !dominated; ++j) {
            if (i == j) continue;
            const bool below = keep_max ? leq(opts[i], opts[j]) : leq(opts[j], opts[i]);
            const bool above = keep_max ? leq(opts[j], opts[i]) : leq(opts[i], opts[j]);
            dominated = below && (!above || j < i);
          }
          if (!dominated) kept.push_back(opts[i]);
        }
        if (kept.size() != opts.size()) changed = true;
        opts = kept;
      };
      prune(l, true);
      prune(r, false);
      const GameId g2 = intern(l, r);
      // Reversible: a left option with a right option <= g, or a right
      // option with a left option >= g.
      std::vector<GameId> nl, nr;
      for (GameId a : l) {
        auto it = std::find_if(right(a).begin(), right(a).end(), [&](GameId ar) { return leq(ar, g2); });
        if (it == right(a).end()) {
          nl.push_back(a);
        } else {
          nl.insert(nl.end(), left(*it).begin(), left(*it).end());
          changed = true;
        }
      }
      for (GameId b : r) {
        auto it = std::find_if(left(b).begin(), left(b).end(), [&](GameId bl) { return leq(g2, bl); });
        if (it == left(b).end()) {
          nr.push_back(b);
        } else {
          nr.insert(nr.end(), right(*it).begin(), right(*it).end());
          changed = true;
        }
      }
      cur = intern(nl, nr);
    }
    simplify_memo_.emplace(g, cur);
    simplify_memo_.emplace(cur, cur);
    return cur;
  }

  // Epsilon-transitivity, hereditarily, with inclusion of option sets taken
  // up to game equivalence.
  bool is_transitive(GameId s) {
    if (auto it = transitive_memo_.find(s); it != transitive_memo_.end()) return it->second;
    auto included = [&](const std::vector<GameId>& a, const std::vector<GameId>& b) {
      return std::all_of(a.begin(), a.end(), [&](GameId x) {
        return std::any_of(b.begin(), b.end(), [&](GameId y) { return equiv(x, y); });
      });
    };
    bool ok = true;
    for (GameId sl : left(s))
      ok = ok && included(left(sl), left(s)) && included(right(s), right(sl));
    for (GameId sr : right(s))
      ok = ok && included(left(s), left(sr)) && included(right(sr), right(s));
    for (const auto* side : {&left(s), &right(s)})
      for (GameId x : *side) ok = ok && is_transitive(x);
    transitive_memo_.emplace(s, ok);
    return ok;
  }

 private:
  GameId mul_unchecked(GameId x, GameId y) {
    const auto key = std::make_pair(x, y);
    if (auto it = mul_memo_.find(key); it != mul_memo_.end()) return it->second;
    // x^A y + x y^B - x^A y^B, kept in canonical form so products of
    // modest numbers stay small.
    auto term = [&](GameId xa, GameId yb) {
      return simplify(sub(add(mul_unchecked(xa, y), mul_unchecked(x, yb)), mul_unchecked(xa, yb)));
    };
    std::vector<GameId> l, r;
    for (GameId xl : left(x))
      for (GameId yl : left(y)) l.push_back(term(xl, yl));
    for (GameId xr : right(x))
      for (GameId yr : right(y)) l.push_back(term(xr, yr));
    for (GameId xl : left(x))
      for (GameId yr : right(y)) r.push_back(term(xl, yr));
    for (GameId xr : right(x))
      for (GameId yl : left(y)) r.push_back(term(xr, yl));
    const GameId out = simplify(intern(std::move(l), std::move(r)));
    mul_memo_.emplace(key, out);
    return out;
  }

  using Key = std::pair<std::vector<GameId>, std::vector<GameId>>;
  std::vector<Key> nodes_;
  std::vector<std::size_t> birthday_;
  std::unordered_map<Key, GameId, detail::OptionsHash> index_;
  std::unordered_map<std::pair<GameId, GameId>, bool, detail::PairHash> leq_memo_;
  std::unordered_map<std::pair<GameId, GameId>, GameId, detail::PairHash> add_memo_;
  std::unordered_map<std::pair<GameId, GameId>, GameId, detail::PairHash> mul_memo_;
  std::unordered_map<GameId, GameId> neg_memo_;
  std::unordered_map<GameId, bool> number_memo_;
  std::unordered_map<GameId, bool> transitive_memo_;
  std::unordered_map<GameId, GameId> simplify_memo_;
  GameId zero_ = 0;
};

// Value-level API. Each call works in its own store.

inline bool leq(const SignedGame& s, const SignedGame& t) {
  GameStore st;
  const GameId a = st.import(s), b = st.import(t);
  return st.leq(a, b);
}

inline bool equiv(const SignedGame& s, const SignedGame& t) {
  GameStore st;
  const GameId a = st.import(s), b = st.import(t);
  return st.equiv(a, b);
}

inline bool is_transitive(const SignedGame& s) {
  GameStore st;
  return st.is_transitive(st.import(s));
}

// Polarity swap; defined on cyclic games too.
inline SignedGame neg(const SignedGame& s) {
  return SignedGame(s.node_count(), s.right_edges(), s.left_edges(), s.root());
}

inline SignedGame add(const SignedGame& s, const SignedGame& t) {
  GameStore st;
  const GameId a = st.import(s), b = st.import(t);
  return st.export_game(st.add(a, b));
}

inline SignedGame mul(const SignedGame& s, const SignedGame& t) {
  GameStore st;
  const GameId a = st.import(s), b = st.import(t);
  return st.export_game(st.mul(a, b));
}

inline std::size_t birthday(const SignedGame& s) {
  GameStore st;
  return st.birthday(st.import(s));
}

enum class StrategyMode { sync, async };

struct StrategyRelation {
  StrategyMode mode = StrategyMode::sync;
  std::vector<std::pair<NodeId, NodeId>> pairs;  // (node of s, node of t), sorted

  bool contains(NodeId a, NodeId b) const {
    return std::binary_search(pairs.begin(), pairs.end(), std::make_pair(a, b));
  }
};

namespace detail {

template <typename Rel>
bool strategy_clause(StrategyMode mode, const SignedGame& s, const SignedGame& t, const Rel& r,
                     NodeId u, NodeId v) {
  // Player - answers every left move of s by a left move of t (or, in the
  // asynchronous game, by stepping back up through a right option of it).
  for (NodeId ul : s.left(u)) {
    bool ok = std::any_of(t.left(v).begin(), t.left(v).end(), [&](NodeId vl) { return r(ul, vl); });
    if (!ok && mode == StrategyMode::async)
      ok = std::any_of(s.right(ul).begin(), s.right(ul).end(), [&](NodeId ulr) { return r(ulr, v); });
    if (!ok) return false;
  }
  // Player + answers every right move of t by a right move of s.
  for (NodeId vr : t.right(v)) {
    bool ok = std::any_of(s.right(u).begin(), s.right(u).end(), [&](NodeId ur) { return r(ur, vr); });
    if (!ok && mode == StrategyMode::async)
      ok = std::any_of(t.left(vr).begin(), t.left(vr).end(), [&](NodeId vrl) { return r(u, vrl); });
    if (!ok) return false;
  }
  return true;
}

}  // namespace detail

// Full greatest fixpoint of the mode's clause on node pairs, as a bit table.
inline std::vector<char> strategy_table(const SignedGame& s, const SignedGame& t, StrategyMode mode) {
  const std::size_t n = s.node_count(), m = t.node_count();
  std::vector<char> bits(n * m, 1);
  auto rel = [&](NodeId a, NodeId b) { return bits[a * m + b] != 0; };
  // Worklist: when a pair drops out, only pairs whose clause mentions it
  // can change, but n*m is small enough that sweeping to stability is fine.
  bool changed = true;
  while (changed) {
    changed = false;
    for (NodeId a = 0; a < n; ++a)
      for (NodeId b = 0; b < m; ++b)
        if (bits[a * m + b] && !detail::strategy_clause(mode, s, t, rel, a, b)) {
          bits[a * m + b] = 0;
          changed = true;
        }
  }
  return bits;
}

// Greatest hyperstrategy of the given mode relating the roots, if any.
inline std::optional<StrategyRelation> hyperstrategy(const SignedGame& s, const SignedGame& t,
                                                     StrategyMode mode) {
  const auto bits = strategy_table(s, t, mode);
  const std::size_t m = t.node_count();
  if (!bits[s.root() * m + t.root()]) return std::nullopt;
  StrategyRelation out{mode, {}};
  for (NodeId a = 0; a < s.node_count(); ++a)
    for (NodeId b = 0; b < m; ++b)
      if (bits[a * m + b]) out.pairs.emplace_back(a, b);
  return out;
}

inline bool verify_strategy(const StrategyRelation& r, const SignedGame& s, const SignedGame& t) {
  for (const auto& [a, b] : r.pairs)
    if (a >= s.node_count() || b >= t.node_count())
      throw InputError("verify_strategy: relation mentions a node outside the games");
  auto rel = [&](NodeId a, NodeId b) { return r.contains(a, b); };
  return std::all_of(r.pairs.begin(), r.pairs.end(), [&](const auto& p) {
    return detail::strategy_clause(r.mode, s, t, rel, p.first, p.second);
  });
}

// Matrix-vector products through game arithmetic.
//   left:  out_j = sum_i vec_i * m_ij  (vec has one entry per row)
//   right: out_i = sum_j m_ij * vec_j  (vec has one entry per column)
enum class KanSide { left, right };

inline std::vector<SignedGame> kan_matvec(const std::vector<std::vector<SignedGame>>& matrix,
                                          const std::vector<SignedGame>& vec, KanSide side) {
  const std::size_t p = matrix.size();
  const std::size_t q = p == 0 ? 0 : matrix[0].size();
  for (const auto& row : matrix)
    if (row.size() != q) throw InputError("kan_matvec: ragged matrix");
  if ((side == KanSide::left && vec.size() != p) || (side == KanSide::right && vec.size() != q))
    throw InputError("kan_matvec: dimension mismatch");
  GameStore st;
  std::vector<std::vector<GameId>> m(p, std::vector<GameId>(q));
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < q; ++j) m[i][j] = st.import(matrix[i][j]);
  std::vector<GameId> v;
  for (const auto& g : vec) v.push_back(st.import(g));
  std::vector<SignedGame> out;
  if (side == KanSide::left) {
    for (std::size_t j = 0; j < q; ++j) {
      GameId acc = st.zero();
      for (std::size_t i = 0; i < p; ++i) acc = st.add(acc, st.mul(v[i], m[i][j]));
      out.push_back(st.export_game(acc));
    }
  } else {
    for (std::size_t i = 0; i < p; ++i) {
      GameId acc = st.zero();
      for (std::size_t j = 0; j < q; ++j) acc = st.add(acc, st.mul(m[i][j], v[j]));
      out.push_back(st.export_game(acc));
    }
  }
  return out;
}

// .sg: `node <id>`, `edge <src> - <dst>` (left), `edge <src> + <dst>`
// (right), `root <id>`. Ids may be sparse.
inline SignedGame parse_sg(std::istream& in) {
  std::map<std::uint64_t, std::size_t> declared;
  std::vector<std::tuple<std::uint64_t, char, std::uint64_t, std::size_t>> raw;
  std::optional<std::uint64_t> root;
  std::size_t root_line = 0;
  std::string line;
  std::size_t lineno = 0;
  auto id = [&](const std::string& t) -> std::uint64_t {
    if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError(lineno, "expected a decimal id, got '" + t + "'");
    return std::stoull(t);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (tok[0] == "node" && tok.size() == 2) {
      if (!declared.emplace(id(tok[1]), lineno).second) throw ParseError(lineno, "duplicate node");
    } else if (tok[0] == "edge" && tok.size() == 4 && (tok[2] == "-" || tok[2] == "+")) {
      raw.emplace_back(id(tok[1]), tok[2][0], id(tok[3]), lineno);
    } else if (tok[0] == "root" && tok.size() == 2) {
      if (root) throw ParseError(lineno, "duplicate root");
      root = id(tok[1]);
      root_line = lineno;
    } else {
      throw ParseError(lineno, "expected 'node <id>', 'edge <src> -|+ <dst>' or 'root <id>'");
    }
  }
  if (!root) throw ParseError(lineno, "missing root");
  std::map<std::uint64_t, NodeId> dense;
  for (const auto& [k, unused] : declared) dense.emplace(k, static_cast<NodeId>(dense.size()));
  auto look = [&](std::uint64_t k, std::size_t at) {
    auto it = dense.find(k);
    if (it == dense.end()) throw ParseError(at, "undeclared node " + std::to_string(k));
    return it->second;
  };
  std::vector<Edge> l, r;
  for (const auto& [s, sign, t, at] : raw) (sign == '-' ? l : r).push_back({look(s, at), look(t, at)});
  return SignedGame(dense.size(), l, r, look(*root, root_line));
}

inline SignedGame parse_sg(const std::string& text) {
  std::istringstream in(text);
  return parse_sg(in);
}

inline void write_sg(std::ostream& out, const SignedGame& g) {
  for (NodeId v = 0; v < g.node_count(); ++v) out << "node " << v << '\n';
  for (const Edge& e : g.left_edges()) out << "edge " << e.source << " - " << e.target << '\n';
  for (const Edge& e : g.right_edges()) out << "edge " << e.source << " + " << e.target << '\n';
  out << "root " << g.root() << '\n';
}

// Inline literals: `{a, b | c}` with nested games, integers as shorthand
// for Conway integers, and `*` for {0|0}.
inline SignedGame parse_game_literal(const std::string& text) {
  GameStore st;
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  };
  auto fail = [&](const std::string& what) -> InputError {
    return InputError("game literal at column " + std::to_string(pos + 1) + ": " + what);
  };
  std::function<GameId()> game = [&]() -> GameId {
    skip();
    if (pos >= text.size()) throw fail("unexpected end");
    if (text[pos] == '*') {
      ++pos;
      return st.intern({st.zero()}, {st.zero()});
    }
    if (text[pos] == '{') {
      ++pos;
      std::vector<GameId> sides[2];
      int side = 0;
      for (;;) {
        skip();
        if (pos >= text.size()) throw fail("unterminated '{'");
        const char c = text[pos];
        if (c == '}') {
          if (side == 0) throw fail("missing '|'");
          ++pos;
          break;
        }
        if (c == '|') {
          if (side == 1) throw fail("second '|'");
          side = 1;
          ++pos;
          continue;
        }
        if (c == ',') {
          ++pos;
          continue;
        }
        sides[side].push_back(game());
      }
      return st.intern(sides[0], sides[1]);
    }
    const std::size_t start = pos;
    if (text[pos] == '-' || text[pos] == '+') ++pos;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
    std::int64_t n = 0;
    if (!coproc::detail::parse_int64(text.substr(start, pos - start), n)) {
      pos = start;
      throw fail("expected '{', '*' or an integer");
    }
    if (n > 1000 || n < -1000) throw fail("integer shorthand limited to |n| <= 1000");
    return st.integer(n);
  };
  const GameId g = game();
  skip();
  if (pos != text.size()) throw fail("trailing characters");
  return st.export_game(g);
}

// Renders a well-founded game as a nested literal; cyclic games are
// rendered by their .sg text instead.
inline std::string to_literal(const SignedGame& g) {
  if (!g.wellfounded()) {
    std::ostringstream os;
    write_sg(os, g);
    return os.str();
  }
  std::function<std::string(NodeId)> go = [&](NodeId v) {
    std::string out = "{";
    for (std::size_t i = 0; i < g.left(v).size(); ++i) out += (i ? "," : "") + go(g.left(v)[i]);
    out += "|";
    for (std::size_t i = 0; i < g.right(v).size(); ++i) out += (i ? "," : "") + go(g.right(v)[i]);
    return out + "}";
  };
  return go(g.root());
}

}  // namespace coproc::games
