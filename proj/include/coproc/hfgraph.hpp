#pragma once

// Hereditarily finite sets and hypersets as pointed graphs.
//
// A node stands for the set of its successors; edges are the membership
// relation, read from the container to the element. Cycles are allowed, so
// a single self-looping node is the hyperset Omega = {Omega}. Two pointed
// graphs denote the same set iff their roots are bisimilar.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "coproc/detail/refine.hpp"
#include "coproc/error.hpp"

namespace coproc::hf {

using NodeId = std::uint32_t;

struct Edge {
  NodeId source;
  NodeId target;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

enum class Mode { strong, reflexive };

// Pointed graph. Construction validates endpoints, removes duplicate edges
// and prunes every node not reachable from the root; surviving nodes keep
// their relative order and are renumbered densely.
class HGraph {
 public:
  HGraph(std::size_t node_count, std::vector<Edge> edges, NodeId root,
         bool reflexive_mode = false)
      : reflexive_mode_(reflexive_mode) {
    if (node_count == 0) throw InputError("hgraph: graph needs at least one node");
    if (root >= node_count) throw InputError("hgraph: root " + std::to_string(root) + " out of range");
    std::vector<std::vector<NodeId>> succ(node_count);
    for (const Edge& e : edges) {
      if (e.source >= node_count || e.target >= node_count)
        throw InputError("hgraph: dangling edge " + std::to_string(e.source) + " -> " +
                         std::to_string(e.target));
      succ[e.source].push_back(e.target);
    }
    std::vector<bool> seen(node_count, false);
    std::vector<NodeId> stack{root};
    seen[root] = true;
    while (!stack.empty()) {
      NodeId v = stack.back();
      stack.pop_back();
      for (NodeId w : succ[v]) {
        if (!seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
      }
    }
    std::vector<NodeId> renumber(node_count, 0);
    NodeId next = 0;
    for (std::size_t v = 0; v < node_count; ++v)
      if (seen[v]) renumber[v] = next++;
    succ_.assign(next, {});
    for (std::size_t v = 0; v < node_count; ++v) {
      if (!seen[v]) continue;
      auto& out = succ_[renumber[v]];
      for (NodeId w : succ[v]) out.push_back(renumber[w]);
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
    }
    root_ = renumber[root];
  }

  std::size_t node_count() const { return succ_.size(); }
  NodeId root() const { return root_; }
  bool reflexive_mode() const { return reflexive_mode_; }
  const std::vector<NodeId>& successors(NodeId v) const { return succ_.at(v); }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (NodeId v = 0; v < succ_.size(); ++v)
      for (NodeId w : succ_[v]) out.push_back({v, w});
    return out;
  }

  std::size_t edge_count() const {
    std::size_t n = 0;
    for (const auto& s : succ_) n += s.size();
    return n;
  }

  HGraph with_mode(bool reflexive) const {
    HGraph copy = *this;
    copy.reflexive_mode_ = reflexive;
    return copy;
  }

  detail::LabeledGraph labeled() const {
    detail::LabeledGraph g(succ_.size(), 1);
    g.succ[0] = succ_;
    return g;
  }

  // Structural identity: same numbering, same edges, same root.
  friend bool operator==(const HGraph& a, const HGraph& b) {
    return a.root_ == b.root_ && a.succ_ == b.succ_;
  }

 private:
  std::vector<std::vector<NodeId>> succ_;
  NodeId root_ = 0;
  bool reflexive_mode_ = false;
};

struct CanonicalSet {
  HGraph graph;
  std::uint64_t digest;

  friend bool operator==(const CanonicalSet& a, const CanonicalSet& b) {
    return a.digest == b.digest && a.graph == b.graph;
  }
};

inline std::uint64_t digest_of(const HGraph& g) {
  detail::Fnv1a h;
  h.add(std::string_view("hgraph"));
  h.add(static_cast<std::uint64_t>(g.node_count()));
  h.add(static_cast<std::uint64_t>(g.root()));
  for (const Edge& e : g.edges()) {
    h.add(static_cast<std::uint64_t>(e.source));
    h.add(static_cast<std::uint64_t>(e.target));
  }
  return h.value();
}

namespace detail {

using Relation = std::vector<char>;  // row-major, |a| x |b|

// One evaluation of the reflexive (stuttering) clause for the pair (s, t).
inline bool reflexive_clause(const HGraph& a, const HGraph& b, const Relation& r, NodeId s,
                             NodeId t) {
  const std::size_t m = b.node_count();
  auto rel = [&](NodeId x, NodeId y) { return r[x * m + y] != 0; };
  for (NodeId s1 : a.successors(s)) {
    bool ok = false;
    for (NodeId t1 : b.successors(t))
      if (rel(s1, t1)) { ok = true; break; }
    if (!ok)
      for (NodeId s2 : a.successors(s1))
        if (rel(s2, t)) { ok = true; break; }
    if (!ok) return false;
  }
  for (NodeId t1 : b.successors(t)) {
    bool ok = false;
    for (NodeId s1 : a.successors(s))
      if (rel(s1, t1)) { ok = true; break; }
    if (!ok)
      for (NodeId t2 : b.successors(t1))
        if (rel(s, t2)) { ok = true; break; }
    if (!ok) return false;
  }
  return true;
}

// Greatest relation between the nodes of a and b closed under the
// reflexive clause, by downward iteration from the full relation.
inline Relation reflexive_gfp(const HGraph& a, const HGraph& b) {
  const std::size_t n = a.node_count(), m = b.node_count();
  Relation r(n * m, 1);
  bool changed = true;
  while (changed) {
    changed = false;
    for (NodeId s = 0; s < n; ++s)
      for (NodeId t = 0; t < m; ++t)
        if (r[s * m + t] && !reflexive_clause(a, b, r, s, t)) {
          r[s * m + t] = 0;
          changed = true;
        }
  }
  return r;
}

// Partition nodes by identical rows of a reflexive symmetric relation.
inline std::vector<NodeId> rows_partition(const Relation& r, std::size_t n) {
  std::map<std::vector<char>, NodeId> ids;
  std::vector<NodeId> cls(n);
  for (std::size_t v = 0; v < n; ++v) {
    std::vector<char> row(r.begin() + static_cast<std::ptrdiff_t>(v * n),
                          r.begin() + static_cast<std::ptrdiff_t>((v + 1) * n));
    auto [it, inserted] = ids.try_emplace(std::move(row), static_cast<NodeId>(ids.size()));
    cls[v] = it->second;
  }
  return cls;
}

inline HGraph quotient(const HGraph& g, const std::vector<NodeId>& cls) {
  const std::size_t k = cls.empty() ? 0 : *std::max_element(cls.begin(), cls.end()) + 1;
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) edges.push_back({cls[e.source], cls[e.target]});
  return HGraph(k, std::move(edges), cls[g.root()], g.reflexive_mode());
}

// Largest equivalence reachable by alternately intersecting with the clause
// image and splitting by rows, starting from the greatest fixpoint. Every
// step is invariant under renumbering, and the result is an equivalence that
// satisfies the clause, so quotienting by it preserves reflexive
// bisimilarity with the original.
inline std::vector<NodeId> reflexive_partition(const HGraph& g) {
  const std::size_t n = g.node_count();
  Relation r = reflexive_gfp(g, g);
  for (;;) {
    std::vector<NodeId> cls = rows_partition(r, n);
    Relation e(n * n, 0);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) e[x * n + y] = cls[x] == cls[y];
    Relation next = e;
    bool stable = true;
    for (NodeId s = 0; s < n; ++s)
      for (NodeId t = 0; t < n; ++t)
        if (e[s * n + t] && !reflexive_clause(g, g, e, s, t)) {
          next[s * n + t] = 0;
          stable = false;
        }
    if (stable) return cls;
    r = std::move(next);
  }
}

inline HGraph strong_canonical(const HGraph& g) {
  const auto lg = g.labeled();
  const auto ranks = coproc::detail::refine_ranks(lg);
  const auto form = coproc::detail::canonical_quotient(lg, g.root(), ranks);
  std::vector<Edge> edges;
  for (NodeId v = 0; v < form.graph.node_count; ++v)
    for (NodeId w : form.graph.succ[0][v]) edges.push_back({v, w});
  return HGraph(form.graph.node_count, std::move(edges), 0, g.reflexive_mode());
}

}  // namespace detail

// Quotient by the greatest bisimulation of the graph's mode, numbered
// breadth-first from the root with successors in refinement-rank order.
// In reflexive mode the stuttering relation need not be transitive; the
// quotient then uses the coarsest clause-stable equivalence described at
// detail::reflexive_partition, and repeats until the node count is stable.
inline CanonicalSet canon(const HGraph& g) {
  HGraph current = detail::strong_canonical(g);
  if (g.reflexive_mode()) {
    for (;;) {
      HGraph next = detail::strong_canonical(
          detail::quotient(current, detail::reflexive_partition(current)));
      if (next.node_count() == current.node_count()) break;
      current = std::move(next);
    }
  }
  const auto digest = digest_of(current);
  return CanonicalSet{std::move(current), digest};
}

inline bool bisimilar(const HGraph& g, const HGraph& h, Mode mode) {
  if (mode == Mode::strong) {
    // Refine the disjoint union and compare the roots' classes.
    const std::size_t n = g.node_count();
    coproc::detail::LabeledGraph u(n + h.node_count(), 1);
    for (NodeId v = 0; v < n; ++v)
      for (NodeId w : g.successors(v)) u.succ[0][v].push_back(w);
    for (NodeId v = 0; v < h.node_count(); ++v)
      for (NodeId w : h.successors(v))
        u.succ[0][n + v].push_back(static_cast<NodeId>(n + w));
    const auto ranks = coproc::detail::refine_ranks(u);
    return ranks[g.root()] == ranks[n + h.root()];
  }
  const auto r = detail::reflexive_gfp(g, h);
  return r[g.root() * h.node_count() + h.root()] != 0;
}

inline bool is_wellfounded(const HGraph& g) {
  return coproc::detail::acyclic_from(g.labeled(), g.root());
}

inline constexpr std::size_t default_vn_bound = 12;

// von Neumann numeral n = {0, ..., n-1}; node k is the numeral k.
inline HGraph vn(std::size_t n, std::size_t bound = default_vn_bound) {
  if (n > bound)
    throw BoundError("vn: " + std::to_string(n) + " exceeds bound " + std::to_string(bound));
  std::vector<Edge> edges;
  for (NodeId k = 0; k <= n; ++k)
    for (NodeId j = 0; j < k; ++j) edges.push_back({k, j});
  return HGraph(n + 1, std::move(edges), static_cast<NodeId>(n));
}

// Stage n of the powerset tower over 1: every element of P^n(1), in the
// order of the subset bitmasks that build it from stage n-1. Stage 4 has
// 65536 elements and must be requested explicitly.
inline std::vector<CanonicalSet> pow_tower(std::size_t n, bool allow_stage4 = false) {
  if (n > 4 || (n == 4 && !allow_stage4))
    throw BoundError("pow_tower: stage " + std::to_string(n) +
                     (n == 4 ? " needs the explicit large-stage flag" : " is not supported"));
  // Interned well-founded sets: node id -> sorted element ids.
  std::vector<std::vector<NodeId>> elems{{}};
  std::map<std::vector<NodeId>, NodeId> intern{{{}, 0}};
  std::vector<NodeId> stage{0};
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<NodeId> next;
    const std::size_t m = stage.size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
      std::vector<NodeId> members;
      for (std::size_t i = 0; i < m; ++i)
        if (mask >> i & 1u) members.push_back(stage[i]);
      std::sort(members.begin(), members.end());
      auto [it, inserted] = intern.try_emplace(members, static_cast<NodeId>(elems.size()));
      if (inserted) elems.push_back(members);
      next.push_back(it->second);
    }
    stage = std::move(next);
  }
  std::vector<CanonicalSet> out;
  out.reserve(stage.size());
  for (NodeId id : stage) {
    std::vector<Edge> edges;
    for (NodeId v = 0; v <= id; ++v)
      for (NodeId w : elems[v]) edges.push_back({v, w});
    out.push_back(canon(HGraph(static_cast<std::size_t>(id) + 1, std::move(edges), id)));
  }
  return out;
}

// .hg text format:
//   node <id> [reflexive]   declare a node; `reflexive` adds the self-membership
//   edge <src> <dst>         membership edge, container to element
//   root <id>                exactly once
//   # ...                    comment
// Declared ids may be sparse; they are numbered densely in ascending order.
// Declaring any node reflexive puts the graph in reflexive mode.
inline HGraph parse_hg(std::istream& in) {
  std::map<std::uint64_t, std::size_t> declared_line;
  std::vector<std::pair<std::uint64_t, bool>> nodes;
  std::vector<std::tuple<std::uint64_t, std::uint64_t, std::size_t>> raw_edges;
  std::optional<std::uint64_t> root;
  std::size_t root_line = 0;
  std::string line;
  std::size_t lineno = 0;
  auto parse_id = [&](const std::string& tok) {
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError(lineno, "expected a decimal id, got '" + tok + "'");
    try {
      return static_cast<std::uint64_t>(std::stoull(tok));
    } catch (const std::exception&) {
      throw ParseError(lineno, "id out of range: " + tok);
    }
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (tok[0] == "node") {
      if (tok.size() < 2 || tok.size() > 3 || (tok.size() == 3 && tok[2] != "reflexive"))
        throw ParseError(lineno, "expected 'node <id> [reflexive]'");
      const auto id = parse_id(tok[1]);
      if (!declared_line.emplace(id, lineno).second)
        throw ParseError(lineno, "duplicate node " + tok[1]);
      nodes.emplace_back(id, tok.size() == 3);
    } else if (tok[0] == "edge") {
      if (tok.size() != 3) throw ParseError(lineno, "expected 'edge <src> <dst>'");
      raw_edges.emplace_back(parse_id(tok[1]), parse_id(tok[2]), lineno);
    } else if (tok[0] == "root") {
      if (tok.size() != 2) throw ParseError(lineno, "expected 'root <id>'");
      if (root) throw ParseError(lineno, "duplicate root (first given on line " +
                                             std::to_string(root_line) + ")");
      root = parse_id(tok[1]);
      root_line = lineno;
    } else {
      throw ParseError(lineno, "unknown directive '" + tok[0] + "'");
    }
  }
  if (!root) throw ParseError(lineno, "missing root");
  std::map<std::uint64_t, NodeId> dense;
  for (const auto& [id, unused] : declared_line) dense.emplace(id, static_cast<NodeId>(dense.size()));
  auto lookup = [&](std::uint64_t id, std::size_t at) {
    auto it = dense.find(id);
    if (it == dense.end()) throw ParseError(at, "undeclared node " + std::to_string(id));
    return it->second;
  };
  std::vector<Edge> edges;
  bool reflexive = false;
  for (const auto& [id, refl] : nodes) {
    if (refl) {
      edges.push_back({dense[id], dense[id]});
      reflexive = true;
    }
  }
  for (const auto& [s, t, at] : raw_edges) edges.push_back({lookup(s, at), lookup(t, at)});
  const NodeId r = lookup(*root, root_line);
  return HGraph(dense.size(), std::move(edges), r, reflexive);
}

inline HGraph parse_hg(const std::string& text) {
  std::istringstream in(text);
  return parse_hg(in);
}

// In reflexive mode self-membership is written as the `reflexive` marker, so
// a graph without any self-loop loses its mode on a round trip.
inline void write_hg(std::ostream& out, const HGraph& g) {
  auto self_loop = [&](NodeId v) {
    const auto& s = g.successors(v);
    return std::binary_search(s.begin(), s.end(), v);
  };
  for (NodeId v = 0; v < g.node_count(); ++v) {
    out << "node " << v;
    if (g.reflexive_mode() && self_loop(v)) out << " reflexive";
    out << '\n';
  }
  for (const Edge& e : g.edges())
    if (!(g.reflexive_mode() && e.source == e.target))
      out << "edge " << e.source << ' ' << e.target << '\n';
  out << "root " << g.root() << '\n';
}

}  // namespace coproc::hf
