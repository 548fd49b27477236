#pragma once

// Signature-based partition refinement shared by the hyperset and game
// modules. Works on finite graphs with a fixed number of edge labels and
// produces class ranks that depend only on graph structure, so the same
// ranks come out for isomorphic (indeed for bisimilar) pointed graphs.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <string_view>
#include <utility>
#include <vector>

namespace coproc::detail {

using Index = std::uint32_t;

struct LabeledGraph {
  std::size_t node_count = 0;
  // succ[label][node] lists the targets of edges with that label.
  std::vector<std::vector<std::vector<Index>>> succ;

  LabeledGraph() = default;
  LabeledGraph(std::size_t nodes, std::size_t labels)
      : node_count(nodes), succ(labels, std::vector<std::vector<Index>>(nodes)) {}

  std::size_t label_count() const { return succ.size(); }
};

// Coarsest stable partition of the strong bisimulation on `g`.
// Result[v] is the rank of v's class; ranks are dense and ordered by the
// final signatures, never by node numbering.
inline std::vector<Index> refine_ranks(const LabeledGraph& g) {
  const std::size_t n = g.node_count;
  std::vector<Index> cls(n, 0);
  std::size_t classes = n == 0 ? 0 : 1;
  std::vector<std::vector<Index>> sigs(n);
  for (;;) {
    for (std::size_t v = 0; v < n; ++v) {
      auto& sig = sigs[v];
      sig.clear();
      sig.push_back(cls[v]);
      for (std::size_t l = 0; l < g.label_count(); ++l) {
        const std::size_t mark = sig.size();
        sig.push_back(0);
        for (Index w : g.succ[l][v]) sig.push_back(cls[w]);
        std::sort(sig.begin() + static_cast<std::ptrdiff_t>(mark) + 1, sig.end());
        sig.erase(std::unique(sig.begin() + static_cast<std::ptrdiff_t>(mark) + 1, sig.end()),
                  sig.end());
        sig[mark] = static_cast<Index>(sig.size() - mark - 1);
      }
    }
    std::vector<Index> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<Index>(i);
    std::sort(order.begin(), order.end(),
              [&](Index a, Index b) { return sigs[a] < sigs[b]; });
    std::vector<Index> next(n, 0);
    Index rank = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (i > 0 && sigs[order[i]] != sigs[order[i - 1]]) ++rank;
      next[order[i]] = rank;
    }
    const std::size_t next_classes = n == 0 ? 0 : static_cast<std::size_t>(rank) + 1;
    cls.swap(next);
    if (next_classes == classes) break;
    classes = next_classes;
  }
  return cls;
}

// Quotient of `g` by the class ranks, renumbered breadth-first from the
// root's class with successors visited in rank order.
struct CanonicalForm {
  LabeledGraph graph;  // root is node 0
  std::vector<Index> node_of_class;
};

inline CanonicalForm canonical_quotient(const LabeledGraph& g, Index root,
                                        const std::vector<Index>& ranks) {
  const std::size_t labels = g.label_count();
  const std::size_t class_count =
      ranks.empty() ? 0 : static_cast<std::size_t>(*std::max_element(ranks.begin(), ranks.end())) + 1;
  // Successor classes per class; every member of a stable class has the same.
  std::vector<std::vector<std::vector<Index>>> csucc(
      labels, std::vector<std::vector<Index>>(class_count));
  std::vector<bool> filled(class_count, false);
  for (std::size_t v = 0; v < g.node_count; ++v) {
    const Index c = ranks[v];
    if (filled[c]) continue;
    filled[c] = true;
    for (std::size_t l = 0; l < labels; ++l) {
      auto& out = csucc[l][c];
      for (Index w : g.succ[l][v]) out.push_back(ranks[w]);
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
    }
  }
  constexpr Index unset = static_cast<Index>(-1);
  std::vector<Index> number(class_count, unset);
  std::vector<Index> order;
  std::deque<Index> queue;
  number[ranks[root]] = 0;
  order.push_back(ranks[root]);
  queue.push_back(ranks[root]);
  while (!queue.empty()) {
    const Index c = queue.front();
    queue.pop_front();
    // Visit all labels' successors merged in rank order.
    std::vector<Index> kids;
    for (std::size_t l = 0; l < labels; ++l)
      kids.insert(kids.end(), csucc[l][c].begin(), csucc[l][c].end());
    std::sort(kids.begin(), kids.end());
    kids.erase(std::unique(kids.begin(), kids.end()), kids.end());
    for (Index k : kids) {
      if (number[k] != unset) continue;
      number[k] = static_cast<Index>(order.size());
      order.push_back(k);
      queue.push_back(k);
    }
  }
  CanonicalForm out{LabeledGraph(order.size(), labels), {}};
  out.node_of_class = number;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t l = 0; l < labels; ++l) {
      auto& dst = out.graph.succ[l][i];
      for (Index k : csucc[l][order[i]]) dst.push_back(number[k]);
      std::sort(dst.begin(), dst.end());
    }
  }
  return out;
}

// FNV-1a, 64 bit.
class Fnv1a {
 public:
  void add(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      state_ ^= (v >> (8 * i)) & 0xffu;
      state_ *= 0x100000001b3ull;
    }
  }
  void add(std::string_view s) {
    for (unsigned char ch : s) {
      state_ ^= ch;
      state_ *= 0x100000001b3ull;
    }
  }
  std::uint64_t value() const { return state_; }

 private:
  std::uint64_t state_ = 0xcbf29ce484222325ull;
};

// Nodes reachable from `root` over all labels, in breadth-first order.
inline std::vector<Index> reachable_from(const LabeledGraph& g, Index root) {
  std::vector<bool> seen(g.node_count, false);
  std::vector<Index> order{root};
  seen[root] = true;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t l = 0; l < g.label_count(); ++l) {
      for (Index w : g.succ[l][order[i]]) {
        if (!seen[w]) {
          seen[w] = true;
          order.push_back(w);
        }
      }
    }
  }
  return order;
}

// True iff no cycle is reachable from `root` (iterative three-colour DFS).
inline bool acyclic_from(const LabeledGraph& g, Index root) {
  enum class Mark : unsigned char { white, grey, black };
  std::vector<Mark> mark(g.node_count, Mark::white);
  // Stack of (node, next flattened successor position).
  std::vector<std::pair<Index, std::size_t>> stack{{root, 0}};
  mark[root] = Mark::grey;
  while (!stack.empty()) {
    auto& [v, pos] = stack.back();
    std::size_t flat = pos;
    Index next = 0;
    bool found = false;
    for (std::size_t l = 0; l < g.label_count() && !found; ++l) {
      const auto& s = g.succ[l][v];
      if (flat < s.size()) {
        next = s[flat];
        found = true;
      } else {
        flat -= s.size();
      }
    }
    if (!found) {
      mark[v] = Mark::black;
      stack.pop_back();
      continue;
    }
    ++pos;
    if (mark[next] == Mark::grey) return false;
    if (mark[next] == Mark::white) {
      mark[next] = Mark::grey;
      stack.emplace_back(next, 0);
    }
  }
  return true;
}

}  // namespace coproc::detail
