#pragma once

#include "graph.hpp"

#include <deque>
#include <map>
#include <mutex>
#include <set>

namespace vdflab {

namespace detail {

// Backtracking over maps of F's vertices (in order 0..f-1) into G.
template <class Visit>
bool copy_search(const Graph& g, const Graph& f, bool induced, Visit&& visit) {
  int k = f.n();
  std::vector<int> phi(k, -1);
  VertexSet used;
  auto rec = [&](auto&& self, int i) -> bool {
    if (i == k) return visit(phi);
    VertexSet cand = g.vertices().minus(used);
    for (int j = 0; j < i; ++j) {
      if (f.adjacent(i, j))
        cand &= g.neighbors(phi[j]);
      else if (induced)
        cand = cand.minus(g.neighbors(phi[j]));
    }
    for (int v : cand.members()) {
      phi[i] = v;
      used.insert(v);
      bool stop = self(self, i + 1);
      used.erase(v);
      if (stop) return true;
    }
    phi[i] = -1;
    return false;
  };
  return rec(rec, 0);
}

}  // namespace detail

inline bool induced_copy_exists(const Graph& g, const Graph& f) {
  if (f.n() > g.n()) return false;
  return detail::copy_search(g, f, true, [](const std::vector<int>&) { return true; });
}

// Every injective map preserving adjacency and non-adjacency, in lexicographic order.
inline std::vector<std::vector<int>> induced_copies(const Graph& g, const Graph& f) {
  std::vector<std::vector<int>> out;
  if (f.n() > g.n()) return out;
  detail::copy_search(g, f, true, [&](const std::vector<int>& phi) {
    out.push_back(phi);
    return false;
  });
  return out;
}

// Not necessarily induced: only F's edges must map to edges.
inline bool subgraph_copy_exists(const Graph& g, const Graph& f) {
  if (f.n() > g.n()) return false;
  return detail::copy_search(g, f, false, [](const std::vector<int>&) { return true; });
}

// ---- canonical labeling (n <= 11) ----

constexpr int kCanonMaxVertices = 11;

inline int pair_bit(int a, int b) {
  if (a > b) std::swap(a, b);
  return b * (b - 1) / 2 + a;
}

inline std::uint64_t adjacency_code(const Graph& g, const std::vector<int>& label) {
  std::uint64_t code = 0;
  for (auto [a, b] : g.edges()) code |= 1ULL << pair_bit(label[a], label[b]);
  return code | (static_cast<std::uint64_t>(g.n()) << 58);
}

inline Graph graph_from_code(std::uint64_t code) {
  int n = static_cast<int>(code >> 58);
  Graph g(n);
  for (int b = 1; b < n; ++b)
    for (int a = 0; a < b; ++a)
      if ((code >> pair_bit(a, b)) & 1ULL) g.add_edge(a, b);
  return g;
}

namespace detail {

using Cells = std::vector<std::vector<int>>;

inline void refine(const Graph& g, Cells& cells) {
  for (;;) {
    std::vector<int> cell_of(g.n());
    for (std::size_t c = 0; c < cells.size(); ++c)
      for (int v : cells[c]) cell_of[v] = static_cast<int>(c);
    Cells next;
    bool split = false;
    for (auto& cell : cells) {
      if (cell.size() == 1) {
        next.push_back(cell);
        continue;
      }
      std::map<std::vector<int>, std::vector<int>> groups;
      for (int v : cell) {
        std::vector<int> sig(cells.size(), 0);
        g.neighbors(v).for_each([&](int u) { ++sig[cell_of[u]]; });
        groups[sig].push_back(v);
      }
      if (groups.size() > 1) split = true;
      for (auto& [sig, vs] : groups) next.push_back(vs);
    }
    cells.swap(next);
    if (!split) return;
  }
}

inline bool all_twins(const Graph& g, const std::vector<int>& cell) {
  for (std::size_t i = 1; i < cell.size(); ++i) {
    int u = cell[0], v = cell[i];
    VertexSet nu = g.neighbors(u), nv = g.neighbors(v);
    nu.erase(v);
    nv.erase(u);
    if (nu != nv) return false;
  }
  return true;
}

inline void canon_search(const Graph& g, Cells cells, std::uint64_t& best, std::vector<int>& best_label) {
  refine(g, cells);
  std::size_t target = cells.size();
  for (std::size_t c = 0; c < cells.size(); ++c)
    if (cells[c].size() > 1) {
      target = c;
      break;
    }
  if (target == cells.size()) {
    std::vector<int> label(g.n());
    for (std::size_t c = 0; c < cells.size(); ++c) label[cells[c][0]] = static_cast<int>(c);
    std::uint64_t code = adjacency_code(g, label);
    if (best_label.empty() || code < best) {
      best = code;
      best_label = label;
    }
    return;
  }
  const auto cell = cells[target];
  std::size_t branches = all_twins(g, cell) ? 1 : cell.size();
  for (std::size_t k = 0; k < branches; ++k) {
    Cells child;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c != target) {
        child.push_back(cells[c]);
        continue;
      }
      child.push_back({cell[k]});
      std::vector<int> rest;
      for (int v : cell)
        if (v != cell[k]) rest.push_back(v);
      child.push_back(rest);
    }
    canon_search(g, std::move(child), best, best_label);
  }
}

}  // namespace detail

// Isomorphism-invariant 64-bit code; equal codes iff isomorphic.
inline std::uint64_t canonical_code(const Graph& g) {
  if (g.n() > kCanonMaxVertices) throw ResourceError("canonical form limited to " + std::to_string(kCanonMaxVertices) + " vertices");
  if (g.n() == 0) return 0;
  detail::Cells cells(1);
  for (int v = 0; v < g.n(); ++v) cells[0].push_back(v);
  std::uint64_t best = 0;
  std::vector<int> label;
  detail::canon_search(g, cells, best, label);
  return best;
}

inline Graph canonical_form(const Graph& g) { return graph_from_code(canonical_code(g)); }

inline bool isomorphic(const Graph& a, const Graph& b) {
  return a.n() == b.n() && a.edge_count() == b.edge_count() && canonical_code(a) == canonical_code(b);
}

// ---- enumeration of all graphs up to isomorphism ----

constexpr int kDefaultEnumerationCap = 8;

// Canonical representatives of every graph on exactly n vertices (cached).
inline const std::vector<Graph>& graphs_on(int n, int cap = kDefaultEnumerationCap) {
  if (n > cap || n > kCanonMaxVertices)
    throw ResourceError("graph enumeration capped at " + std::to_string(std::min(cap, kCanonMaxVertices)) + " vertices");
  static std::mutex mu;
  static std::deque<std::vector<Graph>> layers;
  std::lock_guard<std::mutex> lock(mu);
  if (layers.empty()) layers.push_back({Graph(0)});
  while (static_cast<int>(layers.size()) <= n) {
    int k = static_cast<int>(layers.size()) - 1;
    std::set<std::uint64_t> seen;
    std::vector<Graph> next;
    for (const auto& g : layers[k]) {
      for (std::uint64_t mask = 0; mask < (1ULL << k); ++mask) {
        VertexSet nb(mask, 0);
        Graph h = g.with_vertex(nb);
        std::uint64_t c = canonical_code(h);
        if (seen.insert(c).second) next.push_back(graph_from_code(c));
      }
    }
    layers.push_back(std::move(next));
  }
  return layers[n];
}

}  // namespace vdflab
