#pragma once

#include "core.hpp"

#include <algorithm>
#include <utility>

namespace vdflab {

// Simple undirected graph on {0..n-1}; adjacency rows are bitsets.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n) : n_(n), adj_(n) {
    if (n < 0 || n > kMaxVertices)
      throw InputError("graph size " + std::to_string(n) + " outside [0," + std::to_string(kMaxVertices) + "]");
  }

  static Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    Graph g(n);
    for (auto [a, b] : edges) g.add_edge(a, b);
    return g;
  }
  static Graph empty(int n) { return Graph(n); }
  static Graph complete(int n) {
    Graph g(n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
  }
  static Graph cycle(int n) {
    Graph g(n);
    for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
    return g;
  }
  // path with k vertices
  static Graph path(int k) {
    Graph g(k);
    for (int i = 0; i + 1 < k; ++i) g.add_edge(i, i + 1);
    return g;
  }

  int n() const { return n_; }
  VertexSet vertices() const { return VertexSet::range(n_); }
  const VertexSet& neighbors(int v) const { return adj_[v]; }

  bool adjacent(int a, int b) const { return adj_[a].contains(b); }
  void add_edge(int a, int b) {
    check_pair(a, b);
    adj_[a].insert(b);
    adj_[b].insert(a);
  }
  void remove_edge(int a, int b) {
    check_pair(a, b);
    adj_[a].erase(b);
    adj_[b].erase(a);
  }
  void set_edge(int a, int b, bool on) { on ? add_edge(a, b) : remove_edge(a, b); }
  void toggle(int a, int b) { set_edge(a, b, !adjacent(a, b)); }

  int edge_count() const {
    int c = 0;
    for (int v = 0; v < n_; ++v) c += adj_[v].size();
    return c / 2;
  }
  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j)
        if (adjacent(i, j)) out.emplace_back(i, j);
    return out;
  }

  Graph complement() const {
    Graph g(n_);
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j)
        if (!adjacent(i, j)) g.add_edge(i, j);
    return g;
  }

  // G[vs] with vertices relabeled 0..k-1 in the given order
  Graph induced(const std::vector<int>& vs) const {
    Graph g(static_cast<int>(vs.size()));
    for (std::size_t i = 0; i < vs.size(); ++i)
      for (std::size_t j = i + 1; j < vs.size(); ++j)
        if (adjacent(vs[i], vs[j])) g.add_edge(static_cast<int>(i), static_cast<int>(j));
    return g;
  }
  Graph induced(const VertexSet& s) const { return induced(s.members()); }

  Graph without_vertex(int v) const {
    std::vector<int> keep;
    for (int u = 0; u < n_; ++u)
      if (u != v) keep.push_back(u);
    return induced(keep);
  }

  // one new vertex n with the given neighborhood
  Graph with_vertex(const VertexSet& nbrs) const {
    Graph g(n_ + 1);
    for (int v = 0; v < n_; ++v) g.adj_[v] = adj_[v];
    nbrs.for_each([&](int u) { g.add_edge(u, n_); });
    return g;
  }

  // disjoint union, other's vertices shifted by n
  Graph disjoint_union(const Graph& o) const {
    Graph g(n_ + o.n_);
    for (int v = 0; v < n_; ++v) g.adj_[v] = adj_[v];
    for (auto [a, b] : o.edges()) g.add_edge(a + n_, b + n_);
    return g;
  }

  bool operator==(const Graph& o) const { return n_ == o.n_ && adj_ == o.adj_; }
  bool operator!=(const Graph& o) const { return !(*this == o); }

  bool connected() const {
    if (n_ == 0) return true;
    VertexSet seen = VertexSet::single(0), frontier = seen;
    while (!frontier.empty()) {
      VertexSet next;
      frontier.for_each([&](int v) { next |= adj_[v]; });
      frontier = next.minus(seen);
      seen |= frontier;
    }
    return seen.size() == n_;
  }

  bool is_forest() const {
    // union-find over edges
    std::vector<int> parent(n_);
    for (int i = 0; i < n_; ++i) parent[i] = i;
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (auto [a, b] : edges()) {
      int ra = find(a), rb = find(b);
      if (ra == rb) return false;
      parent[ra] = rb;
    }
    return true;
  }

 private:
  void check_pair(int a, int b) const {
    if (a < 0 || b < 0 || a >= n_ || b >= n_) throw InputError("vertex out of range");
    if (a == b) throw InputError("self-loop at vertex " + std::to_string(a));
  }

  int n_ = 0;
  std::vector<VertexSet> adj_;
};

}  // namespace vdflab
