#pragma once

#include "vdflab/vdflab.hpp"

#include <gtest/gtest.h>

namespace vdflab::oracle {

inline Graph random_graph(int n, Stream& s, double p = 0.5) {
  Graph g(n);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (s.coin(p)) g.add_edge(a, b);
  return g;
}

// Random distribution with weights k_i / total, some possibly zero.
inline VertexDistribution random_distribution(int n, Stream& s, int max_unit = 6, bool allow_zero = false) {
  std::vector<std::int64_t> u(n);
  std::int64_t total = 0;
  for (auto& x : u) {
    x = static_cast<std::int64_t>(s.below(max_unit + (allow_zero ? 1 : 0))) + (allow_zero ? 0 : 1);
    total += x;
  }
  if (total == 0) {
    u[0] = 1;
    total = 1;
  }
  std::vector<Rational> w;
  for (auto x : u) w.push_back(Rational(x, total));
  return VertexDistribution(w);
}

inline WeightedGraph random_wgraph(int n, Stream& s, double p = 0.5, bool allow_zero = false) {
  return WeightedGraph(random_graph(n, s, p), random_distribution(n, s, 6, allow_zero));
}

// Every graph on V(G): minimum weighted edit cost into P, by plain enumeration.
inline Rational naive_distance(const WeightedGraph& wg, const Property& p) {
  const int n = wg.n();
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
  std::optional<Rational> best;
  for (std::uint64_t mask = 0; mask < (1ULL << pairs.size()); ++mask) {
    Graph h(n);
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if ((mask >> i) & 1) h.add_edge(pairs[i].first, pairs[i].second);
    if (!p(h)) continue;
    Rational c = 0;
    for (auto [a, b] : pairs)
      if (h.adjacent(a, b) != wg.graph.adjacent(a, b)) c += wg.dist[a] * wg.dist[b];
    if (!best || c < *best) best = c;
  }
  if (!best) throw EmptyPropertyError("no member");
  return *best;
}

// Regularity by enumerating all subset pairs with exact rationals.
inline bool naive_regular(const WeightedGraph& wg, const VertexSet& x, const VertexSet& y, const Rational& eps) {
  auto xs = x.members(), ys = y.members();
  Rational mx = wg.mass(x), my = wg.mass(y);
  if (mx == 0 || my == 0) return true;
  Rational d = pair_density(wg, x, y);
  for (std::uint32_t a = 1; a < (1u << xs.size()); ++a) {
    VertexSet xa = subset_by_mask(xs, a);
    Rational ma = wg.mass(xa);
    if (ma == 0 || ma < eps * mx) continue;
    for (std::uint32_t b = 1; b < (1u << ys.size()); ++b) {
      VertexSet yb = subset_by_mask(ys, b);
      Rational mb = wg.mass(yb);
      if (mb == 0 || mb < eps * my) continue;
      if (rabs(pair_density(wg, xa, yb) - d) > eps) return false;
    }
  }
  return true;
}

}  // namespace vdflab::oracle
