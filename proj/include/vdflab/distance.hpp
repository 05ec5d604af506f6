#pragma once

#include "property.hpp"
#include "wgraph.hpp"

namespace vdflab {

inline Rational edit_distance(const Graph& g1, const Graph& g2, const VertexDistribution& d) {
  if (g1.n() != g2.n() || g1.n() != d.size()) throw InputError("edit_distance needs equal vertex counts");
  Rational s = 0;
  for (int a = 0; a < g1.n(); ++a) {
    VertexSet diff = (g1.neighbors(a) ^ g2.neighbors(a));
    diff.for_each([&](int b) {
      if (b > a) s += d[a] * d[b];
    });
  }
  return s;
}

struct DistanceResult {
  Rational value;
  Graph witness;
};

constexpr int kBruteForceCap = 7;

// Exact branch-and-bound over all graphs on V(G). Pairs are decided in a fixed
// order: zero-weight pairs first, then positive pairs, each group ordered by
// (larger endpoint, smaller endpoint). "Keep" is tried before "flip", and only a
// strictly cheaper candidate replaces the incumbent, so the witness is the
// lexicographically least minimizer of that order.
inline DistanceResult distance_to_property(const WeightedGraph& wg, const Property& p, int cap = kBruteForceCap) {
  int n = wg.n();
  if (n > cap) throw ResourceError("distance oracle capped at " + std::to_string(cap) + " vertices");
  wg.dist.require_units(std::int64_t(1) << 60, "distance_to_property");

  struct Pair {
    int a, b;
    i128 cost;
  };
  std::vector<Pair> zero, pos;
  for (int b = 1; b < n; ++b)
    for (int a = 0; a < b; ++a) {
      i128 c = i128(wg.dist.unit(a)) * wg.dist.unit(b);
      (c == 0 ? zero : pos).push_back({a, b, c});
    }
  std::vector<Pair> order = zero;
  order.insert(order.end(), pos.begin(), pos.end());
  const int m = static_cast<int>(order.size());

  // after deciding position k, vertices 0..prefix[k] have all their pairs decided
  std::vector<int> prefix(m, 0);
  {
    std::vector<int> decided_at(n * n, -1);
    for (int k = 0; k < m; ++k) decided_at[order[k].a * n + order[k].b] = k;
    for (int k = 0; k < m; ++k) {
      int j = 0;
      for (int v = 1; v < n; ++v) {
        bool ok = true;
        for (int u = 0; u < v && ok; ++u) ok = decided_at[u * n + v] <= k;
        if (!ok) break;
        j = v;
      }
      prefix[k] = j;
    }
  }

  Graph cur = wg.graph;
  std::optional<i128> best;
  Graph best_graph;

  auto rec = [&](auto&& self, int k, i128 cost, int checked) -> void {
    if (best && cost >= *best) return;
    if (k == m) {
      if (checked < n - 1 || !p.hereditary)
        if (!p(cur)) return;
      best = cost;
      best_graph = cur;
      return;
    }
    const Pair& pr = order[k];
    for (int flip = 0; flip < 2; ++flip) {
      i128 c = cost + (flip ? pr.cost : 0);
      if (best && c >= *best) continue;
      if (flip) cur.toggle(pr.a, pr.b);
      int now = checked;
      bool ok = true;
      if (p.hereditary && prefix[k] > checked) {
        std::vector<int> vs(prefix[k] + 1);
        std::iota(vs.begin(), vs.end(), 0);
        ok = p(cur.induced(vs));
        now = prefix[k];
      }
      if (ok) self(self, k + 1, c, now);
      if (flip) cur.toggle(pr.a, pr.b);
    }
  };
  if (n <= 1) {
    if (!p(wg.graph)) throw EmptyPropertyError("no " + std::to_string(n) + "-vertex graph satisfies " + p.name);
    return {0, wg.graph};
  }
  rec(rec, 0, 0, 0);
  if (!best) throw EmptyPropertyError("no " + std::to_string(n) + "-vertex graph satisfies " + p.name);
  return {Rational(BigInt(*best), BigInt(i128(wg.dist.scale()) * wg.dist.scale())), best_graph};
}

inline bool is_far(const WeightedGraph& wg, const Property& p, const Rational& eps, int cap = kBruteForceCap) {
  if (eps <= 0) return true;
  return distance_to_property(wg, p, cap).value >= eps;
}

inline bool has_closed_form(const Property& p) { return p.closed_form != ClosedForm::None; }

inline Rational distance_to_property_closed_form(const WeightedGraph& wg, const Property& p) {
  const Graph& g = wg.graph;
  switch (p.closed_form) {
    case ClosedForm::EdgeFree:
      return total_edge_weight(wg);
    case ClosedForm::Complete: {
      Rational s = 0;
      for (int a = 0; a < g.n(); ++a)
        for (int b = a + 1; b < g.n(); ++b)
          if (!g.adjacent(a, b)) s += wg.dist[a] * wg.dist[b];
      return s;
    }
    case ClosedForm::EdgeDensityLe: {
      // keep at most floor(bound * n^2 / 2) edges; delete the lightest surplus
      BigInt allowed = floor_r(p.density_bound * g.n() * g.n() / 2);
      std::vector<Rational> w;
      for (auto [a, b] : g.edges()) w.push_back(wg.dist[a] * wg.dist[b]);
      if (BigInt(w.size()) <= allowed) return 0;
      std::sort(w.begin(), w.end());
      std::size_t surplus = w.size() - (allowed < 0 ? 0 : allowed.convert_to<std::size_t>());
      Rational s = 0;
      for (std::size_t i = 0; i < surplus; ++i) s += w[i];
      return s;
    }
    case ClosedForm::None:
      break;
  }
  throw InputError(p.name + " has no closed-form distance");
}

// Closed form when available, otherwise the exact search.
inline Rational distance_value(const WeightedGraph& wg, const Property& p, int cap = kBruteForceCap) {
  if (has_closed_form(p)) return distance_to_property_closed_form(wg, p);
  return distance_to_property(wg, p, cap).value;
}

}  // namespace vdflab
