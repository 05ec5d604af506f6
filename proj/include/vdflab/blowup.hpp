#pragma once

#include "distance.hpp"
#include "io.hpp"
#include "random.hpp"

namespace vdflab {

struct Blowup {
  WeightedGraph base;
  int N = 0;
  std::vector<VertexSet> sets;  // V_1..V_n, consecutive blocks of the result
  Graph result;
  InternalPolicy policy = InternalPolicy::Empty;
  std::vector<int> owner;  // result vertex -> base vertex

  WeightedGraph uniform() const { return WeightedGraph::uniform(result); }
  std::vector<int> sizes() const {
    std::vector<int> out;
    for (const auto& s : sets) out.push_back(s.size());
    return out;
  }
};

// Least N with D(v)·N integral for every v.
inline std::int64_t least_blowup_size(const VertexDistribution& d) {
  BigInt l = 1;
  for (int v = 0; v < d.size(); ++v) l = boost::multiprecision::lcm(l, BigInt(boost::multiprecision::denominator(d[v])));
  if (l > kMaxVertices) throw ResourceError("least blowup size " + l.str() + " above vertex cap");
  return l.convert_to<std::int64_t>();
}

namespace detail {

inline Blowup blowup_skeleton(const WeightedGraph& wg, int N) {
  if (N < 1) throw InputError("blowup size must be >= 1");
  if (N > kMaxVertices) throw ResourceError("blowup size above vertex cap " + std::to_string(kMaxVertices));
  Blowup b;
  b.base = wg;
  b.N = N;
  b.result = Graph(N);
  int next = 0;
  for (int v = 0; v < wg.n(); ++v) {
    Rational bi = wg.dist[v] * N;
    if (boost::multiprecision::denominator(bi) != 1)
      throw InputError("N = " + std::to_string(N) + " is unsuitable: D(" + std::to_string(v) + ")·N = " + to_string(bi) + " is not an integer");
    int size = boost::multiprecision::numerator(bi).convert_to<int>();
    VertexSet s;
    for (int k = 0; k < size; ++k) {
      s.insert(next++);
      b.owner.push_back(v);
    }
    b.sets.push_back(s);
  }
  if (next != N) throw ContractError("blowup sets do not sum to N");
  for (auto [x, y] : wg.graph.edges())
    b.sets[x].for_each([&](int u) { b.sets[y].for_each([&](int w) { b.result.add_edge(u, w); }); });
  return b;
}

}  // namespace detail

inline Blowup dn_blowup(const WeightedGraph& wg, int N, InternalPolicy policy = InternalPolicy::Empty) {
  if (policy == InternalPolicy::Custom) throw InputError("custom internal graphs need the explicit overload");
  Blowup b = detail::blowup_skeleton(wg, N);
  b.policy = policy;
  if (policy == InternalPolicy::Clique)
    for (const auto& s : b.sets) {
      auto ms = s.members();
      for (std::size_t i = 0; i < ms.size(); ++i)
        for (std::size_t j = i + 1; j < ms.size(); ++j) b.result.add_edge(ms[i], ms[j]);
    }
  return b;
}

// internal[i] is the graph placed on V_i (its order must equal |V_i|).
inline Blowup dn_blowup(const WeightedGraph& wg, int N, const std::vector<Graph>& internal) {
  Blowup b = detail::blowup_skeleton(wg, N);
  b.policy = InternalPolicy::Custom;
  if (static_cast<int>(internal.size()) != wg.n()) throw InputError("one internal graph per base vertex");
  for (int v = 0; v < wg.n(); ++v) {
    auto ms = b.sets[v].members();
    if (internal[v].n() != static_cast<int>(ms.size())) throw InputError("internal graph " + std::to_string(v) + " has the wrong order");
    for (auto [x, y] : internal[v].edges()) b.result.add_edge(ms[x], ms[y]);
  }
  return b;
}

inline int project(const Blowup& b, int u) {
  if (u < 0 || u >= b.N) throw InputError("vertex " + std::to_string(u) + " is not in the blowup");
  return b.owner[u];
}

struct FarnessPair {
  Rational base;    // dist((G,D), P)
  Rational blowup;  // dist((blowup, uniform), P)
};

inline FarnessPair verify_blowup_farness(const WeightedGraph& wg, const Property& p, int N,
                                         InternalPolicy policy = InternalPolicy::Empty, int cap = kBruteForceCap) {
  Blowup b = dn_blowup(wg, N, policy);
  FarnessPair out;
  out.base = distance_value(wg, p, cap);
  if (!has_closed_form(p) && N > cap) throw ResourceError("blowup of " + std::to_string(N) + " vertices exceeds the distance cap");
  out.blowup = distance_value(b.uniform(), p, cap);
  if (out.blowup < out.base)
    throw CounterexampleError("blowup distance " + to_string(out.blowup) + " below base distance " + to_string(out.base));
  return out;
}

// Blowup whose sets follow the property's registered policy, with every induced copy
// of a minimal forbidden graph verified to meet each set at most once.
inline Blowup avoiding_blowup(const WeightedGraph& wg, const Property& p, int N, int family_cap = 5) {
  if (!p.avoiding_policy) throw PreconditionError(p.name + " has no registered blowup-avoiding policy");
  Blowup b = dn_blowup(wg, N, *p.avoiding_policy);
  std::vector<Graph> family = p.forbidden ? *p.forbidden : minimal_forbidden_family(p, std::min(family_cap, N));
  for (const auto& f : family) {
    if (f.n() > N) continue;
    std::optional<std::vector<int>> bad;
    detail::copy_search(b.result, f, true, [&](const std::vector<int>& phi) {
      std::vector<char> hit(wg.n(), 0);
      for (int u : phi) {
        if (hit[b.owner[u]]++) {
          bad = phi;
          return true;
        }
      }
      return false;
    });
    if (bad) {
      std::string where;
      for (int u : *bad) where += " " + std::to_string(u);
      throw CounterexampleError("policy fails for " + p.name + ": forbidden copy on" + where + " meets a set twice");
    }
  }
  return b;
}

// The proof's random graph H on base vertices: pick u_i uniformly in each V_i and
// join v_i, v_j iff u_i u_j is an edge of H'. Empty sets contribute isolated vertices.
inline Graph random_contraction(const Blowup& b, const Graph& h_prime, std::uint64_t seed) {
  if (h_prime.n() != b.N) throw InputError("H' must live on the blowup's vertex set");
  Stream s(seed);
  const int n = b.base.n();
  std::vector<int> pick(n, -1);
  for (int i = 0; i < n; ++i) {
    auto ms = b.sets[i].members();
    if (!ms.empty()) pick[i] = ms[s.below(ms.size())];
  }
  Graph h(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (pick[i] >= 0 && pick[j] >= 0 && h_prime.adjacent(pick[i], pick[j])) h.add_edge(i, j);
  return h;
}

// (1/N²) Σ_{i<j} |E_{G'}(V_i,V_j) Δ E_{H'}(V_i,V_j)| = E[dist_D(H, G)].
inline Rational expected_contraction_distance(const Blowup& b, const Graph& h_prime) {
  if (h_prime.n() != b.N) throw InputError("H' must live on the blowup's vertex set");
  std::int64_t diff = 0;
  for (int u = 0; u < b.N; ++u)
    for (int w = u + 1; w < b.N; ++w)
      if (b.owner[u] != b.owner[w] && b.result.adjacent(u, w) != h_prime.adjacent(u, w)) ++diff;
  return Rational(diff, std::int64_t(b.N) * b.N);
}

// ---- serialization: the result as a wgraph plus `sets` with block boundaries ----

inline std::string format_blowup(const Blowup& b) {
  std::ostringstream out;
  out << format_wgraph(b.uniform()) << "sets";
  int at = 0;
  out << ' ' << at;
  for (const auto& s : b.sets) out << ' ' << (at += s.size());
  out << '\n';
  return out.str();
}

// Rebuilds the base from block representatives; an empty block has no base edges.
inline Blowup parse_blowup(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> extra;
  WeightedGraph res = parse_wgraph(in, true, &extra);
  std::vector<int> bounds;
  for (const auto& line : extra) {
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag != "sets") throw InputError("unknown line tag '" + tag + "'");
    int x;
    while (ls >> x) bounds.push_back(x);
  }
  if (bounds.size() < 2 || bounds.front() != 0 || bounds.back() != res.n())
    throw InputError("sets line must run from 0 to n");
  for (std::size_t i = 1; i < bounds.size(); ++i)
    if (bounds[i] < bounds[i - 1]) throw InputError("sets boundaries must be non-decreasing");
  const int n = static_cast<int>(bounds.size()) - 1, N = res.n();
  std::vector<Rational> w;
  Graph base(n);
  for (int i = 0; i < n; ++i) w.push_back(Rational(bounds[i + 1] - bounds[i], N));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (bounds[i] < bounds[i + 1] && bounds[j] < bounds[j + 1] && res.graph.adjacent(bounds[i], bounds[j])) base.add_edge(i, j);
  WeightedGraph bw(base, VertexDistribution(w));
  Blowup b = detail::blowup_skeleton(bw, N);
  b.policy = InternalPolicy::Custom;
  b.result = res.graph;
  return b;
}

}  // namespace vdflab
