#pragma once

#include "iso.hpp"

#include <functional>
#include <numeric>
#include <memory>
#include <optional>
#include <unordered_map>

namespace vdflab {

enum class InternalPolicy { Empty, Clique, Custom };

enum class ClosedForm { None, EdgeFree, Complete, EdgeDensityLe };

// Graph property: a pure, label-blind membership oracle plus cached metadata.
struct Property {
  std::string name;
  std::function<bool(const Graph&)> oracle;
  std::optional<std::vector<Graph>> forbidden;  // induced-forbidden family, when known
  bool hereditary = true;
  ClosedForm closed_form = ClosedForm::None;
  Rational density_bound = 0;                    // for EdgeDensityLe
  std::optional<InternalPolicy> avoiding_policy; // blowup sets that avoid forbidden copies

  bool operator()(const Graph& g) const { return oracle(g); }
};

using HereditaryProperty = Property;

inline bool satisfies(const Property& p, const Graph& g) { return p.oracle(g); }

// ---- named graphs ----

namespace graphs {
inline Graph K(int n) { return Graph::complete(n); }
inline Graph C(int n) { return Graph::cycle(n); }
// path with k edges
inline Graph P(int k) { return Graph::path(k + 1); }
// P2 plus a vertex adjacent to all three
inline Graph A() { return Graph::from_edges(4, {{0, 1}, {1, 2}, {0, 3}, {1, 3}, {2, 3}}); }
// P2 plus an isolated vertex
inline Graph B() { return Graph::from_edges(4, {{0, 1}, {1, 2}}); }
// C_k plus an isolated vertex
inline Graph cycle_star(int k) { return Graph::cycle(k).disjoint_union(Graph(1)); }
}  // namespace graphs

// ---- membership helpers ----

inline bool is_k_colorable(const Graph& g, int k) {
  int n = g.n();
  if (n == 0) return true;
  if (k <= 0) return false;
  std::vector<int> color(n, -1);
  // highest degree first
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return g.neighbors(a).size() > g.neighbors(b).size(); });
  auto rec = [&](auto&& self, int i, int used) -> bool {
    if (i == n) return true;
    int v = order[i];
    for (int c = 0; c < std::min(k, used + 1); ++c) {
      bool ok = true;
      g.neighbors(v).for_each([&](int u) { ok = ok && color[u] != c; });
      if (!ok) continue;
      color[v] = c;
      if (self(self, i + 1, std::max(used, c + 1))) return true;
      color[v] = -1;
    }
    return false;
  };
  return rec(rec, 0, 0);
}

inline bool is_hamiltonian(const Graph& g) {
  int n = g.n();
  if (n <= 1) return true;
  if (n == 2) return false;
  if (n > 20) throw ResourceError("hamiltonicity check capped at 20 vertices");
  std::vector<std::uint32_t> reach(1u << n, 0);  // reach[mask] = endpoints of paths from 0 covering mask
  reach[1] = 1;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    if (!(mask & 1u) || !reach[mask]) continue;
    for (int v = 0; v < n; ++v) {
      if (!((reach[mask] >> v) & 1u)) continue;
      g.neighbors(v).for_each([&](int u) {
        if (!((mask >> u) & 1u)) reach[mask | (1u << u)] |= 1u << u;
      });
    }
  }
  std::uint32_t full = (1u << n) - 1;
  for (int v = 1; v < n; ++v)
    if (((reach[full] >> v) & 1u) && g.adjacent(v, 0)) return true;
  return false;
}

// G contains C_k plus one further vertex as a (not necessarily induced) subgraph
// iff some cycle misses a vertex iff some G - v has a cycle.
inline bool has_cycle_star(const Graph& g) {
  for (int v = 0; v < g.n(); ++v)
    if (!g.without_vertex(v).is_forest()) return true;
  return false;
}

// ---- built-in properties ----

inline Property induced_free(std::vector<Graph> family, std::string name) {
  Property p;
  p.name = std::move(name);
  auto fam = std::make_shared<std::vector<Graph>>(family);
  p.oracle = [fam](const Graph& g) {
    for (const auto& f : *fam)
      if (induced_copy_exists(g, f)) return false;
    return true;
  };
  p.forbidden = std::move(family);
  bool clique_ok = !fam->empty();
  for (const auto& f : *fam)
    clique_ok = clique_ok && (isomorphic(f, graphs::P(2)) || isomorphic(f, graphs::P(3)) || isomorphic(f, graphs::C(4)));
  if (clique_ok) p.avoiding_policy = InternalPolicy::Clique;
  return p;
}

// H-freeness in the subgraph sense (copies need not be induced)
inline Property subgraph_free(Graph h, std::string name) {
  Property p;
  p.name = std::move(name);
  p.oracle = [h](const Graph& g) { return !subgraph_copy_exists(g, h); };
  return p;
}

inline Property triangle_free() {
  Property p = induced_free({graphs::K(3)}, "triangle-free");
  p.avoiding_policy = InternalPolicy::Empty;
  return p;
}

inline Property k_colorable(int k) {
  Property p;
  p.name = "k-colorable:" + std::to_string(k);
  p.oracle = [k](const Graph& g) { return is_k_colorable(g, k); };
  p.avoiding_policy = InternalPolicy::Empty;
  return p;
}

inline Property edge_free() {
  Property p = induced_free({graphs::K(2)}, "edge-free");
  p.closed_form = ClosedForm::EdgeFree;
  p.avoiding_policy = InternalPolicy::Empty;
  return p;
}

inline Property complete() {
  Property p = induced_free({Graph(2)}, "complete");
  p.closed_form = ClosedForm::Complete;
  p.avoiding_policy = InternalPolicy::Clique;
  return p;
}

inline Property cycle_star_free() {
  Property p;
  p.name = "cycle-star-free";
  p.oracle = [](const Graph& g) { return !has_cycle_star(g); };
  return p;
}

inline Property ab_free() {
  Property p = induced_free({graphs::A(), graphs::B()}, "AB-free");
  p.avoiding_policy.reset();
  return p;
}

// 2e(G)/|V(G)|^2 <= bound; not hereditary
inline Property edge_density_le(Rational bound) {
  Property p;
  p.name = "edge-density-le:" + to_string(bound);
  p.oracle = [bound](const Graph& g) {
    if (g.n() == 0) return true;
    return Rational(2 * g.edge_count(), g.n() * g.n()) <= bound;
  };
  p.hereditary = false;
  p.closed_form = ClosedForm::EdgeDensityLe;
  p.density_bound = bound;
  return p;
}

inline Property connected() {
  Property p;
  p.name = "connected";
  p.oracle = [](const Graph& g) { return g.connected(); };
  p.hereditary = false;
  return p;
}

inline Property hamiltonian() {
  Property p;
  p.name = "hamiltonian";
  p.oracle = [](const Graph& g) { return is_hamiltonian(g); };
  p.hereditary = false;
  return p;
}

inline Property at_most_vertices(int k) {
  Property p;
  p.name = "at-most-" + std::to_string(k) + "-vertices";
  p.oracle = [k](const Graph& g) { return g.n() <= k; };
  return p;
}

// ---- extendability and the good/bad machinery ----

inline bool is_extendable_at(const Property& p, const Graph& g) {
  if (!p(g)) throw PreconditionError("is_extendable_at: graph is not in " + p.name);
  if (g.n() > 20) throw ResourceError("is_extendable_at capped at 20 vertices");
  for (std::uint64_t mask = 0; mask < (1ULL << g.n()); ++mask)
    if (p(g.with_vertex(VertexSet(mask, 0)))) return true;
  return false;
}

// Members of P on k vertices containing F induced, for k = |F|..r_max (layer per size,
// canonical representatives). Stops early at the first empty layer.
inline std::vector<std::vector<Graph>> extension_layers(const Property& p, const Graph& f, int r_max) {
  if (!p.hereditary) throw PreconditionError("layered extension search needs a hereditary property");
  if (r_max > kCanonMaxVertices) throw ResourceError("extension search capped at " + std::to_string(kCanonMaxVertices) + " vertices");
  std::vector<std::vector<Graph>> layers;
  if (!p(f)) {
    layers.push_back({});
    return layers;
  }
  layers.push_back({f});
  for (int k = f.n(); k < r_max; ++k) {
    std::set<std::uint64_t> seen;
    std::vector<Graph> next;
    for (const auto& g : layers.back())
      for (std::uint64_t mask = 0; mask < (1ULL << k); ++mask) {
        Graph h = g.with_vertex(VertexSet(mask, 0));
        if (!p(h)) continue;
        if (seen.insert(canonical_code(h)).second) next.push_back(h);
      }
    layers.push_back(std::move(next));
    if (layers.back().empty()) break;
  }
  return layers;
}

// Is there an r-vertex graph in P containing F as an induced subgraph?
inline bool exists_extension(const Property& p, const Graph& f, int r) {
  if (f.n() > r) return false;
  if (f.n() == r) return p(f);
  if (p.hereditary) {
    if (r > kCanonMaxVertices) throw ResourceError("extension search capped at " + std::to_string(kCanonMaxVertices) + " vertices");
    if (!p(f)) return false;
    // depth-first, remembering dead ends by canonical code
    std::set<std::uint64_t> dead;
    auto dfs = [&](auto&& self, const Graph& g) -> bool {
      if (g.n() == r) return true;
      for (std::uint64_t mask = 0; mask < (1ULL << g.n()); ++mask) {
        Graph h = g.with_vertex(VertexSet(mask, 0));
        if (!p(h)) continue;
        if (h.n() < r && dead.count(canonical_code(h))) continue;
        if (self(self, h)) return true;
      }
      dead.insert(canonical_code(g));
      return false;
    };
    return dfs(dfs, f);
  }
  int free_pairs = r * (r - 1) / 2 - f.n() * (f.n() - 1) / 2;
  if (free_pairs > 24) throw ResourceError("non-hereditary extension search capped at 24 free pairs");
  std::vector<std::pair<int, int>> pairs;
  for (int b = f.n(); b < r; ++b)
    for (int a = 0; a < b; ++a) pairs.emplace_back(a, b);
  Graph base(r);
  for (auto [a, b] : f.edges()) base.add_edge(a, b);
  for (std::uint64_t mask = 0; mask < (1ULL << pairs.size()); ++mask) {
    Graph g = base;
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if ((mask >> i) & 1ULL) g.add_edge(pairs[i].first, pairs[i].second);
    if (p(g)) return true;
  }
  return false;
}

struct BadnessRecord {
  Graph F;
  std::optional<int> r;
  int searched_up_to = 0;
};

inline BadnessRecord badness(const Property& p, const Graph& f, int r_max, int cap = kDefaultEnumerationCap) {
  if (!p(f)) throw PreconditionError("badness is defined only for members of " + p.name);
  if (r_max < f.n() + 1) throw InputError("badness needs r_max >= |V(F)| + 1");
  if (r_max > cap) throw ResourceError("badness search capped at " + std::to_string(cap) + " vertices");
  BadnessRecord rec{f, std::nullopt, r_max};
  if (p.hereditary) {
    auto layers = extension_layers(p, f, r_max);
    for (std::size_t i = 1; i < layers.size(); ++i)
      if (layers[i].empty()) {
        rec.r = f.n() + static_cast<int>(i);
        break;
      }
    return rec;
  }
  for (int r = f.n() + 1; r <= r_max; ++r)
    if (!exists_extension(p, f, r)) {
      rec.r = r;
      break;
    }
  return rec;
}

// Largest r_P(F) over bad F with at most s vertices; 0 when none is bad up to r_max.
inline int R_bound(const Property& p, int s, int r_max, int cap = kDefaultEnumerationCap) {
  if (s > cap) throw ResourceError("R_bound capped at " + std::to_string(cap) + " vertices");
  int best = 0;
  for (int k = 0; k <= s; ++k) {
    if (k + 1 > r_max) break;
    for (const auto& g : graphs_on(k, cap)) {
      if (!p(g)) continue;
      auto rec = badness(p, g, r_max, cap);
      if (rec.r) best = std::max(best, *rec.r);
    }
  }
  return best;
}

// Oracle for the hereditary-and-extendable core, certified up to r_max vertices:
// G belongs iff G is in P and G extends inside P to max(|G|, r_max) vertices.
inline Property hereditary_core(const Property& p, int r_max = kDefaultEnumerationCap) {
  if (r_max > kCanonMaxVertices) throw ResourceError("core oracle capped at " + std::to_string(kCanonMaxVertices) + " vertices");
  struct Memo {
    std::mutex mu;
    std::unordered_map<std::uint64_t, bool> table;
  };
  auto memo = std::make_shared<Memo>();
  Property h;
  h.name = "core(" + p.name + ")";
  h.oracle = [p, r_max, memo](const Graph& g) {
    if (!p(g)) return false;
    if (g.n() >= r_max) return true;
    std::uint64_t key = canonical_code(g);
    {
      std::lock_guard<std::mutex> lock(memo->mu);
      auto it = memo->table.find(key);
      if (it != memo->table.end()) return it->second;
    }
    bool ok = exists_extension(p, g, r_max);
    std::lock_guard<std::mutex> lock(memo->mu);
    memo->table[key] = ok;
    return ok;
  };
  h.hereditary = true;
  return h;
}

inline std::vector<Graph> minimal_forbidden_family(const Property& p, int n_max, int cap = kDefaultEnumerationCap) {
  if (n_max > cap) throw ResourceError("minimal_forbidden_family capped at " + std::to_string(cap) + " vertices");
  std::vector<Graph> out;
  if (!p(Graph(0))) return {Graph(0)};
  if (!p.hereditary) {
    for (int k = 1; k <= n_max; ++k)
      for (const auto& g : graphs_on(k, cap)) {
        if (p(g)) continue;
        bool minimal = true;
        for (std::uint64_t mask = 0; mask + 1 < (1ULL << k) && minimal; ++mask)
          minimal = p(g.induced(VertexSet(mask, 0)));
        if (minimal) out.push_back(g);
      }
    return out;
  }
  std::vector<Graph> members = {Graph(0)};
  for (int k = 1; k <= n_max; ++k) {
    std::set<std::uint64_t> seen;
    std::vector<Graph> next;
    for (const auto& g : members)
      for (std::uint64_t mask = 0; mask < (1ULL << (k - 1)); ++mask) {
        Graph h = g.with_vertex(VertexSet(mask, 0));
        std::uint64_t c = canonical_code(h);
        if (!seen.insert(c).second) continue;
        Graph canon = graph_from_code(c);
        if (p(canon)) {
          next.push_back(canon);
          continue;
        }
        bool minimal = true;
        for (int v = 0; v < k && minimal; ++v) minimal = p(canon.without_vertex(v));
        if (minimal) out.push_back(canon);
      }
    members = std::move(next);
  }
  return out;
}

// Blowup of g with independent sets of the given sizes (sizes >= 1).
inline Graph independent_blowup(const Graph& g, const std::vector<int>& sizes) {
  std::vector<int> start(g.n() + 1, 0);
  for (int i = 0; i < g.n(); ++i) start[i + 1] = start[i] + sizes[i];
  Graph b(start.back());
  for (auto [x, y] : g.edges())
    for (int u = start[x]; u < start[x + 1]; ++u)
      for (int v = start[y]; v < start[y + 1]; ++v) b.add_edge(u, v);
  return b;
}

struct BlowupClosureResult {
  bool holds = true;
  std::optional<Graph> base;
  std::vector<int> sizes;
};

inline BlowupClosureResult closed_under_blowups(const Property& p, int n_max, int b_max, int total_cap = 10,
                                                int cap = kDefaultEnumerationCap) {
  if (n_max > cap) throw ResourceError("closed_under_blowups capped at " + std::to_string(cap) + " vertices");
  BlowupClosureResult res;
  for (int k = 1; k <= n_max; ++k)
    for (const auto& g : graphs_on(k, cap)) {
      if (!p(g)) continue;
      std::vector<int> b(k, 1);
      for (;;) {
        int total = std::accumulate(b.begin(), b.end(), 0);
        if (total <= total_cap && !p(independent_blowup(g, b))) {
          res.holds = false;
          res.base = g;
          res.sizes = b;
          return res;
        }
        int i = 0;
        while (i < k && b[i] == b_max) b[i++] = 1;
        if (i == k) break;
        ++b[i];
      }
    }
  return res;
}

}  // namespace vdflab
