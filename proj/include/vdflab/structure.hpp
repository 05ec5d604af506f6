#pragma once

#include "distance.hpp"
#include "regularity.hpp"

#include <array>

namespace vdflab {

// ---- embedding schemes ----

enum class Color { White, Black, Grey };

inline char color_char(Color c) { return c == Color::Black ? 'b' : c == Color::White ? 'w' : 'g'; }
inline Color color_from_char(char c) {
  if (c == 'b') return Color::Black;
  if (c == 'w') return Color::White;
  if (c == 'g') return Color::Grey;
  throw InputError(std::string("bad color '") + c + "'");
}

// Vertices 0..a-1 form A_K (uncolored); a..a+|B|-1 form B_K.
struct EmbeddingScheme {
  int a = 0;
  std::vector<Color> b;                  // Black or White per B-vertex
  std::vector<std::vector<Color>> edge;  // symmetric, diagonal unused

  EmbeddingScheme() = default;
  EmbeddingScheme(int a_count, std::vector<Color> b_colors) : a(a_count), b(std::move(b_colors)) {
    int k = size();
    edge.assign(k, std::vector<Color>(k, Color::White));
  }
  int size() const { return a + static_cast<int>(b.size()); }
  bool in_a(int v) const { return v < a; }
  Color vertex_color(int v) const { return b[v - a]; }
  Color color(int i, int j) const { return edge[i][j]; }
  void set(int i, int j, Color c) {
    if (i == j) throw InputError("scheme edges join distinct vertices");
    if (c == Color::Grey && (in_a(i) || in_a(j))) throw InputError("grey edges cannot meet A");
    edge[i][j] = edge[j][i] = c;
  }
  bool valid() const {
    for (Color c : b)
      if (c == Color::Grey) return false;
    for (int i = 0; i < size(); ++i)
      for (int j = 0; j < size(); ++j) {
        if (i == j) continue;
        if (edge[i][j] != edge[j][i]) return false;
        if (edge[i][j] == Color::Grey && (in_a(i) || in_a(j))) return false;
      }
    return true;
  }
  bool operator==(const EmbeddingScheme& o) const { return a == o.a && b == o.b && edge == o.edge; }
};

inline std::string format_scheme(const EmbeddingScheme& k) {
  std::ostringstream out;
  out << "A " << k.a << "\nB";
  for (Color c : k.b) out << ' ' << color_char(c);
  out << '\n';
  for (int i = 0; i < k.size(); ++i)
    for (int j = i + 1; j < k.size(); ++j) out << "edge " << i << ' ' << j << ' ' << color_char(k.color(i, j)) << '\n';
  return out.str();
}

// Unlisted edges are white.
inline EmbeddingScheme parse_scheme(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::optional<int> a;
  std::optional<std::vector<Color>> b;
  std::vector<std::tuple<int, int, Color>> edges;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag[0] == '#') continue;
    if (tag == "A") {
      int x;
      if (!(ls >> x) || x < 0) throw InputError("bad A line");
      a = x;
    } else if (tag == "B") {
      std::vector<Color> cs;
      std::string tok;
      while (ls >> tok) {
        if (tok.size() != 1 || tok[0] == 'g') throw InputError("B vertices are b or w");
        cs.push_back(color_from_char(tok[0]));
      }
      b = cs;
    } else if (tag == "edge") {
      int i, j;
      std::string c;
      if (!(ls >> i >> j >> c) || c.size() != 1) throw InputError("bad edge line");
      edges.emplace_back(i, j, color_from_char(c[0]));
    } else {
      throw InputError("unknown scheme line tag '" + tag + "'");
    }
  }
  if (!a) throw InputError("missing A line");
  EmbeddingScheme k(*a, b.value_or(std::vector<Color>{}));
  for (auto [i, j, c] : edges) {
    if (i < 0 || j < 0 || i >= k.size() || j >= k.size()) throw InputError("scheme edge out of range");
    k.set(i, j, c);
  }
  return k;
}

// Lexicographically first embedding phi: V(F) -> V(K), if any.
inline std::optional<std::vector<int>> embeds(const Graph& f, const EmbeddingScheme& k) {
  const int n = f.n(), m = k.size();
  std::vector<int> phi(n, -1);
  std::vector<char> a_used(k.a, 0);
  auto fits = [&](int v, int target) {
    if (k.in_a(target) && a_used[target]) return false;
    for (int u = 0; u < v; ++u) {
      int s = phi[u];
      bool adj = f.adjacent(u, v);
      Color c = s == target ? k.vertex_color(target) : k.color(s, target);
      if (c == Color::Black && !adj) return false;
      if (c == Color::White && adj) return false;
    }
    return true;
  };
  auto rec = [&](auto&& self, int v) -> bool {
    if (v == n) return true;
    for (int t = 0; t < m; ++t) {
      if (!fits(v, t)) continue;
      phi[v] = t;
      if (k.in_a(t)) a_used[t] = 1;
      if (self(self, v + 1)) return true;
      if (k.in_a(t)) a_used[t] = 0;
    }
    phi[v] = -1;
    return false;
  };
  if (!rec(rec, 0)) return std::nullopt;
  return phi;
}

constexpr int kSchemeCap = 3;

namespace detail {

inline std::string scheme_key(const EmbeddingScheme& k, const std::vector<int>& perm) {
  // perm maps new position -> old vertex; must keep A before B
  std::string s = std::to_string(k.a) + ":";
  for (int i = k.a; i < k.size(); ++i) s += color_char(k.vertex_color(perm[i]));
  s += ":";
  for (int i = 0; i < k.size(); ++i)
    for (int j = i + 1; j < k.size(); ++j) s += color_char(k.color(perm[i], perm[j]));
  return s;
}

inline std::string canonical_scheme_key(const EmbeddingScheme& k) {
  std::vector<int> pa(k.a), pb(k.b.size());
  std::iota(pa.begin(), pa.end(), 0);
  std::iota(pb.begin(), pb.end(), k.a);
  std::string best;
  do {
    std::sort(pb.begin(), pb.end());
    do {
      std::vector<int> perm = pa;
      perm.insert(perm.end(), pb.begin(), pb.end());
      std::string key = scheme_key(k, perm);
      if (best.empty() || key < best) best = key;
    } while (std::next_permutation(pb.begin(), pb.end()));
  } while (std::next_permutation(pa.begin(), pa.end()));
  return best;
}

}  // namespace detail

// Every scheme on exactly k vertices, one per isomorphism class (A and B permuted separately).
inline std::vector<EmbeddingScheme> schemes_on(int k, int cap = kSchemeCap) {
  if (k > cap) throw ResourceError("scheme enumeration capped at " + std::to_string(cap) + " vertices");
  std::vector<EmbeddingScheme> out;
  std::set<std::string> seen;
  for (int a = 0; a <= k; ++a) {
    int nb = k - a;
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j) pairs.emplace_back(i, j);
    for (int bmask = 0; bmask < (1 << nb); ++bmask) {
      std::vector<Color> bc(nb);
      for (int i = 0; i < nb; ++i) bc[i] = (bmask >> i) & 1 ? Color::Black : Color::White;
      // mixed radix over the edges: 2 colors if the edge meets A, else 3
      std::vector<int> radix, digit(pairs.size(), 0);
      for (auto [i, j] : pairs) radix.push_back(i < a || j < a ? 2 : 3);
      for (;;) {
        EmbeddingScheme s(a, bc);
        for (std::size_t e = 0; e < pairs.size(); ++e)
          s.set(pairs[e].first, pairs[e].second, digit[e] == 0 ? Color::White : digit[e] == 1 ? Color::Black : Color::Grey);
        if (seen.insert(detail::canonical_scheme_key(s)).second) out.push_back(s);
        std::size_t e = 0;
        while (e < digit.size() && ++digit[e] == radix[e]) digit[e++] = 0;
        if (e == digit.size()) break;
      }
    }
  }
  return out;
}

// max over schemes K on <= m vertices admitting a member, of the least order of an embeddable member
inline int psi_F(const std::vector<Graph>& family, int m, int cap = kSchemeCap) {
  if (m < 0) throw InputError("psi_F needs m >= 0");
  if (m > cap) throw ResourceError("psi_F capped at m = " + std::to_string(cap));
  int best = 0;
  bool any = false;
  for (int k = 0; k <= m; ++k)
    for (const auto& s : schemes_on(k, cap)) {
      std::optional<int> least;
      for (const auto& f : family)
        if ((!least || f.n() < *least) && embeds(f, s)) least = f.n();
      if (least) {
        any = true;
        best = std::max(best, *least);
      }
    }
  return any ? best : 0;
}

// ---- heavy/light split ----

struct HeavyLightSplit {
  VertexSet X, Y, Z;  // X heavy layers, Y the light rest (Y'), Z the light layer (Z')
  int layer = 0;      // 1-based index i of the chosen layer
  std::int64_t s = 1; // s_{i-1} (1 when i = 1); every X-vertex weighs >= 1/s
  std::int64_t next = 0;  // s_i; every Y-vertex weighs < 1/s_i
};

inline HeavyLightSplit heavy_light_split(const WeightedGraph& wg, const Rational& eps,
                                         const std::vector<std::int64_t>& thresholds) {
  if (eps <= 0) throw InputError("heavy_light_split needs eps > 0");
  BigInt need = ceil_r(2 / eps);
  if (BigInt(thresholds.size()) < need)
    throw InputError("threshold schedule has " + std::to_string(thresholds.size()) + " entries; needs " + need.str());
  for (std::size_t i = 0; i < thresholds.size(); ++i)
    if (thresholds[i] < 1 || (i > 0 && thresholds[i] <= thresholds[i - 1]))
      throw InputError("thresholds must be positive and strictly increasing");
  VertexSet taken;
  HeavyLightSplit out;
  int limit = need.convert_to<int>();
  for (int i = 1; i <= limit; ++i) {
    Rational floor_w(1, thresholds[i - 1]);
    VertexSet layer;
    for (int v = 0; v < wg.n(); ++v)
      if (!taken.contains(v) && wg.dist[v] >= floor_w) layer.insert(v);
    if (wg.mass(layer) * 2 <= eps) {
      out.X = taken;
      out.Z = layer;
      out.Y = wg.graph.vertices().minus(taken | layer);
      out.layer = i;
      out.s = i > 1 ? thresholds[i - 2] : 1;
      out.next = thresholds[i - 1];
      out.X.for_each([&](int v) {
        if (wg.dist[v] * out.s < 1) throw ContractError("heavy vertex below 1/s");
      });
      out.Y.for_each([&](int v) {
        if (wg.dist[v] * out.next >= 1) throw ContractError("light vertex above 1/s_i");
      });
      return out;
    }
    taken |= layer;
  }
  throw ContractError("no light layer among the first ceil(2/eps) layers");
}

// ---- structured decomposition ----

struct StructureParams {
  Rational eps;
  std::function<int(int)> psi;           // Ψ, made monotone internally
  std::vector<std::int64_t> thresholds;  // s_1 < s_2 < ... (at least ceil(2/eps))
  Rational zeta = Rational(1, 4);        // Turán–Ramsey mass floor inside each Q_i
  std::optional<std::int64_t> S;         // Items 2 and 8; default: last threshold
  std::uint64_t seed = 0;
  int cap = kCertifyCap;
};

struct ItemResult {
  bool pass = false;
  std::optional<Rational> slack;  // exact margin when the item is a numeric inequality
  std::string note;
};

struct StructuredDecomposition {
  VertexSet X, Y, Z;
  Partition P;
  std::vector<VertexSet> Q;
  std::vector<std::vector<VertexSet>> Qk;  // Q_{i,1..t}
  std::vector<char> dense;                 // per i: Turán–Ramsey orientation
  int t = 0;
  HeavyLightSplit split;
  std::array<ItemResult, 8> items;  // Items 1..8
  bool all_pass() const {
    for (const auto& it : items)
      if (!it.pass) return false;
    return true;
  }
};

namespace detail {

inline std::vector<int> relabel_members(const VertexSet& s) { return s.members(); }

inline VertexSet lift(const VertexSet& local, const std::vector<int>& members) {
  VertexSet out;
  local.for_each([&](int v) { out.insert(members[v]); });
  return out;
}

inline VertexSet lower(const VertexSet& global, const std::vector<int>& members) {
  VertexSet out;
  for (std::size_t i = 0; i < members.size(); ++i)
    if (global.contains(members[i])) out.insert(static_cast<int>(i));
  return out;
}

template <class F>
auto staged(const char* stage, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const PartialResourceError& e) {
    throw PartialResourceError(std::string(stage) + ": " + e.what(), e.partial);
  } catch (const ResourceError& e) {
    throw ResourceError(std::string(stage) + ": " + e.what());
  } catch (const RetryError& e) {
    throw RetryError(std::string(stage) + ": " + e.what());
  }
}

}  // namespace detail

inline StructuredDecomposition structured_partition(const WeightedGraph& wg, const StructureParams& prm) {
  if (!prm.psi) throw InputError("structured_partition needs a Ψ schedule");
  const Rational& eps = prm.eps;
  if (eps <= 0 || eps > 1) throw InputError("structured_partition needs eps in (0,1]");
  if (prm.zeta <= 0 || prm.zeta > 1) throw InputError("structured_partition needs zeta in (0,1]");
  auto psi = [f = prm.psi](int m) {
    int best = 1;
    for (int s = 0; s <= m; ++s) best = std::max(best, f(s));
    return best;
  };
  // Ψ' = 2Ψ/ζ for the representatives
  auto psi_prime = [&](int m) { return ceil_r(2 * Rational(psi(m)) / prm.zeta); };

  StructuredDecomposition dec;
  dec.split = detail::staged("heavy_light_split", [&] { return heavy_light_split(wg, eps, prm.thresholds); });
  dec.X = dec.split.X;
  const VertexSet yp = dec.split.Y;
  VertexSet z = dec.split.Z;

  if (wg.mass(yp) * 2 >= eps) {
    Partition p0prime = low_internal_partition(yp, wg.dist, eps);
    std::vector<VertexSet> cuts;
    dec.X.for_each([&](int x) { cuts.push_back(wg.graph.neighbors(x) & yp); });
    Partition p0 = common_refinement(p0prime, cuts);
    auto members = yp.members();
    WeightedGraph sub = induced(wg, yp);
    Partition p0_local;
    for (const auto& part : p0) p0_local.push_back(detail::lower(part, members));
    const std::int64_t s = dec.split.s;
    ScheduleFn es = [&, s](int r) {
      Rational a = eps / 2;
      Rational b = Rational(BigInt(1), psi_prime(static_cast<int>(s) + r));
      return std::min(a, b);
    };
    auto rep = detail::staged("representatives", [&] {
      return representatives(sub, es, static_cast<int>(p0_local.size()), p0_local, derive_seed(prm.seed, 1), prm.cap);
    });
    z |= detail::lift(rep.exceptional, members);
    for (const auto& part : rep.parts) dec.P.push_back(detail::lift(part, members));
    for (const auto& q : rep.reps) dec.Q.push_back(detail::lift(q, members));
  } else {
    z |= yp;
  }
  dec.Z = z;
  dec.Y = wg.graph.vertices().minus(dec.X | dec.Z);
  const int r = static_cast<int>(dec.P.size());
  const int m = dec.X.size() + r;
  dec.t = psi(m);
  const Rational delta(1, dec.t);

  std::vector<std::string> tr_notes;
  dec.Qk.assign(r, {});
  dec.dense.assign(r, 0);
  for (int i = 0; i < r; ++i) {
    if (wg.mass(dec.Q[i]) == 0) {
      tr_notes.push_back("Q_" + std::to_string(i + 1) + " has mass 0");
      continue;
    }
    if (dec.t == 1) {
      dec.Qk[i] = {dec.Q[i]};
      continue;
    }
    auto members = dec.Q[i].members();
    WeightedGraph sub = induced(wg, dec.Q[i]);
    try {
      auto tr = detail::staged("turan_ramsey_sets", [&] {
        return turan_ramsey_sets(sub, dec.t, delta, prm.zeta, derive_seed(prm.seed, 100 + i), prm.cap);
      });
      for (const auto& s : tr.sets) dec.Qk[i].push_back(detail::lift(s, members));
      dec.dense[i] = tr.dense;
    } catch (const PreconditionError&) {
      // heavy vertices inside Q_i: fall back to a monochromatic t-set of singletons
      Graph local = sub.graph;
      auto pick = dec.t == 1 ? std::optional<std::vector<int>>(std::vector<int>{0}) : detail::ramsey_subset(local, dec.t);
      if (!pick || static_cast<int>(local.n()) < dec.t) {
        tr_notes.push_back("Q_" + std::to_string(i + 1) + ": no monochromatic " + std::to_string(dec.t) + "-set");
        continue;
      }
      for (int v : *pick) dec.Qk[i].push_back(VertexSet::single(members[v]));
      dec.dense[i] = dec.t > 1 && local.adjacent((*pick)[0], (*pick)[1]);
    } catch (const RetryError& e) {
      tr_notes.push_back("Q_" + std::to_string(i + 1) + ": " + e.what());
    }
  }

  // ---- item report ----
  const Rational inv_s(1, prm.S.value_or(prm.thresholds.back()));
  auto& it = dec.items;
  {
    Rational dz = wg.mass(dec.Z);
    it[0] = {dz < eps, eps - dz, ""};
  }
  {
    std::optional<Rational> mn;
    dec.X.for_each([&](int v) { mn = mn ? std::min(*mn, wg.dist[v]) : wg.dist[v]; });
    if (mn)
      it[1] = {*mn >= inv_s, *mn - inv_s, ""};
    else
      it[1] = {true, std::nullopt, "X empty"};
  }
  {
    int bad = 0;
    dec.X.for_each([&](int x) {
      for (const auto& part : dec.P) {
        VertexSet nb = wg.graph.neighbors(x) & part;
        if (!nb.empty() && nb != part) ++bad;
      }
    });
    it[2] = {bad == 0, std::nullopt, std::to_string(bad) + " mixed (x, P_i) pairs"};
  }
  {
    Rational in = internal_pair_weight(dec.P, wg.dist);
    it[3] = {in <= eps, eps - in, ""};
  }
  {
    Rational dev = 0;
    for (int i = 0; i < r; ++i)
      for (int j = i + 1; j < r; ++j)
        dev += wg.mass(dec.P[i]) * wg.mass(dec.P[j]) *
               rabs(pair_density(wg, dec.Q[i], dec.Q[j]) - pair_density(wg, dec.P[i], dec.P[j]));
    it[4] = {dev <= eps, eps - dev, ""};
  }
  auto certified = [&](const VertexSet& a, const VertexSet& b, std::string& note) {
    try {
      return certify_pair(wg, a, b, delta, prm.cap).regular();
    } catch (const ResourceError& e) {
      note = e.what();
      return false;
    }
  };
  {
    bool ok = tr_notes.empty();
    std::string note;
    for (const auto& s : tr_notes) note += s + "; ";
    for (int i = 0; i < r && ok; ++i) {
      const auto& qs = dec.Qk[i];
      ok = static_cast<int>(qs.size()) == dec.t;
      int hi = 0, lo = 0;
      for (std::size_t k = 0; k < qs.size() && ok; ++k)
        for (std::size_t l = k + 1; l < qs.size() && ok; ++l) {
          ok = certified(qs[k], qs[l], note);
          (pair_density(wg, qs[k], qs[l]) * 2 >= 1 ? hi : lo)++;
        }
      ok = ok && (hi == 0 || lo == 0);
    }
    it[5] = {ok, std::nullopt, note};
  }
  {
    bool ok = tr_notes.empty();
    std::string note;
    std::optional<Rational> worst;
    for (int i = 0; i < r && ok; ++i)
      for (int j = i + 1; j < r && ok; ++j)
        for (const auto& a : dec.Qk[i])
          for (const auto& b : dec.Qk[j]) {
            if (!ok) break;
            Rational dev = rabs(pair_density(wg, a, b) - pair_density(wg, dec.Q[i], dec.Q[j]));
            worst = worst ? std::max(*worst, dev) : dev;
            ok = dev <= delta && certified(a, b, note);
          }
    std::optional<Rational> slack;
    if (worst) slack = delta - *worst;
    it[6] = {ok, slack, note};
  }
  {
    bool ok = tr_notes.empty();
    std::optional<Rational> mn;
    for (const auto& qs : dec.Qk)
      for (const auto& q : qs) mn = mn ? std::min(*mn, wg.mass(q)) : wg.mass(q);
    std::optional<Rational> slack;
    if (mn) {
      slack = *mn - inv_s;
      ok = ok && *mn >= inv_s;
    }
    it[7] = {ok, slack, ""};
  }
  return dec;
}

// ---- cleanup ----

struct CleanupResult {
  Graph graph;
  Rational change;
  bool x_untouched = true;
  bool below_bound = false;  // change < 3 eps / 4
  std::vector<char> clique;  // per P_i
};

inline CleanupResult regularity_cleanup(const WeightedGraph& wg, const StructuredDecomposition& dec, const Rational& eps) {
  CleanupResult res;
  Graph g = wg.graph;
  const int r = static_cast<int>(dec.P.size());
  res.clique.assign(r, 0);
  for (int i = 0; i < r; ++i) {
    const auto& qs = i < static_cast<int>(dec.Qk.size()) ? dec.Qk[i] : std::vector<VertexSet>{};
    int hi = 0, lo = 0;
    for (std::size_t k = 0; k < qs.size(); ++k)
      for (std::size_t l = k + 1; l < qs.size(); ++l) (pair_density(wg, qs[k], qs[l]) * 2 >= 1 ? hi : lo)++;
    bool clique;
    if (hi > 0 && lo == 0)
      clique = true;
    else if (lo > 0 && hi == 0)
      clique = false;
    else {
      // no unanimous verdict: take the cheaper of the two edits
      Rational to_clique = 0, to_empty = 0;
      auto ms = dec.P[i].members();
      for (std::size_t a = 0; a < ms.size(); ++a)
        for (std::size_t b = a + 1; b < ms.size(); ++b)
          (wg.graph.adjacent(ms[a], ms[b]) ? to_empty : to_clique) += wg.dist[ms[a]] * wg.dist[ms[b]];
      clique = to_clique <= to_empty;
    }
    res.clique[i] = clique;
    auto ms = dec.P[i].members();
    for (std::size_t a = 0; a < ms.size(); ++a)
      for (std::size_t b = a + 1; b < ms.size(); ++b) g.set_edge(ms[a], ms[b], clique);
  }
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) {
      Rational d = pair_density(wg, dec.Q[i], dec.Q[j]);
      std::optional<bool> fill;
      if (d > 1 - eps / 4) fill = true;
      if (d < eps / 4) fill = false;
      if (!fill) continue;
      dec.P[i].for_each([&](int a) { dec.P[j].for_each([&](int b) { g.set_edge(a, b, *fill); }); });
    }
  dec.X.for_each([&](int x) { res.x_untouched = res.x_untouched && g.neighbors(x) == wg.graph.neighbors(x); });
  if (!res.x_untouched) throw ContractError("cleanup edited a pair meeting X");
  res.change = edit_distance(wg.graph, g, wg.dist);
  res.below_bound = res.change * 4 < 3 * eps;
  res.graph = std::move(g);
  return res;
}

}  // namespace vdflab
