#pragma once

#include "distance.hpp"
#include "io.hpp"
#include "random.hpp"

#include <json.hpp>

#include <map>

namespace vdflab {

struct Certificate {
  std::string property;
  Rational distance;   // farness of the negative instance
  std::string method;  // how `distance` was obtained
  bool positive_member = false;
};

// (first, D1) satisfies P; (second, D2) is far from P; samples are (nearly) alike.
struct GalleryPair {
  std::string name;
  WeightedGraph first, second;
  Certificate cert;
  std::optional<VertexSet> first_mark, second_mark;  // distinguished sets (cliques of the density pair)
};

inline Rational edge_density(const Graph& g) {
  if (g.n() == 0) return 0;
  return Rational(2 * static_cast<std::int64_t>(g.edge_count()), std::int64_t(g.n()) * g.n());
}

// Extra vertex of weight 0 attached to `attachment`; G1 must be a non-extendable member.
inline GalleryPair non_extendable_pair(const Property& p, const Graph& g1, const VertexSet& attachment, int cap = kBruteForceCap) {
  if (!p(g1)) throw PreconditionError("G1 is not in " + p.name);
  if (is_extendable_at(p, g1)) throw PreconditionError(p.name + " extends G1; the construction needs a non-extendable member");
  if (!attachment.minus(g1.vertices()).empty()) throw InputError("attachment outside V(G1)");
  const int n = g1.n();
  GalleryPair out;
  out.name = "non-extendable";
  out.first = WeightedGraph::uniform(g1);
  std::vector<Rational> w(n, Rational(1, n));
  w.push_back(0);
  out.second = WeightedGraph(g1.with_vertex(attachment), VertexDistribution(w));
  auto d = distance_to_property(out.second, p, cap);
  Rational floor_d(1, std::int64_t(n) * n);
  if (d.value < floor_d) throw ContractError("negative instance closer than 1/|V(G1)|^2");
  out.cert = {p.name, d.value, "branch-and-bound", true};
  return out;
}

// G2 = G1[sub]; D1 is uniform on sub and zero elsewhere.
inline GalleryPair non_hereditary_pair(const Property& p, const Graph& g1, const VertexSet& sub, int cap = kBruteForceCap) {
  if (p.hereditary) throw PreconditionError(p.name + " is hereditary");
  if (sub.empty() || !sub.minus(g1.vertices()).empty()) throw InputError("sub must be a nonempty subset of V(G1)");
  Graph g2 = g1.induced(sub);
  if (!p(g1)) throw PreconditionError("G1 is not in " + p.name);
  if (p(g2)) throw PreconditionError("G2 satisfies " + p.name);
  GalleryPair out;
  out.name = "non-hereditary";
  std::vector<Rational> w(g1.n(), 0);
  sub.for_each([&](int v) { w[v] = Rational(1, sub.size()); });
  out.first = WeightedGraph(g1, VertexDistribution(w));
  out.second = WeightedGraph::uniform(g2);
  auto d = distance_to_property(out.second, p, cap);
  Rational floor_d(1, std::int64_t(g2.n()) * g2.n());
  if (d.value < floor_d) throw ContractError("negative instance closer than 1/|V(G2)|^2");
  out.cert = {p.name, d.value, "branch-and-bound", true};
  return out;
}

inline GalleryPair non_hereditary_pair(const Property& p, const Graph& g1, const Graph& g2, int cap = kBruteForceCap) {
  auto copies = induced_copies(g1, g2);
  if (copies.empty()) throw PreconditionError("G2 is not an induced subgraph of G1");
  VertexSet sub;
  for (int v : copies.front()) sub.insert(v);
  return non_hereditary_pair(p, g1, sub, cap);
}

// (C_M, uniform) vs (C_M plus a weight-0 isolated vertex).
inline GalleryPair cycle_star_pair(int M, bool certify = true, int cap = kBruteForceCap) {
  if (M < 3) throw InputError("cycle_star_pair needs M >= 3");
  if (M + 1 > kMaxVertices) throw ResourceError("M above vertex cap");
  GalleryPair out;
  out.name = "cycle-star";
  Property p = cycle_star_free();
  out.first = WeightedGraph::uniform(Graph::cycle(M));
  std::vector<Rational> w(M, Rational(1, M));
  w.push_back(0);
  out.second = WeightedGraph(graphs::cycle_star(M), VertexDistribution(w));
  out.cert.property = p.name;
  out.cert.positive_member = p(out.first.graph);
  if (certify) {
    out.cert.distance = distance_to_property(out.second, p, cap).value;
    out.cert.method = "branch-and-bound";
  } else {
    out.cert.distance = Rational(1, std::int64_t(M) * M);
    out.cert.method = "lower bound (uncertified)";
  }
  return out;
}

// Clique n/2 + n/2 isolated (uniform) vs clique 3n/4 (weight 2/(3n)) + n/4 isolated (weight 2/n).
inline GalleryPair density_pair(int n) {
  if (n <= 0 || n % 4 != 0) throw InputError("density_pair needs n divisible by 4");
  if (n > kMaxVertices) throw ResourceError("n above vertex cap");
  GalleryPair out;
  out.name = "density";
  Property p = edge_density_le(Rational(1, 4));
  Graph g1(n), g2(n);
  VertexSet x1, x2;
  for (int v = 0; v < n / 2; ++v) x1.insert(v);
  for (int v = 0; v < 3 * n / 4; ++v) x2.insert(v);
  auto fill = [](Graph& g, const VertexSet& x) {
    auto ms = x.members();
    for (std::size_t i = 0; i < ms.size(); ++i)
      for (std::size_t j = i + 1; j < ms.size(); ++j) g.add_edge(ms[i], ms[j]);
  };
  fill(g1, x1);
  fill(g2, x2);
  std::vector<Rational> w(n);
  for (int v = 0; v < n; ++v) w[v] = x2.contains(v) ? Rational(2, 3 * n) : Rational(2, n);
  out.first = WeightedGraph::uniform(g1);
  out.second = WeightedGraph(g2, VertexDistribution(w));
  out.first_mark = x1;
  out.second_mark = x2;
  out.cert = {p.name, distance_to_property_closed_form(out.second, p), "closed form", p(g1)};
  return out;
}

// ---- sample laws ----

// Identical sample laws: the positive-weight parts are isomorphic by a weight-preserving map.
inline bool sample_laws_identical(const WeightedGraph& a, const WeightedGraph& b) {
  VertexSet sa, sb;
  for (int v = 0; v < a.n(); ++v)
    if (a.dist[v] != 0) sa.insert(v);
  for (int v = 0; v < b.n(); ++v)
    if (b.dist[v] != 0) sb.insert(v);
  if (sa.size() != sb.size()) return false;
  auto ma = sa.members(), mb = sb.members();
  Graph ga = a.graph.induced(sa), gb = b.graph.induced(sb);
  bool found = false;
  detail::copy_search(gb, ga, true, [&](const std::vector<int>& phi) {
    for (std::size_t i = 0; i < ma.size(); ++i)
      if (a.dist[ma[i]] != b.dist[mb[phi[i]]]) return false;
    found = true;
    return true;
  });
  return found;
}

struct TvEstimate {
  double estimate = 0;
  double lo = 0, hi = 0;  // bootstrap percentile interval (95%)
  std::int64_t trials = 0;
  std::map<std::uint64_t, std::int64_t> first_counts, second_counts;  // by canonical class
};

// Plug-in TV between the laws of G1[U1] and G2[U2] over isomorphism classes, q draws each.
// Trial k draws both samples from stream derive_seed(seed, k) (common random numbers).
inline TvEstimate tv_distance_estimate(const WeightedGraph& a, const WeightedGraph& b, int q, std::int64_t trials,
                                       std::uint64_t seed, int bootstrap = 200) {
  if (q < 0) throw InputError("q must be >= 0");
  if (q > kCanonMaxVertices) throw ResourceError("sample classes are canonical only up to 11 vertices");
  if (trials < 1) throw InputError("trials must be >= 1");
  TvEstimate out;
  out.trials = trials;
  std::vector<std::uint64_t> ca(trials), cb(trials);
  Sampler sa(a.dist), sb(b.dist);
  for (std::int64_t t = 0; t < trials; ++t) {
    std::uint64_t s = derive_seed(seed, static_cast<std::uint64_t>(t));
    Stream st_a(s), st_b(s);
    VertexSet ua, ub;
    for (int k = 0; k < q; ++k) {
      ua.insert(sa.draw(st_a));
      ub.insert(sb.draw(st_b));
    }
    ca[t] = canonical_code(a.graph.induced(ua));
    cb[t] = canonical_code(b.graph.induced(ub));
    ++out.first_counts[ca[t]];
    ++out.second_counts[cb[t]];
  }
  auto tv_of = [&](const std::map<std::uint64_t, std::int64_t>& x, const std::map<std::uint64_t, std::int64_t>& y, double n) {
    std::map<std::uint64_t, std::int64_t> diff = x;
    for (auto [k, c] : y) diff[k] -= c;
    double s = 0;
    for (auto [k, c] : diff) s += std::abs(static_cast<double>(c));
    return s / (2 * n);
  };
  out.estimate = tv_of(out.first_counts, out.second_counts, static_cast<double>(trials));
  if (bootstrap > 0) {
    Stream rs(derive_seed(seed, 0xB007));
    std::vector<double> reps;
    for (int r = 0; r < bootstrap; ++r) {
      std::map<std::uint64_t, std::int64_t> x, y;
      for (std::int64_t t = 0; t < trials; ++t) {
        auto k = rs.below(static_cast<std::uint64_t>(trials));
        ++x[ca[k]];
        ++y[cb[k]];
      }
      reps.push_back(tv_of(x, y, static_cast<double>(trials)));
    }
    std::sort(reps.begin(), reps.end());
    out.lo = reps[static_cast<std::size_t>(0.025 * (bootstrap - 1))];
    out.hi = reps[static_cast<std::size_t>(0.975 * (bootstrap - 1))];
  } else {
    out.lo = out.hi = out.estimate;
  }
  return out;
}

inline TvEstimate tv_distance_estimate(const GalleryPair& pair, int q, std::int64_t trials, std::uint64_t seed, int bootstrap = 200) {
  return tv_distance_estimate(pair.first, pair.second, q, trials, seed, bootstrap);
}

// Histogram of |U ∩ mark| over trials (U the distinct sample of q draws).
inline std::vector<std::int64_t> mark_histogram(const WeightedGraph& wg, const VertexSet& mark, int q, std::int64_t trials,
                                                std::uint64_t seed) {
  std::vector<std::int64_t> h(q + 1, 0);
  Sampler s(wg.dist);
  for (std::int64_t t = 0; t < trials; ++t) {
    Stream st(derive_seed(seed, static_cast<std::uint64_t>(t)));
    VertexSet u;
    for (int k = 0; k < q; ++k) u.insert(s.draw(st));
    ++h[(u & mark).size()];
  }
  return h;
}

// ---- persistence: two wgraph files plus a JSON certificate sidecar ----

inline nlohmann::json certificate_json(const Certificate& c) {
  return {{"property", c.property}, {"distance", to_string(c.distance)}, {"method", c.method}};
}

inline Certificate certificate_from_json(const nlohmann::json& j) {
  Certificate c;
  c.property = j.at("property").get<std::string>();
  c.distance = parse_rational(j.at("distance").get<std::string>());
  c.method = j.at("method").get<std::string>();
  return c;
}

inline void write_pair(const GalleryPair& pair, const std::string& stem) {
  write_file(stem + "_1.wg", format_wgraph(pair.first));
  write_file(stem + "_2.wg", format_wgraph(pair.second));
  write_file(stem + ".json", certificate_json(pair.cert).dump(2) + "\n");
}

}  // namespace vdflab
