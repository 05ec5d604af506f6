#pragma once

#include "graph.hpp"

#include <numeric>

namespace vdflab {

// Rational probability distribution on {0..n-1}.
class VertexDistribution {
 public:
  VertexDistribution() = default;
  explicit VertexDistribution(std::vector<Rational> w) : w_(std::move(w)) {
    Rational sum = 0;
    for (auto& x : w_) {
      if (x < 0) throw InputError("negative vertex weight " + to_string(x));
      sum += x;
    }
    if (sum != 1) throw InputError("vertex weights sum to " + to_string(sum) + ", not 1");
    compute_units();
  }

  static VertexDistribution uniform(int n) {
    require(n > 0, "uniform distribution needs n > 0");
    return VertexDistribution(std::vector<Rational>(n, Rational(1, n)));
  }
  // uniform on `support`, zero elsewhere
  static VertexDistribution uniform_on(int n, const VertexSet& support) {
    require(!support.empty(), "empty support");
    std::vector<Rational> w(n, 0);
    int k = support.size();
    support.for_each([&](int v) { w[v] = Rational(1, k); });
    return VertexDistribution(std::move(w));
  }

  int size() const { return static_cast<int>(w_.size()); }
  const Rational& operator[](int v) const { return w_[v]; }
  const std::vector<Rational>& weights() const { return w_; }

  Rational mass(const VertexSet& s) const {
    Rational m = 0;
    s.for_each([&](int v) { m += w_[v]; });
    return m;
  }

  // Integer view: D(v) = unit(v)/scale(), scale = lcm of denominators.
  bool has_units() const { return has_units_; }
  std::int64_t scale() const { return scale_; }
  std::int64_t unit(int v) const { return units_[v]; }
  const std::vector<std::int64_t>& units() const { return units_; }
  std::int64_t unit_mass(const VertexSet& s) const {
    std::int64_t m = 0;
    s.for_each([&](int v) { m += units_[v]; });
    return m;
  }
  void require_units(std::int64_t bound, const char* who) const {
    if (!has_units_ || scale_ > bound)
      throw ResourceError(std::string(who) + ": common denominator of the weights exceeds " + std::to_string(bound));
  }

  bool operator==(const VertexDistribution& o) const { return w_ == o.w_; }

 private:
  void compute_units() {
    BigInt l = 1;
    for (auto& x : w_) {
      BigInt d = boost::multiprecision::denominator(x);
      l = l / boost::multiprecision::gcd(l, d) * d;
      if (l > (BigInt(1) << 62)) {
        has_units_ = false;
        return;
      }
    }
    scale_ = l.convert_to<std::int64_t>();
    units_.resize(w_.size());
    for (std::size_t i = 0; i < w_.size(); ++i)
      units_[i] = (boost::multiprecision::numerator(w_[i]) * (l / boost::multiprecision::denominator(w_[i])))
                      .convert_to<std::int64_t>();
    has_units_ = true;
  }

  std::vector<Rational> w_;
  bool has_units_ = false;
  std::int64_t scale_ = 1;
  std::vector<std::int64_t> units_;
};

struct WeightedGraph {
  Graph graph;
  VertexDistribution dist;

  WeightedGraph() = default;
  WeightedGraph(Graph g, VertexDistribution d) : graph(std::move(g)), dist(std::move(d)) {
    if (graph.n() != dist.size()) throw InputError("distribution length does not match vertex count");
  }
  static WeightedGraph uniform(Graph g) {
    int n = g.n();
    return WeightedGraph(std::move(g), VertexDistribution::uniform(n));
  }

  int n() const { return graph.n(); }
  Rational mass(const VertexSet& s) const { return dist.mass(s); }
  bool operator==(const WeightedGraph& o) const { return graph == o.graph && dist == o.dist; }
};

inline void check_vertex(const Graph& g, int v) {
  if (v < 0 || v >= g.n()) throw InputError("vertex " + std::to_string(v) + " out of range");
}
inline void check_set(const Graph& g, const VertexSet& s) {
  if (!s.subset_of(g.vertices())) throw InputError("vertex set exceeds the vertex range");
}

inline Rational edge_weight(const WeightedGraph& wg, int x, int y) {
  check_vertex(wg.graph, x);
  check_vertex(wg.graph, y);
  if (x == y) throw InputError("edge_weight needs distinct vertices");
  return wg.dist[x] * wg.dist[y];
}

inline Rational set_weight(const VertexSet& s, const VertexDistribution& d) {
  if (!s.subset_of(VertexSet::range(d.size()))) throw InputError("vertex set exceeds the vertex range");
  return d.mass(s);
}

// D_W, indexed by the members of W in increasing order.
inline VertexDistribution conditioned(const VertexDistribution& d, const VertexSet& w) {
  Rational m = set_weight(w, d);
  if (m == 0) throw ZeroMassError("cannot condition on a set of mass 0");
  std::vector<Rational> out;
  w.for_each([&](int v) { out.push_back(d[v] / m); });
  return VertexDistribution(std::move(out));
}

inline WeightedGraph induced(const WeightedGraph& wg, const VertexSet& x) {
  check_set(wg.graph, x);
  return WeightedGraph(wg.graph.induced(x), conditioned(wg.dist, x));
}

// Σ over edges between X and Y of D(x)D(y), divided by D(X)D(Y); 0 when either mass is 0.
inline Rational pair_density(const WeightedGraph& wg, const VertexSet& x, const VertexSet& y) {
  check_set(wg.graph, x);
  check_set(wg.graph, y);
  if (x.intersects(y)) throw InputError("pair_density needs disjoint sets");
  Rational mx = wg.mass(x), my = wg.mass(y);
  if (mx == 0 || my == 0) return 0;
  Rational e = 0;
  x.for_each([&](int a) {
    Rational wa = 0;
    (wg.graph.neighbors(a) & y).for_each([&](int b) { wa += wg.dist[b]; });
    e += wg.dist[a] * wa;
  });
  return e / (mx * my);
}

// Σ over edges inside or between, as raw weight (no normalization)
inline Rational cross_edge_mass(const WeightedGraph& wg, const VertexSet& x, const VertexSet& y) {
  Rational e = 0;
  x.for_each([&](int a) {
    (wg.graph.neighbors(a) & y).for_each([&](int b) { e += wg.dist[a] * wg.dist[b]; });
  });
  return e;
}

inline Rational total_edge_weight(const WeightedGraph& wg) {
  Rational s = 0;
  for (auto [a, b] : wg.graph.edges()) s += wg.dist[a] * wg.dist[b];
  return s;
}

}  // namespace vdflab
