#pragma once

#include "io.hpp"
#include "random.hpp"

#include <cmath>
#include <functional>
#include <map>

namespace vdflab {

struct PartialResourceError : ResourceError {
  PartialResourceError(const std::string& what, Partition p) : ResourceError(what), partial(std::move(p)) {}
  Partition partial;
};

// positive-rational schedule r -> E(r)
using ScheduleFn = std::function<Rational(int)>;

// ---- partition helpers ----

inline VertexSet partition_union(const Partition& p) {
  VertexSet u;
  for (const auto& s : p) u |= s;
  return u;
}

inline bool is_partition_of(const Partition& p, const VertexSet& ground) {
  VertexSet seen;
  for (const auto& s : p) {
    if (s.intersects(seen)) return false;
    seen |= s;
  }
  return seen == ground;
}

// every part of `fine` lies inside some part of `coarse`
inline bool refines(const Partition& fine, const Partition& coarse) {
  for (const auto& f : fine) {
    if (f.empty()) continue;
    bool inside = false;
    for (const auto& c : coarse)
      if (f.subset_of(c)) {
        inside = true;
        break;
      }
    if (!inside) return false;
  }
  return true;
}

// Splits each part by every cut; new parts keep the order of their parent.
inline Partition common_refinement(const Partition& p, const std::vector<VertexSet>& cuts) {
  Partition out;
  for (const auto& part : p) {
    Partition pieces = {part};
    for (const auto& c : cuts) {
      Partition next;
      for (const auto& piece : pieces) {
        VertexSet in = piece & c, out_ = piece.minus(c);
        if (!in.empty()) next.push_back(in);
        if (!out_.empty()) next.push_back(out_);
      }
      pieces.swap(next);
    }
    std::sort(pieces.begin(), pieces.end(), [](const VertexSet& a, const VertexSet& b) { return a.lowest() < b.lowest(); });
    out.insert(out.end(), pieces.begin(), pieces.end());
  }
  return out;
}

// ---- low internal weight ----

inline Rational internal_pair_weight(const Partition& p, const VertexDistribution& d) {
  Rational s = 0;
  for (const auto& part : p) {
    Rational m = 0, sq = 0;
    part.for_each([&](int v) {
      m += d[v];
      sq += d[v] * d[v];
    });
    s += (m * m - sq) / 2;
  }
  return s;
}

// Derandomized random k-coloring, k = ceil(1/eta): vertices by decreasing weight, each into
// the part that currently adds the least internal weight.
inline Partition low_internal_partition(const VertexSet& u, const VertexDistribution& d, const Rational& eta) {
  if (eta <= 0) throw InputError("low_internal_partition needs eta > 0");
  if (!u.subset_of(VertexSet::range(d.size()))) throw InputError("vertex set exceeds the vertex range");
  BigInt kb = ceil_r(1 / eta);
  int k = kb > u.size() ? std::max(1, u.size()) : kb.convert_to<int>();
  std::vector<int> order = u.members();
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return d[a] > d[b]; });
  Partition parts(k);
  std::vector<Rational> mass(k, 0);
  for (int v : order) {
    int best = 0;
    for (int i = 1; i < k; ++i)
      if (mass[i] < mass[best]) best = i;
    parts[best].insert(v);
    mass[best] += d[v];
  }
  parts.erase(std::remove_if(parts.begin(), parts.end(), [](const VertexSet& s) { return s.empty(); }), parts.end());
  Rational mu = d.mass(u);
  if (internal_pair_weight(parts, d) > eta * mu * mu) throw ContractError("low_internal_partition missed its bound");
  return parts;
}

// ---- balanced partition ----

// Peels a minimum-size heaviest prefix of mass >= D(W)/(2b), then recurses on the rest.
inline Partition balanced_partition(const VertexSet& u, const VertexDistribution& d, int a) {
  if (a < 1) throw InputError("balanced_partition needs a >= 1");
  if (!u.subset_of(VertexSet::range(d.size()))) throw InputError("vertex set exceeds the vertex range");
  Rational total = d.mass(u);
  if (total == 0) throw ZeroMassError("balanced_partition on a set of mass 0");
  for (int v : u.members())
    if (d[v] * 2 * a > total)
      throw InputError("vertex " + std::to_string(v) + " has conditional weight above 1/(2a)");
  Partition out;
  VertexSet rest = u;
  for (int b = a; b > 1; --b) {
    Rational target = d.mass(rest) / (2 * b);
    std::vector<int> order = rest.members();
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return d[x] > d[y]; });
    VertexSet part;
    Rational m = 0;
    for (int v : order) {
      if (m >= target && !part.empty()) break;
      part.insert(v);
      m += d[v];
    }
    out.push_back(part);
    rest = rest.minus(part);
  }
  out.push_back(rest);
  for (const auto& part : out)
    if (d.mass(part) * 2 * a < total) throw ContractError("balanced_partition produced a light part");
  return out;
}

// ---- regular pairs ----

constexpr int kCertifyCap = 14;

enum class PairStatus { Regular, Irregular };

struct RegularityWitness {
  VertexSet x_sub, y_sub;
  Rational density;  // d(X', Y')
};

struct RegularityReport {
  int i = -1, j = -1;
  VertexSet x, y;
  PairStatus status = PairStatus::Regular;
  Rational density;  // d(X, Y)
  std::optional<RegularityWitness> witness;
  bool regular() const { return status == PairStatus::Regular; }
};

namespace detail {

// Scan subset pairs in (mask X', mask Y') order; the first violation found is the
// lexicographically least witness.
template <class T>
std::optional<std::pair<std::uint32_t, std::uint32_t>> regularity_scan(const std::vector<std::int64_t>& ax,
                                                                       const std::vector<std::int64_t>& ay,
                                                                       const std::vector<std::uint32_t>& nbr, T A, T B,
                                                                       T E, T p, T q) {
  const int kx = static_cast<int>(ax.size()), ky = static_cast<int>(ay.size());
  const std::uint32_t nx = 1u << kx, ny = 1u << ky;
  std::vector<T> ymass(ny, T(0));
  std::vector<char> yok(ny, 0);
  for (std::uint32_t m = 1; m < ny; ++m) {
    int low = std::countr_zero(m);
    ymass[m] = ymass[m & (m - 1)] + T(ay[low]);
    yok[m] = q * ymass[m] >= p * B && ymass[m] > 0;
  }
  std::vector<T> xmass(nx, T(0));
  for (std::uint32_t m = 1; m < nx; ++m) xmass[m] = xmass[m & (m - 1)] + T(ax[std::countr_zero(m)]);
  const T K1 = q * A * B;
  std::vector<T> c(ky), e(ny);
  for (std::uint32_t xm = 1; xm < nx; ++xm) {
    const T& am = xmass[xm];
    if (am == 0 || q * am < p * A) continue;
    for (int y = 0; y < ky; ++y) {
      T s = 0;
      for (std::uint32_t b = xm & nbr[y]; b; b &= b - 1) s += T(ax[std::countr_zero(b)]);
      c[y] = s * T(ay[y]);
    }
    const T K2 = am * (q * E + p * A * B);
    const T K3 = am * (q * E - p * A * B);
    e[0] = 0;
    for (std::uint32_t ym = 1; ym < ny; ++ym) {
      e[ym] = e[ym & (ym - 1)] + c[std::countr_zero(ym)];
      if (!yok[ym]) continue;
      T lhs = K1 * e[ym];
      if (lhs - K2 * ymass[ym] > 0 || K3 * ymass[ym] - lhs > 0) return std::make_pair(xm, ym);
    }
  }
  return std::nullopt;
}

}  // namespace detail

// Exhaustive eps-regularity certificate for the pair (X, Y).
inline RegularityReport certify_pair(const WeightedGraph& wg, const VertexSet& x, const VertexSet& y,
                                     const Rational& eps, int cap = kCertifyCap) {
  check_set(wg.graph, x);
  check_set(wg.graph, y);
  if (x.intersects(y)) throw InputError("certify_pair needs disjoint sets");
  if (eps <= 0) throw InputError("certify_pair needs eps > 0");
  if (x.size() > cap || y.size() > cap || cap > 20)
    throw ResourceError("certify_pair capped at " + std::to_string(cap) + " vertices per side");
  wg.dist.require_units(std::int64_t(1) << 62, "certify_pair");
  RegularityReport rep;
  rep.x = x;
  rep.y = y;
  rep.density = pair_density(wg, x, y);
  auto xs = x.members(), ys = y.members();
  std::vector<std::int64_t> ax, ay;
  for (int v : xs) ax.push_back(wg.dist.unit(v));
  for (int v : ys) ay.push_back(wg.dist.unit(v));
  std::int64_t A = wg.dist.unit_mass(x), B = wg.dist.unit_mass(y);
  if (A == 0 || B == 0) return rep;
  std::vector<std::uint32_t> nbr(ys.size(), 0);
  i128 E = 0;
  for (std::size_t j = 0; j < ys.size(); ++j)
    for (std::size_t i = 0; i < xs.size(); ++i)
      if (wg.graph.adjacent(xs[i], ys[j])) {
        nbr[j] |= 1u << i;
        E += i128(ax[i]) * ay[j];
      }
  BigInt p = boost::multiprecision::numerator(eps), q = boost::multiprecision::denominator(eps);
  BigInt bound = (p + q) * BigInt(A) * A * B * B;
  std::optional<std::pair<std::uint32_t, std::uint32_t>> hit;
  if (bound < (BigInt(1) << 125) && p + q < (BigInt(1) << 62)) {
    hit = detail::regularity_scan<i128>(ax, ay, nbr, A, B, E, static_cast<i128>(p.convert_to<std::int64_t>()),
                                        static_cast<i128>(q.convert_to<std::int64_t>()));
  } else {
    hit = detail::regularity_scan<BigInt>(ax, ay, nbr, BigInt(A), BigInt(B), to_big(E), p, q);
  }
  if (hit) {
    rep.status = PairStatus::Irregular;
    RegularityWitness w;
    w.x_sub = subset_by_mask(xs, hit->first);
    w.y_sub = subset_by_mask(ys, hit->second);
    w.density = pair_density(wg, w.x_sub, w.y_sub);
    rep.witness = w;
  }
  return rep;
}

// ---- consequences of regularity ----

struct SubpairCheck {
  Rational density;       // d(X', Y')
  Rational parent_density;
  bool density_within = false;  // |d(X',Y') - d(X,Y)| <= eps
  Rational eps_prime;           // max(eps/alpha, 2 eps)
  RegularityReport sub;
  bool holds() const { return density_within && sub.regular(); }
};

inline SubpairCheck subpair_bounds_check(const WeightedGraph& wg, const VertexSet& x, const VertexSet& y,
                                         const VertexSet& xs, const VertexSet& ys, const Rational& eps,
                                         const Rational& alpha, int cap = kCertifyCap) {
  if (!xs.subset_of(x) || !ys.subset_of(y)) throw InputError("subpair_bounds_check needs X' in X and Y' in Y");
  if (alpha < eps) throw PreconditionError("subpair_bounds_check needs alpha >= eps");
  if (wg.mass(x) == 0 || wg.mass(y) == 0) throw PreconditionError("subpair_bounds_check needs D(X), D(Y) > 0");
  if (wg.mass(xs) < alpha * wg.mass(x) || wg.mass(ys) < alpha * wg.mass(y))
    throw PreconditionError("subpair_bounds_check: slice lighter than alpha times its parent");
  auto parent = certify_pair(wg, x, y, eps, cap);
  if (!parent.regular()) throw PreconditionError("subpair_bounds_check: (X, Y) is not eps-regular");
  SubpairCheck out;
  out.parent_density = parent.density;
  out.density = pair_density(wg, xs, ys);
  out.density_within = rabs(out.density - parent.density) <= eps;
  out.eps_prime = std::max(Rational(eps / alpha), Rational(2 * eps));
  out.sub = certify_pair(wg, xs, ys, out.eps_prime, cap);
  return out;
}

// {x in X : |d({x}, Y) - d(X, Y)| > eps}
inline VertexSet atypical_vertices(const WeightedGraph& wg, const VertexSet& x, const VertexSet& y, const Rational& eps) {
  Rational d = pair_density(wg, x, y);
  VertexSet out;
  x.for_each([&](int v) {
    if (rabs(pair_density(wg, VertexSet::single(v), y) - d) > eps) out.insert(v);
  });
  return out;
}

struct AtypicalCheck {
  VertexSet atypical;
  Rational mass, bound;  // bound = 2 eps D(X)
  bool pair_regular = false;
  bool holds() const { return !pair_regular || mass < bound; }
};

inline AtypicalCheck atypical_check(const WeightedGraph& wg, const VertexSet& x, const VertexSet& y, const Rational& eps,
                                    int cap = kCertifyCap) {
  AtypicalCheck c;
  c.atypical = atypical_vertices(wg, x, y, eps);
  c.mass = wg.mass(c.atypical);
  c.bound = 2 * eps * wg.mass(x);
  c.pair_regular = wg.mass(x) > 0 && wg.mass(y) > 0 && certify_pair(wg, x, y, eps, cap).regular();
  if (!c.holds()) throw ContractError("regular pair with too many atypical vertices");
  return c;
}

// ---- counting ----

inline Rational delta_counting(int h, const Rational& eta) {
  if (h < 2) throw InputError("delta_counting needs h >= 2");
  if (eta <= 0 || eta >= 1) throw InputError("delta_counting needs 0 < eta < 1");
  if (h == 2) return eta;
  Rational half = eta / 2;
  Rational a = Rational(1, 4 * (h - 1));
  Rational c = rpow(half, h - 1) * delta_counting(h - 1, half) / 2;
  return std::min({a, half, c});
}

// Sum over role-preserving induced copies of H in U_1 x ... x U_h of the product of weights.
inline Rational weighted_copy_mass(const WeightedGraph& wg, const Graph& h, const std::vector<VertexSet>& u) {
  if (static_cast<int>(u.size()) != h.n()) throw InputError("weighted_copy_mass needs one set per vertex of H");
  VertexSet seen;
  for (const auto& s : u) {
    check_set(wg.graph, s);
    if (s.intersects(seen)) throw InputError("weighted_copy_mass needs disjoint sets");
    seen |= s;
  }
  std::vector<int> pick(h.n());
  auto rec = [&](auto&& self, int i) -> Rational {
    if (i == h.n()) return 1;
    VertexSet cand = u[i];
    for (int j = 0; j < i; ++j)
      cand = h.adjacent(i, j) ? (cand & wg.graph.neighbors(pick[j])) : cand.minus(wg.graph.neighbors(pick[j]));
    Rational s = 0;
    cand.for_each([&](int v) {
      if (wg.dist[v] == 0) return;
      pick[i] = v;
      s += wg.dist[v] * self(self, i + 1);
    });
    return s;
  };
  return rec(rec, 0);
}

struct CountingCheck {
  bool hypotheses = false;
  std::vector<std::string> failed;  // hypotheses that do not hold
  Rational delta, mass, bound, margin;
  bool holds() const { return !hypotheses || mass >= bound; }
};

inline CountingCheck counting_lemma_check(const WeightedGraph& wg, const Graph& h, const std::vector<VertexSet>& u,
                                          const Rational& eta, int cap = kCertifyCap) {
  CountingCheck c;
  c.delta = delta_counting(h.n(), eta);
  for (int i = 0; i < h.n(); ++i)
    for (int j = i + 1; j < h.n(); ++j) {
      std::string tag = "(" + std::to_string(i) + "," + std::to_string(j) + ")";
      Rational d = pair_density(wg, u[i], u[j]);
      if (h.adjacent(i, j) && d < eta) c.failed.push_back("density below eta at " + tag);
      if (!h.adjacent(i, j) && d > 1 - eta) c.failed.push_back("density above 1-eta at " + tag);
      if (wg.mass(u[i]) > 0 && wg.mass(u[j]) > 0 && !certify_pair(wg, u[i], u[j], c.delta, cap).regular())
        c.failed.push_back("not delta-regular at " + tag);
    }
  c.hypotheses = c.failed.empty();
  c.mass = weighted_copy_mass(wg, h, u);
  c.bound = c.delta;
  for (const auto& s : u) c.bound *= wg.mass(s);
  c.margin = c.mass - c.bound;
  if (!c.holds()) throw ContractError("counting bound violated under verified hypotheses");
  return c;
}

// ---- index and regular partitions ----

inline Rational partition_index(const WeightedGraph& wg, const Partition& p) {
  Rational q = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      Rational mi = wg.mass(p[i]), mj = wg.mass(p[j]);
      if (mi == 0 || mj == 0) continue;
      Rational e = cross_edge_mass(wg, p[i], p[j]);
      q += e * e / (mi * mj);
    }
  return q;
}

inline std::vector<RegularityReport> regularity_reports(const WeightedGraph& wg, const Partition& p, const Rational& eps,
                                                        int cap = kCertifyCap) {
  std::vector<RegularityReport> out;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      auto r = certify_pair(wg, p[i], p[j], eps, cap);
      r.i = static_cast<int>(i);
      r.j = static_cast<int>(j);
      out.push_back(std::move(r));
    }
  return out;
}

// Σ D(P_i)D(P_j) over irregular pairs
inline Rational irregular_mass(const WeightedGraph& wg, const std::vector<RegularityReport>& reps) {
  Rational s = 0;
  for (const auto& r : reps)
    if (!r.regular()) s += wg.mass(r.x) * wg.mass(r.y);
  return s;
}

inline bool is_regular_partition(const WeightedGraph& wg, const Partition& p, const Rational& eps, int cap = kCertifyCap) {
  return irregular_mass(wg, regularity_reports(wg, p, eps, cap)) <= eps;
}

// Refine every part by the witness sides of its irregular pairs.
inline Partition boost_refinement(const WeightedGraph& wg, const Partition& p, const Rational& eps,
                                  const std::vector<RegularityReport>& reps) {
  if (irregular_mass(wg, reps) <= eps) throw ContractError("boost_refinement called on an eps-regular partition");
  std::vector<std::vector<VertexSet>> cuts(p.size());
  for (const auto& r : reps) {
    if (r.regular()) continue;
    if (!r.witness || r.i < 0 || r.j < 0) throw InputError("boost_refinement needs indexed witnesses");
    cuts[r.i].push_back(r.witness->x_sub);
    cuts[r.j].push_back(r.witness->y_sub);
  }
  Partition out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    auto pieces = common_refinement({p[i]}, cuts[i]);
    out.insert(out.end(), pieces.begin(), pieces.end());
  }
  double bound = static_cast<double>(p.size()) * std::pow(2.0, static_cast<double>(p.size()));
  if (static_cast<double>(out.size()) > bound) throw ContractError("boost_refinement exceeded |P| 2^|P| parts");
  if (partition_index(wg, out) < partition_index(wg, p) + rpow(eps, 5))
    throw ContractError("boost_refinement gained less than eps^5");
  return out;
}

struct SzemerediResult {
  Partition partition;
  int rounds = 0;
  std::vector<Rational> index_history;
  std::vector<RegularityReport> reports;  // of the final partition
  Rational irregular;
};

inline SzemerediResult szemeredi_run(const WeightedGraph& wg, const Rational& eps, const Partition& p0,
                                     int cap = kCertifyCap) {
  if (eps <= 0 || eps >= 1) throw InputError("szemeredi_partition needs 0 < eps < 1");
  if (!is_partition_of(p0, wg.graph.vertices())) throw InputError("P0 is not a partition of V(G)");
  Partition p;
  for (const auto& s : p0)
    if (!s.empty()) p.push_back(s);
  SzemerediResult res;
  BigInt max_rounds = floor_r(1 / rpow(eps, 5));
  // certificates of unchanged pairs carry over between rounds
  std::map<std::pair<VertexSet, VertexSet>, RegularityReport> cache;
  for (;;) {
    for (const auto& s : p)
      if (s.size() > cap)
        throw PartialResourceError("szemeredi_partition: part of size " + std::to_string(s.size()) +
                                       " exceeds the certification cap " + std::to_string(cap),
                                   p);
    res.index_history.push_back(partition_index(wg, p));
    std::vector<RegularityReport> reps;
    for (std::size_t i = 0; i < p.size(); ++i)
      for (std::size_t j = i + 1; j < p.size(); ++j) {
        auto key = std::make_pair(p[i], p[j]);
        auto it = cache.find(key);
        if (it == cache.end()) it = cache.emplace(key, certify_pair(wg, p[i], p[j], eps, cap)).first;
        RegularityReport r = it->second;
        r.i = static_cast<int>(i);
        r.j = static_cast<int>(j);
        reps.push_back(std::move(r));
      }
    Rational irr = irregular_mass(wg, reps);
    if (irr <= eps) {
      res.partition = p;
      res.reports = std::move(reps);
      res.irregular = irr;
      return res;
    }
    if (BigInt(res.rounds) >= max_rounds) throw ContractError("szemeredi_partition exceeded eps^-5 rounds");
    p = boost_refinement(wg, p, eps, reps);
    ++res.rounds;
  }
}

inline Partition szemeredi_partition(const WeightedGraph& wg, const Rational& eps, const Partition& p0,
                                     int cap = kCertifyCap) {
  return szemeredi_run(wg, eps, p0, cap).partition;
}

// Running minimum, so the schedule is non-increasing.
inline ScheduleFn monotone_schedule(ScheduleFn e) {
  return [e](int r) {
    Rational m = e(0);
    for (int s = 1; s <= r; ++s) m = std::min(m, e(s));
    return m;
  };
}

struct StrongResult {
  Partition P, Q;
  int rounds = 0;
  Rational eps_P;           // E(|P|), the regularity level of Q
  Rational irregular;       // irregular mass of Q at eps_P
  Rational deviation;       // Σ D(Q1)D(Q2)|d(Q1,Q2) - d(P1,P2)|
  Rational deviation_sq;    // same with squares
  Rational pair_mass;       // Σ D(Q1)D(Q2) over the same pairs
  bool items_hold = false;  // refinement chain, regularity, deviation <= E(0)
};

namespace detail {

inline void strong_deviation(const WeightedGraph& wg, const Partition& P, const Partition& Q, StrongResult& r) {
  r.deviation = r.deviation_sq = r.pair_mass = 0;
  std::vector<int> owner(Q.size(), -1);
  for (std::size_t k = 0; k < Q.size(); ++k)
    for (std::size_t i = 0; i < P.size(); ++i)
      if (Q[k].subset_of(P[i])) owner[k] = static_cast<int>(i);
  for (std::size_t a = 0; a < Q.size(); ++a)
    for (std::size_t b = a + 1; b < Q.size(); ++b) {
      if (owner[a] == owner[b]) continue;
      Rational w = wg.mass(Q[a]) * wg.mass(Q[b]);
      Rational dev = pair_density(wg, Q[a], Q[b]) - pair_density(wg, P[owner[a]], P[owner[b]]);
      r.deviation += w * rabs(dev);
      r.deviation_sq += w * dev * dev;
      r.pair_mass += w;
    }
}

}  // namespace detail

inline StrongResult strong_partition(const WeightedGraph& wg, const ScheduleFn& e_fn, int m, const Partition& p0,
                                     int cap = kCertifyCap) {
  if (static_cast<int>(p0.size()) > m) throw InputError("strong_partition needs |P0| <= m");
  ScheduleFn e = monotone_schedule(e_fn);
  Rational e0 = e(0);
  if (e0 <= 0 || e0 >= 1) throw InputError("strong_partition needs E(0) in (0,1)");
  BigInt max_rounds = floor_r(1 / (e0 * e0));
  Partition cur = szemeredi_partition(wg, e0, p0, cap);
  StrongResult res;
  for (int round = 1;; ++round) {
    Rational ek = e(static_cast<int>(cur.size()));
    if (ek <= 0 || ek >= 1) throw InputError("strong_partition needs E(r) in (0,1)");
    auto run = szemeredi_run(wg, ek, cur, cap);
    if (partition_index(wg, run.partition) <= partition_index(wg, cur) + e0 * e0) {
      res.P = cur;
      res.Q = run.partition;
      res.rounds = round;
      res.eps_P = ek;
      res.irregular = run.irregular;
      break;
    }
    if (BigInt(round) > max_rounds) throw ContractError("strong_partition exceeded E(0)^-2 rounds");
    cur = run.partition;
  }
  detail::strong_deviation(wg, res.P, res.Q, res);
  res.items_hold = refines(res.P, p0) && refines(res.Q, res.P) && res.irregular <= res.eps_P &&
                   res.deviation <= e0 && res.deviation_sq <= e0 * e0 &&
                   res.deviation * res.deviation <= res.pair_mass * res.deviation_sq;
  if (!res.items_hold) throw ContractError("strong_partition items failed");
  return res;
}

// ---- Turán–Ramsey sets ----

constexpr int kRetryCap = 64;

struct TuranRamseyResult {
  std::vector<VertexSet> sets;
  bool dense = false;  // all pair densities >= 1/2 (else all < 1/2)
  int attempts = 0;
  std::uint64_t seed = 0;
  Partition regular_partition;
};

namespace detail {

// lexicographically least t-subset of [a] that is a clique or an independent set
inline std::optional<std::vector<int>> ramsey_subset(const Graph& aux, int t) {
  int a = aux.n();
  std::vector<int> pick;
  std::optional<std::vector<int>> found;
  auto rec = [&](auto&& self, int from, int mode) -> bool {
    if (static_cast<int>(pick.size()) == t) return true;
    for (int v = from; v < a; ++v) {
      bool ok = true;
      for (int u : pick) ok = ok && (aux.adjacent(u, v) == (mode == 1));
      if (!ok) continue;
      pick.push_back(v);
      if (self(self, v + 1, mode)) return true;
      pick.pop_back();
    }
    return false;
  };
  std::optional<std::vector<int>> best;
  for (int mode = 0; mode < 2; ++mode) {
    pick.clear();
    if (rec(rec, 0, mode) && (!best || pick < *best)) best = pick;
  }
  return best;
}

inline int weighted_pick(const std::vector<Rational>& w, Stream& s) {
  std::vector<Rational> norm = w;
  Rational tot = 0;
  for (auto& x : w) tot += x;
  for (auto& x : norm) x /= tot;
  return Sampler(VertexDistribution(norm)).draw(s);
}

}  // namespace detail

// Pairwise-disjoint Q_1..Q_t of mass >= zeta, pairwise delta-regular, densities all >= 1/2 or all < 1/2.
inline TuranRamseyResult turan_ramsey_sets(const WeightedGraph& wg, int t, const Rational& delta, const Rational& zeta,
                                           std::uint64_t seed, int cap = kCertifyCap) {
  if (t < 1) throw InputError("turan_ramsey_sets needs t >= 1");
  if (delta <= 0 || delta >= 1) throw InputError("turan_ramsey_sets needs 0 < delta < 1");
  if (zeta <= 0 || zeta > 1) throw InputError("turan_ramsey_sets needs 0 < zeta <= 1");
  for (int v = 0; v < wg.n(); ++v)
    if (wg.dist[v] >= zeta) throw PreconditionError("vertex " + std::to_string(v) + " has weight >= zeta");
  TuranRamseyResult res;
  res.seed = seed;
  if (t == 1) {
    res.sets = {wg.graph.vertices()};
    res.regular_partition = {wg.graph.vertices()};
    res.attempts = 1;
    return res;
  }
  if (t > 3) throw ResourceError("turan_ramsey_sets capped at t = 3 (a = 64 parts)");
  const int a = 1 << (2 * t);
  const Rational eps = delta / (4 * rpow(Rational(a), 4));
  for (int v = 0; v < wg.n(); ++v)
    if (wg.dist[v] * 2 * a > 1) throw PreconditionError("vertex weight above 1/(2a); balanced partition impossible");
  Partition u = balanced_partition(wg.graph.vertices(), wg.dist, a);
  res.regular_partition = szemeredi_partition(wg, eps, u, cap);
  std::vector<std::vector<int>> inside(a);
  for (std::size_t k = 0; k < res.regular_partition.size(); ++k)
    for (int i = 0; i < a; ++i)
      if (res.regular_partition[k].subset_of(u[i])) inside[i].push_back(static_cast<int>(k));
  for (int attempt = 0; attempt < kRetryCap; ++attempt) {
    Stream s(derive_seed(seed, attempt));
    std::vector<VertexSet> pick(a);
    for (int i = 0; i < a; ++i) {
      std::vector<Rational> w;
      for (int k : inside[i]) w.push_back(wg.mass(res.regular_partition[k]));
      pick[i] = res.regular_partition[inside[i][detail::weighted_pick(w, s)]];
    }
    bool ok = true;
    for (int i = 0; i < a && ok; ++i) ok = wg.mass(pick[i]) >= zeta;
    Graph aux(a);
    for (int i = 0; i < a && ok; ++i)
      for (int j = i + 1; j < a && ok; ++j) {
        ok = certify_pair(wg, pick[i], pick[j], delta, cap).regular();
        if (pair_density(wg, pick[i], pick[j]) * 2 >= 1) aux.add_edge(i, j);
      }
    if (!ok) continue;
    auto sub = detail::ramsey_subset(aux, t);
    if (!sub) throw ContractError("no monochromatic t-set in the auxiliary graph");
    for (int i : *sub) res.sets.push_back(pick[i]);
    res.dense = aux.adjacent((*sub)[0], (*sub)[1]);
    res.attempts = attempt + 1;
    return res;
  }
  throw RetryError("turan_ramsey_sets: no admissible choice after " + std::to_string(kRetryCap) + " attempts (seed " +
                   std::to_string(seed) + ", " + std::to_string(res.regular_partition.size()) + " regular parts)");
}

// ---- representatives ----

struct RepresentativesResult {
  VertexSet exceptional;  // P_0
  Partition parts;        // P_1..P_r
  std::vector<VertexSet> reps;  // Q_i
  StrongResult strong;
  int attempts = 0;
  std::uint64_t seed = 0;
  // the five items, with the exact quantities behind them
  bool item1 = false, item2 = false, item3 = false, item4 = false, item5 = false;
  Rational exceptional_mass, min_rep_ratio, deviation;
  bool all() const { return item1 && item2 && item3 && item4 && item5; }
};

inline RepresentativesResult representatives(const WeightedGraph& wg, const ScheduleFn& e_fn, int m, const Partition& p0,
                                             std::uint64_t seed, int cap = kCertifyCap) {
  ScheduleFn e = monotone_schedule(e_fn);
  const Rational eps = e(0);
  if (eps <= 0 || eps > 1) throw InputError("representatives needs E(0) in (0,1]");
  ScheduleFn ep = [e, eps](int r) {
    Rational v = std::min(e(r), Rational(eps / 3));
    if (r > 0) v = std::min(v, Rational(eps * eps / (2 * rpow(Rational(r), 4))));
    return v;
  };
  RepresentativesResult res;
  res.seed = seed;
  res.strong = strong_partition(wg, ep, m, p0, cap);
  const Partition& pp = res.strong.P;
  const Partition& qq = res.strong.Q;
  for (const auto& part : pp) {
    if (wg.mass(part) * static_cast<int>(pp.size()) < eps)
      res.exceptional |= part;
    else
      res.parts.push_back(part);
  }
  const int r = static_cast<int>(res.parts.size());
  res.exceptional_mass = wg.mass(res.exceptional);
  res.item1 = res.exceptional_mass < eps;
  res.item2 = refines(res.parts, p0);
  std::vector<std::vector<int>> inside(r);
  for (std::size_t k = 0; k < qq.size(); ++k)
    for (int i = 0; i < r; ++i)
      if (qq[k].subset_of(res.parts[i])) inside[i].push_back(static_cast<int>(k));
  const Rational er = e_fn(r);
  for (int attempt = 0; attempt < kRetryCap; ++attempt) {
    Stream s(derive_seed(seed, attempt));
    std::vector<VertexSet> pick(r);
    for (int i = 0; i < r; ++i) {
      std::vector<Rational> w;
      for (int k : inside[i]) w.push_back(wg.mass(qq[k]));
      pick[i] = qq[inside[i][detail::weighted_pick(w, s)]];
    }
    bool heavy = true;
    Rational ratio = r ? Rational(-1) : Rational(0);
    for (int i = 0; i < r; ++i) {
      Rational x = wg.mass(pick[i]) * 3 * static_cast<int>(qq.size()) / wg.mass(res.parts[i]);
      ratio = ratio < 0 ? x : std::min(ratio, x);
      heavy = heavy && x >= 1;
    }
    bool regular = true;
    for (int i = 0; i < r && regular; ++i)
      for (int j = i + 1; j < r && regular; ++j) regular = certify_pair(wg, pick[i], pick[j], er, cap).regular();
    Rational dev = 0;
    for (int i = 0; i < r; ++i)
      for (int j = i + 1; j < r; ++j)
        dev += wg.mass(res.parts[i]) * wg.mass(res.parts[j]) *
               rabs(pair_density(wg, pick[i], pick[j]) - pair_density(wg, res.parts[i], res.parts[j]));
    if (!(heavy && regular && dev <= eps)) continue;
    res.reps = std::move(pick);
    res.attempts = attempt + 1;
    res.item3 = heavy;
    res.item4 = regular;
    res.item5 = true;
    res.min_rep_ratio = ratio;
    res.deviation = dev;
    return res;
  }
  throw RetryError("representatives: probabilistic items failed " + std::to_string(kRetryCap) + " times (seed " +
                   std::to_string(seed) + ")");
}

}  // namespace vdflab
