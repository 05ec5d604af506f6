// One PASS/FAIL line per acceptance criterion.
#include "vdflab/vdflab.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>

using namespace vdflab;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

int failures = 0;

void line(int id, bool pass, const std::string& detail) {
  std::printf("%s criterion %d: %s\n", pass ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

template <class F>
void criterion(int id, F&& body) {
  try {
    auto [pass, detail] = body();
    line(id, pass, detail);
  } catch (const std::exception& e) {
    line(id, false, std::string("threw: ") + e.what());
  }
}

Graph random_graph(int n, Stream& s, double p) {
  Graph g(n);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (s.coin(p)) g.add_edge(a, b);
  return g;
}

VertexDistribution random_distribution(int n, Stream& s, int max_unit = 6) {
  std::vector<std::int64_t> u(n);
  for (auto& x : u) x = 1 + static_cast<std::int64_t>(s.below(max_unit));
  std::int64_t total = std::accumulate(u.begin(), u.end(), std::int64_t{0});
  std::vector<Rational> w;
  for (auto x : u) w.push_back(Rational(x, total));
  return VertexDistribution(w);
}

Partition random_partition(const VertexSet& u, int parts, Stream& s) {
  Partition p(parts);
  u.for_each([&](int v) { p[s.below(parts)].insert(v); });
  p.erase(std::remove_if(p.begin(), p.end(), [](const VertexSet& x) { return x.empty(); }), p.end());
  return p;
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

// weight vectors of length n over `values` (exact) summing to 1
void compositions(const std::vector<Rational>& values, int n, std::vector<Rational>& cur, Rational left,
                  const std::function<void(const std::vector<Rational>&)>& emit) {
  if (static_cast<int>(cur.size()) == n) {
    if (left == 0) emit(cur);
    return;
  }
  const Rational slots(n - static_cast<int>(cur.size()) - 1);
  for (const auto& v : values) {
    if (v > left) continue;
    Rational rest = left - v;
    if (rest < slots * values.front() || rest > slots * values.back()) continue;
    cur.push_back(v);
    compositions(values, n, cur, left - v, emit);
    cur.pop_back();
  }
}

std::vector<Rational> farey(int q, bool with_zero) {
  std::set<Rational> s;
  for (int b = 1; b <= q; ++b)
    for (int a = with_zero ? 0 : 1; a <= b; ++a) s.insert(Rational(a, b));
  return {s.begin(), s.end()};
}

bool brute_embeds(const Graph& f, const EmbeddingScheme& k) {
  const int n = f.n(), m = k.size();
  if (n == 0) return true;
  if (m == 0) return false;
  std::vector<int> phi(n, 0);
  for (;;) {
    bool ok = true;
    std::vector<int> a_hits(k.a, 0);
    for (int v = 0; v < n && ok; ++v)
      if (k.in_a(phi[v]) && ++a_hits[phi[v]] > 1) ok = false;
    for (int u = 0; u < n && ok; ++u)
      for (int v = u + 1; v < n && ok; ++v) {
        Color c = phi[u] == phi[v] ? k.vertex_color(phi[u]) : k.color(phi[u], phi[v]);
        if ((c == Color::Black && !f.adjacent(u, v)) || (c == Color::White && f.adjacent(u, v))) ok = false;
      }
    if (ok) return true;
    int i = n - 1;
    while (i >= 0 && ++phi[i] == m) phi[i--] = 0;
    if (i < 0) return false;
  }
}

}  // namespace

int main() {
  using R = std::pair<bool, std::string>;

  criterion(1, [&]() -> R {
    auto t0 = Clock::now();
    auto ab = non_extendable_pair(ab_free(), graphs::C(5), VertexSet{});
    double t_ab = seconds_since(t0);
    t0 = Clock::now();
    auto cs = cycle_star_pair(4);
    double t_cs = seconds_since(t0);
    bool ok = ab.cert.distance == Rational(1, 25) && cs.cert.distance == Rational(1, 16) && t_ab < 60 && t_cs < 60;
    return {ok, "AB-free/C5 " + to_string(ab.cert.distance) + " (want 1/25), cycle-star M=4 " + to_string(cs.cert.distance) +
                    " (want 1/16), " + fmt(t_ab) + "s/" + fmt(t_cs) + "s"};
  });

  criterion(2, [&]() -> R {
    auto t0 = Clock::now();
    std::vector<Property> props = {triangle_free(), k_colorable(2), k_colorable(3), edge_free(), complete()};
    std::vector<Variant> variants = {Variant::VDF, Variant::Standard, Variant::LargeInputs, Variant::SizeAware,
                                     Variant::NLW, Variant::NHW, Variant::Trivial};
    Stream s(2002);
    std::int64_t runs = 0, rejects = 0;
    std::string where;
    for (const auto& p : props) {
      std::vector<Tester> testers;
      for (Variant v : variants) {
        TesterConfig c;
        c.variant = v;
        c.s = v == Variant::NHW ? 1 : 6;
        c.M = 12;
        c.r_max = 6;
        testers.emplace_back(p, c);
      }
      for (int k = 0; k < 200; ++k) {
        const int n = 3 + static_cast<int>(s.below(8));
        Graph g;
        do {
          g = random_graph(n, s, 0.3);
          if (p.name == "complete") g = Graph::complete(n);
          if (p.name == "edge-free") g = Graph(n);
        } while (!p(g));
        WeightedGraph skewed(g, random_distribution(n, s)), flat = WeightedGraph::uniform(g);
        for (std::size_t vi = 0; vi < variants.size(); ++vi) {
          const bool weight_bounded = variants[vi] == Variant::NLW || variants[vi] == Variant::NHW;
          const WeightedGraph& wg = weight_bounded ? flat : skewed;
          for (std::uint64_t r = 0; r < 100; ++r, ++runs)
            if (!testers[vi].run(wg, derive_seed(k, r)).accepted()) {
              ++rejects;
              if (where.empty()) where = " first at " + p.name + "/" + variant_name(variants[vi]);
            }
        }
      }
    }
    return {rejects == 0, std::to_string(rejects) + " rejections in " + std::to_string(runs) + " runs on members" + where +
                              ", " + fmt(seconds_since(t0)) + "s"};
  });

  criterion(3, [&]() -> R {
    int reject = 0;
    const Graph k3 = Graph::complete(3);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        for (int c = 0; c < 3; ++c) {
          VertexSet u = VertexSet::of({a, b, c});
          reject += !triangle_free()(k3.induced(u));
        }
    Rational exact(reject, 27);
    auto wg = WeightedGraph::uniform(k3);
    Rational law = rejection_probability(wg, triangle_free(), 3);
    auto est = estimate_probability([&](std::uint64_t s) { return !vdf_tester(wg, triangle_free(), 3, s).accepted(); }, 100000, 3);
    bool ok = exact == Rational(2, 9) && law == exact && std::abs(est.estimate - 2.0 / 9) <= 0.01;
    return {ok, "enumeration " + to_string(exact) + ", exact law " + to_string(law) + ", Monte Carlo " + fmt(est.estimate)};
  });

  criterion(4, [&]() -> R {
    auto t0 = Clock::now();
    Rational base = distance_to_property(WeightedGraph::uniform(Graph::complete(4)), triangle_free()).value;
    ExperimentConfig c;
    c.input = "blowup:complete:4:24";
    c.property = "triangle-free";
    c.tester.variant = Variant::VDF;
    c.trials = 2000;
    c.seed = 4;
    c.certify = false;
    c.sweep = SweepSpec{"s", 1, 24, 1};
    auto r = sweep(c);
    double t = seconds_since(t0);
    bool ok = base == Rational(1, 8) && r.minimal.has_value() && t < 600;
    std::string detail = "K4 base farness " + to_string(base) + " lifted to the 24-vertex blowup; ";
    detail += r.minimal ? "minimal s = " + std::to_string(*r.minimal) + " (CI lo " + fmt(r.reports.back().ci.lo) + ")" : "no s found";
    return {ok, detail + ", " + fmt(t) + "s"};
  });

  criterion(5, [&]() -> R {
    auto t0 = Clock::now();
    Stream s(5005);
    int bad_a1 = 0, bad_a2 = 0, bad_a3 = 0, boosts = 0;
    for (int k = 0; k < 500; ++k) {
      int n = 2 + static_cast<int>(s.below(9));
      WeightedGraph wg(random_graph(n, s, 0.5), random_distribution(n, s));
      int cut = 1 + static_cast<int>(s.below(n - 1));
      VertexSet x = VertexSet::range(cut), y = VertexSet::range(n).minus(x);
      auto px = random_partition(x, 3, s), py = random_partition(y, 3, s);
      Rational d = pair_density(wg, x, y), first = 0, second = 0, spread = 0;
      for (const auto& a : px)
        for (const auto& b : py) {
          Rational w = wg.mass(a) * wg.mass(b), da = pair_density(wg, a, b);
          first += w * da;
          second += w * da * da;
          spread += w * (da - d) * (da - d);
        }
      Rational mxy = wg.mass(x) * wg.mass(y);
      bad_a1 += first != mxy * d || second != mxy * d * d + spread;
    }
    for (int k = 0; k < 500; ++k) {
      int n = 2 + static_cast<int>(s.below(9));
      WeightedGraph wg(random_graph(n, s, 0.5), random_distribution(n, s));
      auto p = random_partition(VertexSet::range(n), 1 + static_cast<int>(s.below(4)), s);
      std::vector<VertexSet> cuts = {random_partition(VertexSet::range(n), 2, s).front()};
      auto fine = common_refinement(p, cuts);
      bad_a2 += !refines(fine, p) || partition_index(wg, fine) < partition_index(wg, p);
    }
    const Rational eps(1, 4);
    for (int k = 0; k < 1500; ++k) {
      int n = 4 + static_cast<int>(s.below(7));
      WeightedGraph wg(random_graph(n, s, 0.5), random_distribution(n, s));
      auto p = random_partition(VertexSet::range(n), 2 + static_cast<int>(s.below(2)), s);
      auto reps = regularity_reports(wg, p, eps);
      if (irregular_mass(wg, reps) <= eps) continue;
      ++boosts;
      auto q = boost_refinement(wg, p, eps, reps);
      bad_a3 += !refines(q, p) || q.size() > (p.size() << p.size()) || partition_index(wg, q) < partition_index(wg, p) + rpow(eps, 5);
    }
    auto t1 = Clock::now();
    WeightedGraph g12 = WeightedGraph::uniform(random_graph(12, s, 0.5));
    Partition p0 = {VertexSet::range(4), VertexSet::range(8).minus(VertexSet::range(4)), VertexSet::range(12).minus(VertexSet::range(8))};
    auto res = szemeredi_run(g12, eps, p0);
    double t_sz = seconds_since(t1);
    bool certified = is_regular_partition(g12, res.partition, eps);
    bool ok = bad_a1 == 0 && bad_a2 == 0 && bad_a3 == 0 && boosts > 0 && certified && t_sz < 300;
    return {ok, "identities 500 (" + std::to_string(bad_a1) + " bad), refinements 500 (" + std::to_string(bad_a2) + " bad), boosts " +
                    std::to_string(boosts) + " (" + std::to_string(bad_a3) + " bad), n=12 partition " + std::to_string(res.partition.size()) +
                    " parts certified=" + (certified ? "yes" : "no") + " in " + fmt(t_sz) + "s; total " + fmt(seconds_since(t0)) + "s"};
  });

  criterion(6, [&]() -> R {
    Stream s(6006);
    int instances = 0, violated = 0, attempts = 0;
    while (instances < 50 && attempts < 5000) {
      ++attempts;
      const int h = 2 + static_cast<int>(s.below(2));
      Graph H = random_graph(h, s, 0.5);
      std::vector<int> sizes(h);
      int n = 0;
      for (auto& z : sizes) n += (z = 1 + static_cast<int>(s.below(3)));
      std::vector<VertexSet> u(h);
      std::vector<int> owner;
      for (int i = 0, v = 0; i < h; ++i)
        for (int k = 0; k < sizes[i]; ++k, ++v) {
          u[i].insert(v);
          owner.push_back(i);
        }
      // pairs follow H exactly, with occasional noise on two-part instances
      Graph g(n);
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
          if (owner[a] == owner[b]) {
            if (s.coin(0.5)) g.add_edge(a, b);
          } else {
            bool e = H.adjacent(owner[a], owner[b]);
            if (h == 2 && s.coin(0.2)) e = !e;
            if (e) g.add_edge(a, b);
          }
        }
      WeightedGraph wg(g, random_distribution(n, s));
      Rational eta(1, 2 + static_cast<int>(s.below(3)));
      auto c = counting_lemma_check(wg, H, u, eta);
      if (!c.hypotheses) continue;
      ++instances;
      violated += c.mass < c.bound;
    }
    bool recur = delta_counting(2, Rational(1, 3)) == Rational(1, 3) && delta_counting(3, Rational(1, 2)) == Rational(1, 128);
    bool ok = instances == 50 && violated == 0 && recur;
    return {ok, std::to_string(instances) + " instances with verified hypotheses, " + std::to_string(violated) +
                    " below the bound; delta(2,1/3)=" + to_string(delta_counting(2, Rational(1, 3))) +
                    ", delta(3,1/2)=" + to_string(delta_counting(3, Rational(1, 2)))};
  });

  criterion(7, [&]() -> R {
    auto t0 = Clock::now();
    auto values = farey(6, true);
    std::int64_t checks = 0, bad = 0, large = 0;
    for (int n = 1; n <= 4; ++n)
      for (const auto& g : graphs_on(n)) {
        std::vector<Rational> cur;
        compositions(values, n, cur, Rational(1), [&](const std::vector<Rational>& w) {
          WeightedGraph wg(g, VertexDistribution(w));
          const int N = static_cast<int>(least_blowup_size(wg.dist));
          for (const auto& p : {edge_free(), complete(), triangle_free()}) {
            if (p.closed_form == ClosedForm::None && N > kBruteForceCap) continue;
            auto f = verify_blowup_farness(wg, p, N);
            ++checks;
            bad += f.blowup < f.base;
            if (p.closed_form == ClosedForm::None) continue;
            for (int M = 2 * N; M <= 60; M += N)
              for (auto pol : {InternalPolicy::Empty, InternalPolicy::Clique}) {
                auto b = dn_blowup(wg, M, pol);
                ++large;
                bad += distance_to_property_closed_form(b.uniform(), p) < f.base;
              }
          }
        });
      }
    double t = seconds_since(t0);
    return {bad == 0 && t < 600, std::to_string(checks) + " lcm-size blowups and " + std::to_string(large) +
                                     " closed-form blowups up to N=60, " + std::to_string(bad) + " below the base distance, " + fmt(t) + "s"};
  });

  criterion(8, [&]() -> R {
    Stream s(8008);
    const std::int64_t trials = 100000;
    int ok_pairs = 0;
    double worst = 0;
    for (int k = 0; k < 20; ++k) {
      const int n = 2 + static_cast<int>(s.below(3));
      WeightedGraph wg(random_graph(n, s, 0.5), random_distribution(n, s, 3));
      auto b = dn_blowup(wg, static_cast<int>(least_blowup_size(wg.dist)));
      Graph hp = random_graph(b.N, s, 0.5);
      double want = to_double(expected_contraction_distance(b, hp));
      double sum = 0, sq = 0;
      for (std::int64_t t = 0; t < trials; ++t) {
        double x = to_double(edit_distance(random_contraction(b, hp, derive_seed(k, t)), wg.graph, wg.dist));
        sum += x;
        sq += x * x;
      }
      double mean = sum / trials, var = std::max(0.0, sq / trials - mean * mean);
      double se = std::sqrt(var / trials);
      double z = se == 0 ? (std::abs(mean - want) < 1e-12 ? 0 : INFINITY) : std::abs(mean - want) / se;
      worst = std::max(worst, z);
      ok_pairs += z <= 3;
    }
    return {ok_pairs == 20, std::to_string(ok_pairs) + "/20 pairs within 3 standard errors (worst " + fmt(worst) + " SE)"};
  });

  criterion(9, [&]() -> R {
    bool zero = true;
    for (int M = 3; M <= 12; ++M) zero = zero && sample_laws_identical(cycle_star_pair(M, false).first, cycle_star_pair(M, false).second);
    auto cs = cycle_star_pair(8, false);
    for (int q = 1; q <= 6; ++q) zero = zero && tv_distance_estimate(cs, q, 2000, 90 + q, 0).estimate == 0;
    auto dp = density_pair(120);
    const int q = 3;
    const std::int64_t trials = 100000;
    auto tv = tv_distance_estimate(dp, q, trials, 9);
    bool hist_ok = true;
    std::string bins;
    for (int side = 0; side < 2; ++side) {
      const auto& wg = side == 0 ? dp.first : dp.second;
      auto h = mark_histogram(wg, side == 0 ? *dp.first_mark : *dp.second_mark, q, trials, 19 + side);
      bins += side == 0 ? " first [" : " second [";
      for (int k = 0; k <= q; ++k) {
        double p = std::tgamma(q + 1) / (std::tgamma(k + 1) * std::tgamma(q - k + 1)) / std::pow(2.0, q);
        double sigma = std::sqrt(trials * p * (1 - p));
        double dev = (h[k] - trials * p) / sigma;
        hist_ok = hist_ok && std::abs(dev) <= 3;
        bins += (k ? " " : "") + fmt(static_cast<double>(h[k]) / trials) + "(" + fmt(dev) + "σ)";
      }
      bins += "]";
    }
    bool ok = zero && tv.estimate <= 0.05 && hist_ok;
    return {ok, std::string("cycle-star TV zero: ") + (zero ? "yes" : "no") + "; density TV " + fmt(tv.estimate) + " [" + fmt(tv.lo) +
                    ", " + fmt(tv.hi) + "]; clique histogram within 3σ: " + (hist_ok ? "yes" : "no") + bins};
  });

  criterion(10, [&]() -> R {
    std::int64_t pairs = 0, mismatches = 0;
    for (int k = 0; k <= 3; ++k)
      for (const auto& scheme : schemes_on(k))
        for (int n = 0; n <= 5; ++n)
          for (const auto& f : graphs_on(n)) {
            ++pairs;
            mismatches += embeds(f, scheme).has_value() != brute_embeds(f, scheme);
          }
    int psi = psi_F({graphs::K(3)}, 1);
    return {mismatches == 0 && psi == 3, std::to_string(pairs) + " (F, K) pairs, " + std::to_string(mismatches) +
                                             " mismatches; psi_F({K3}, 1) = " + std::to_string(psi)};
  });

  criterion(11, [&]() -> R {
    auto values = farey(8, false);
    std::int64_t cases = 0, light = 0;
    for (int a = 1; a <= 3; ++a) {
      std::vector<Rational> allowed;
      for (const auto& v : values)
        if (v * 2 * a <= 1) allowed.push_back(v);
      for (int n = 1; n <= 8; ++n) {
        std::vector<Rational> cur;
        compositions(allowed, n, cur, Rational(1), [&](const std::vector<Rational>& w) {
          VertexDistribution d(w);
          auto p = balanced_partition(VertexSet::range(n), d, a);
          ++cases;
          for (const auto& part : p) light += d.mass(part) * 2 * a < 1;
          light += static_cast<int>(p.size()) != a;
        });
      }
    }
    return {light == 0 && cases > 0, std::to_string(cases) + " (D, a) cases, " + std::to_string(light) + " light parts"};
  });

  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
