#pragma once

#include "property.hpp"
#include "random.hpp"

#include <cmath>
#include <map>

namespace vdflab {

enum class Decision { Accept, Reject };
enum class Variant { VDF, Standard, LargeInputs, SizeAware, NLW, NHW, Trivial };

inline std::string variant_name(Variant v) {
  switch (v) {
    case Variant::VDF: return "vdf";
    case Variant::Standard: return "standard";
    case Variant::LargeInputs: return "large-inputs";
    case Variant::SizeAware: return "size-aware";
    case Variant::NLW: return "nlw";
    case Variant::NHW: return "nhw";
    case Variant::Trivial: return "trivial";
  }
  return "?";
}

inline Variant variant_from_name(const std::string& s) {
  for (Variant v : {Variant::VDF, Variant::Standard, Variant::LargeInputs, Variant::SizeAware, Variant::NLW,
                    Variant::NHW, Variant::Trivial})
    if (variant_name(v) == s) return v;
  throw InputError("unknown tester variant '" + s + "'");
}

struct TesterOutcome {
  Decision decision = Decision::Accept;
  std::vector<int> sample;          // draws in order, with multiplicity
  std::optional<Graph> evidence;    // G[U] when rejecting
  std::vector<int> evidence_labels; // U, ascending
  bool accepted() const { return decision == Decision::Accept; }
};

namespace detail {

inline VertexSet distinct(const std::vector<int>& sample) {
  VertexSet u;
  for (int v : sample) u.insert(v);
  return u;
}

inline TesterOutcome decide(const Graph& g, std::vector<int> sample, const std::function<bool(const Graph&, const VertexSet&)>& accept) {
  TesterOutcome out;
  VertexSet u = distinct(sample);
  out.sample = std::move(sample);
  if (!accept(g, u)) {
    out.decision = Decision::Reject;
    out.evidence_labels = u.members();
    out.evidence = g.induced(u);
  }
  return out;
}

inline TesterOutcome membership_on_sample(const WeightedGraph& wg, const Property& p, const VertexDistribution& d, int s,
                                          std::uint64_t seed) {
  return decide(wg.graph, sample_vertices(d, s, seed), [&](const Graph& g, const VertexSet& u) { return p(g.induced(u)); });
}

}  // namespace detail

inline TesterOutcome vdf_tester(const WeightedGraph& wg, const Property& p, int s, std::uint64_t seed) {
  return detail::membership_on_sample(wg, p, wg.dist, s, seed);
}

// Standard dense model: the same tester, sampling uniformly regardless of D.
inline TesterOutcome standard_tester(const WeightedGraph& wg, const Property& p, int s, std::uint64_t seed) {
  return detail::membership_on_sample(wg, p, VertexDistribution::uniform(wg.n()), s, seed);
}

// `core` is hereditary_core(P); pass it in so its memo survives across runs.
inline TesterOutcome large_inputs_tester(const WeightedGraph& wg, const Property& core, int s, std::uint64_t seed) {
  return vdf_tester(wg, core, s, seed);
}

inline std::int64_t size_aware_sample_size(int M, const Rational& eps) {
  if (M < 1) throw InputError("size-aware tester needs M >= 1");
  if (eps <= 0 || eps >= 1) throw InputError("size-aware tester needs eps in (0,1)");
  return static_cast<std::int64_t>(std::ceil(M * std::log(3.0 * M) / to_double(eps)));
}

// n >= M: large-inputs branch with sample s_large. n < M: t = ceil(M ln(3M)/eps) draws,
// accept iff some n-vertex member of P contains G[U] induced.
inline TesterOutcome size_aware_tester(const WeightedGraph& wg, const Property& p, const Property& core, int n,
                                       const Rational& eps, int M, int s_large, std::uint64_t seed) {
  if (n != wg.n()) throw InputError("size-aware tester: declared n differs from |V(G)|");
  if (n >= M) return large_inputs_tester(wg, core, s_large, seed);
  auto t = size_aware_sample_size(M, eps);
  if (t > 100000000) throw ResourceError("size-aware sample size above 1e8");
  return detail::decide(wg.graph, sample_vertices(wg.dist, static_cast<int>(t), seed), [&](const Graph& g, const VertexSet& u) {
    if (u == g.vertices()) return p(g);
    return exists_extension(p, g.induced(u), n);
  });
}

inline TesterOutcome nlw_tester(const WeightedGraph& wg, const Property& p, const Rational& eps, const Rational& delta,
                                int t, std::uint64_t seed) {
  if (eps <= 0 || eps >= 1 || delta <= 0 || delta >= 1) throw InputError("nlw tester needs eps, delta in (0,1)");
  for (int v = 0; v < wg.n(); ++v)
    if (wg.dist[v] * wg.n() < delta)
      throw PreconditionError("vertex " + std::to_string(v) + " weighs below delta/n");
  return vdf_tester(wg, p, t, seed);
}

inline TesterOutcome nhw_tester(const WeightedGraph& wg, const Property& p, const Rational& eps, int q, std::uint64_t seed) {
  if (eps <= 0 || eps >= 1) throw InputError("nhw tester needs eps in (0,1)");
  if (q < 1) throw InputError("nhw tester needs q >= 1");
  Rational cap(1, 3 * std::int64_t(q) * q);
  for (int v = 0; v < wg.n(); ++v)
    if (wg.dist[v] > cap) throw PreconditionError("vertex " + std::to_string(v) + " weighs above 1/(3q^2)");
  return vdf_tester(wg, p, q, seed);
}

inline std::int64_t trivial_nlw_sample_size(int M, const Rational& delta) {
  return static_cast<std::int64_t>(std::ceil(2.0 * M * std::log(3.0 * M) / to_double(delta)));
}

// Testers for properties every large graph satisfies (connectivity, hamiltonicity).
inline TesterOutcome trivial_property_tester(const WeightedGraph& wg, const Property& p, Variant branch, int M,
                                             const Rational& delta, std::uint64_t seed) {
  if (M < 1) throw InputError("trivial tester needs M >= 1");
  const int n = wg.n();
  auto small_check = [&](const Graph& g, const VertexSet& u) {
    if (u == g.vertices()) return p(g);
    return exists_extension(p, g.induced(u), n);
  };
  switch (branch) {
    case Variant::LargeInputs:
      return {};
    case Variant::NLW: {
      if (delta <= 0 || delta >= 1) throw InputError("trivial tester needs delta in (0,1)");
      auto t = trivial_nlw_sample_size(M, delta);
      return detail::decide(wg.graph, sample_vertices(wg.dist, static_cast<int>(t), seed),
                            [&](const Graph& g, const VertexSet& u) { return u.size() >= M || small_check(g, u); });
    }
    case Variant::SizeAware: {
      if (n >= M) return {};
      auto t = size_aware_sample_size(M, Rational(1, 2));
      return detail::decide(wg.graph, sample_vertices(wg.dist, static_cast<int>(t), seed), small_check);
    }
    default:
      throw InputError("trivial tester branches are large-inputs, nlw and size-aware");
  }
}

// ---- configured dispatch ----

struct TesterConfig {
  Variant variant = Variant::VDF;
  int s = 1;                        // sample size (t for NLW, q for NHW, large-input sample for SizeAware)
  Rational eps = Rational(1, 4);
  Rational delta = Rational(1, 2);
  int M = 1;
  int r_max = kDefaultEnumerationCap;  // depth of the core certification
  Variant trivial_branch = Variant::NLW;
};

inline void validate(const TesterConfig& c) {
  if (c.s < 1) throw InputError("sample size must be >= 1");
  if (c.eps <= 0 || c.eps >= 1) throw InputError("eps must lie in (0,1)");
  if (c.delta <= 0 || c.delta >= 1) throw InputError("delta must lie in (0,1)");
  if (c.M < 1) throw InputError("M must be >= 1");
}

// Holds the property and (lazily) its core so repeated runs share the memo.
class Tester {
 public:
  Tester(Property p, TesterConfig cfg) : p_(std::move(p)), cfg_(std::move(cfg)) { validate(cfg_); }
  const TesterConfig& config() const { return cfg_; }
  const Property& property() const { return p_; }

  TesterOutcome run(const WeightedGraph& wg, std::uint64_t seed) const {
    switch (cfg_.variant) {
      case Variant::VDF: return vdf_tester(wg, p_, cfg_.s, seed);
      case Variant::Standard: return standard_tester(wg, p_, cfg_.s, seed);
      case Variant::LargeInputs: return large_inputs_tester(wg, core(), cfg_.s, seed);
      case Variant::SizeAware: return size_aware_tester(wg, p_, core(), wg.n(), cfg_.eps, cfg_.M, cfg_.s, seed);
      case Variant::NLW: return nlw_tester(wg, p_, cfg_.eps, cfg_.delta, cfg_.s, seed);
      case Variant::NHW: return nhw_tester(wg, p_, cfg_.eps, cfg_.s, seed);
      case Variant::Trivial: return trivial_property_tester(wg, p_, cfg_.trivial_branch, cfg_.M, cfg_.delta, seed);
    }
    throw InputError("unknown variant");
  }

 private:
  const Property& core() const {
    std::call_once(state_->flag, [&] { state_->core = hereditary_core(p_, cfg_.r_max); });
    return *state_->core;
  }
  struct CoreState {
    std::once_flag flag;
    std::optional<Property> core;
  };
  Property p_;
  TesterConfig cfg_;
  std::shared_ptr<CoreState> state_ = std::make_shared<CoreState>();
};

// ---- exact laws ----

// Law of the distinct sample set after s draws from d (exact, 2^n states).
inline std::map<VertexSet, Rational> distinct_set_law(const VertexDistribution& d, int s) {
  if (d.size() > 20) throw ResourceError("exact sample law capped at 20 vertices");
  if (s < 0) throw InputError("sample size must be >= 0");
  std::map<VertexSet, Rational> law;
  law[VertexSet{}] = 1;
  for (int k = 0; k < s; ++k) {
    std::map<VertexSet, Rational> next;
    for (const auto& [u, pr] : law)
      for (int v = 0; v < d.size(); ++v)
        if (d[v] != 0) {
          VertexSet w = u;
          w.insert(v);
          next[w] += pr * d[v];
        }
    law = std::move(next);
  }
  return law;
}

// Exact rejection probability of the accept-iff-G[U]-in-P tester with s draws.
inline Rational rejection_probability(const WeightedGraph& wg, const Property& p, int s) {
  Rational r = 0;
  for (const auto& [u, pr] : distinct_set_law(wg.dist, s))
    if (!p(wg.graph.induced(u))) r += pr;
  return r;
}

}  // namespace vdflab
