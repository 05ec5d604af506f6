#include "support.hpp"

using namespace vdflab;

TEST(Sampling, PointMassAndZeroWeights) {
  VertexDistribution point({Rational(0), Rational(1), Rational(0)});
  for (int v : sample_vertices(point, 50, 3)) EXPECT_EQ(v, 1);
  VertexDistribution d({Rational(1, 2), Rational(0), Rational(1, 2)});
  for (int v : sample_vertices(d, 1000, 4)) EXPECT_NE(v, 1);
}

TEST(Sampling, UniformFrequency) {
  auto draws = sample_vertices(VertexDistribution::uniform(2), 100000, 5);
  double zeros = static_cast<double>(std::count(draws.begin(), draws.end(), 0)) / draws.size();
  EXPECT_NEAR(zeros, 0.5, 0.01);
}

TEST(Sampling, Reproducible) { EXPECT_EQ(sample_vertices(VertexDistribution::uniform(7), 30, 9), sample_vertices(VertexDistribution::uniform(7), 30, 9)); }

TEST(VdfTester, ExactLawOnTriangleByEnumeration) {
  // 27 equally likely sequences; reject iff all three vertices are distinct
  int reject = 0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) reject += (a != b && b != c && a != c);
  EXPECT_EQ(Rational(reject, 27), Rational(2, 9));
  EXPECT_EQ(rejection_probability(WeightedGraph::uniform(Graph::complete(3)), triangle_free(), 3), Rational(2, 9));
}

TEST(VdfTester, RejectCarriesEvidence) {
  auto wg = WeightedGraph::uniform(Graph::complete(3));
  for (std::uint64_t s = 0; s < 200; ++s) {
    auto out = vdf_tester(wg, triangle_free(), 3, s);
    if (out.accepted()) continue;
    ASSERT_TRUE(out.evidence.has_value());
    EXPECT_FALSE(triangle_free()(*out.evidence));
  }
}

TEST(VdfTester, Determinism) {
  auto wg = WeightedGraph::uniform(Graph::complete(5));
  auto a = vdf_tester(wg, triangle_free(), 4, 77), b = vdf_tester(wg, triangle_free(), 4, 77);
  EXPECT_EQ(a.sample, b.sample);
  EXPECT_EQ(a.decision, b.decision);
}

TEST(VdfTester, RejectionMonotoneInSampleSize) {
  for (int n = 1; n <= 4; ++n)
    for (const auto& g : graphs_on(n)) {
      Stream s(static_cast<std::uint64_t>(canonical_code(g)));
      WeightedGraph wg(g, oracle::random_distribution(n, s));
      for (const auto& p : {triangle_free(), k_colorable(2), ab_free()}) {
        Rational prev = 0;
        for (int k = 1; k <= 4; ++k) {
          Rational r = rejection_probability(wg, p, k);
          EXPECT_GE(r, prev);
          prev = r;
        }
      }
    }
}

TEST(Testers, CompletenessOnMembers) {
  Stream s(71);
  std::vector<Property> props = {triangle_free(), k_colorable(2), edge_free(), complete(), ab_free()};
  for (const auto& p : props)
    for (int k = 0; k < 20; ++k) {
      Graph g;
      do {
        g = oracle::random_graph(3 + static_cast<int>(s.below(6)), s, 0.3);
        if (p.name == "complete") g = Graph::complete(g.n());
      } while (!p(g));
      auto wg = WeightedGraph::uniform(g);
      for (Variant v : {Variant::VDF, Variant::Standard, Variant::LargeInputs, Variant::SizeAware, Variant::NLW, Variant::NHW}) {
        TesterConfig c;
        c.variant = v;
        c.s = v == Variant::NHW ? 1 : 4;
        c.M = 20;
        c.r_max = 6;
        Tester t(p, c);
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
          if (v == Variant::LargeInputs && !hereditary_core(p, 6)(g)) continue;
          EXPECT_TRUE(t.run(wg, seed).accepted()) << p.name << " " << variant_name(v);
        }
      }
    }
}

TEST(Testers, LargeInputsUsesCore) {
  // C_4 is cycle-star-free but cannot be extended, so the core rejects it once fully sampled
  Property core = hereditary_core(cycle_star_free(), 6);
  auto wg = WeightedGraph::uniform(Graph::cycle(4));
  bool rejected = false;
  for (std::uint64_t s = 0; s < 50 && !rejected; ++s) rejected = !large_inputs_tester(wg, core, 30, s).accepted();
  EXPECT_TRUE(rejected);
  auto c8 = WeightedGraph::uniform(Graph::cycle(8));
  for (std::uint64_t s = 0; s < 50; ++s) EXPECT_TRUE(large_inputs_tester(c8, core, 6, s).accepted());
}

TEST(Testers, SizeAwareDispatchAndRejection) {
  auto pair = non_extendable_pair(ab_free(), graphs::C(5), VertexSet{});
  Property core = hereditary_core(ab_free(), 6);
  int rejects = 0;
  for (std::uint64_t s = 0; s < 300; ++s)
    rejects += !size_aware_tester(pair.second, ab_free(), core, 6, Rational(1, 25), 10, 5, s).accepted();
  EXPECT_GE(rejects * 3, 300 * 2);
  EXPECT_THROW(size_aware_tester(pair.second, ab_free(), core, 5, Rational(1, 25), 10, 5, 0), InputError);
}

TEST(Testers, WeightPreconditions) {
  WeightedGraph skew(Graph::complete(3), VertexDistribution({Rational(1, 100), Rational(49, 100), Rational(1, 2)}));
  EXPECT_THROW(nlw_tester(skew, triangle_free(), Rational(1, 4), Rational(1, 2), 5, 0), PreconditionError);
  EXPECT_THROW(nhw_tester(skew, triangle_free(), Rational(1, 4), 2, 0), PreconditionError);
  auto big = WeightedGraph::uniform(Graph(60));
  EXPECT_TRUE(nhw_tester(big, triangle_free(), Rational(1, 4), 4, 0).accepted());
}

TEST(Testers, NlwCollectsSmallGraphs) {
  auto wg = WeightedGraph::uniform(Graph::complete(3));
  for (std::uint64_t s = 0; s < 100; ++s) {
    auto out = nlw_tester(wg, triangle_free(), Rational(1, 4), Rational(1, 2), 60, s);
    EXPECT_FALSE(out.accepted());
  }
}

TEST(Testers, NhwOnFourPartiteBlowup) {
  // K_{15,15,15,15}: the weight cap allows q <= 4, and four draws see three parts with probability 21/32
  auto wg = dn_blowup(WeightedGraph::uniform(Graph::complete(4)), 60).uniform();
  EXPECT_THROW(nhw_tester(wg, triangle_free(), Rational(1, 8), 5, 0), PreconditionError);
  int rejects = 0;
  const int trials = 8000;
  for (std::uint64_t s = 0; s < trials; ++s) rejects += !nhw_tester(wg, triangle_free(), Rational(1, 8), 4, s).accepted();
  EXPECT_NEAR(static_cast<double>(rejects) / trials, 21.0 / 32, 0.02);
}

TEST(Testers, TrivialPropertyBranches) {
  auto disconnected = WeightedGraph::uniform(Graph::from_edges(4, {{0, 1}, {2, 3}}));
  EXPECT_TRUE(trivial_property_tester(disconnected, connected(), Variant::LargeInputs, 3, Rational(1, 2), 0).accepted());
  EXPECT_FALSE(trivial_property_tester(disconnected, connected(), Variant::NLW, 10, Rational(1, 2), 0).accepted());
  EXPECT_TRUE(trivial_property_tester(WeightedGraph::uniform(Graph::cycle(5)), hamiltonian(), Variant::NLW, 10, Rational(1, 2), 0).accepted());
  EXPECT_TRUE(trivial_property_tester(disconnected, connected(), Variant::SizeAware, 4, Rational(1, 2), 0).accepted());
}
