#include "support.hpp"

using namespace vdflab;

TEST(Property, NamedMembership) {
  EXPECT_FALSE(triangle_free()(Graph::complete(3)));
  EXPECT_TRUE(triangle_free()(Graph::cycle(5)));
  EXPECT_TRUE(k_colorable(2)(Graph::cycle(6)));
  EXPECT_FALSE(k_colorable(2)(Graph::cycle(5)));
  EXPECT_TRUE(ab_free()(Graph::cycle(5)));
  EXPECT_FALSE(ab_free()(graphs::A()));
  EXPECT_FALSE(ab_free()(graphs::B()));
  EXPECT_TRUE(cycle_star_free()(Graph::cycle(5)));
  EXPECT_FALSE(cycle_star_free()(graphs::cycle_star(5)));
  EXPECT_TRUE(hamiltonian()(Graph::cycle(5)));
  EXPECT_FALSE(hamiltonian()(Graph::path(5)));
  EXPECT_FALSE(connected()(Graph(2)));
}

TEST(Property, CycleStarMatchesForestOracle) {
  // G has a cycle missing some vertex iff some G - v has a cycle
  for (int n = 0; n <= 7; ++n)
    for (const auto& g : graphs_on(n)) {
      bool oracle = true;
      for (int v = 0; v < n; ++v) oracle = oracle && g.without_vertex(v).is_forest();
      EXPECT_EQ(cycle_star_free()(g), oracle);
    }
}

TEST(Property, IsomorphismClassCounts) {
  const int expected[] = {1, 1, 2, 4, 11, 34, 156, 1044, 12346};
  for (int n = 0; n <= 8; ++n) EXPECT_EQ(static_cast<int>(graphs_on(n).size()), expected[n]) << n;
}

TEST(Property, CanonicalFormIsLabelInvariant) {
  Stream s(11);
  for (int k = 0; k < 200; ++k) {
    int n = 1 + static_cast<int>(s.below(9));
    Graph g = oracle::random_graph(n, s);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), s);
    EXPECT_EQ(canonical_code(g), canonical_code(g.induced(perm)));
  }
}

TEST(Property, ExtendabilityOfAbFreeAtC5) {
  EXPECT_FALSE(is_extendable_at(ab_free(), graphs::C(5)));
  EXPECT_TRUE(is_extendable_at(triangle_free(), graphs::C(5)));
  EXPECT_THROW(is_extendable_at(triangle_free(), graphs::K(3)), PreconditionError);
}

TEST(Property, BadnessAndCore) {
  auto rec = badness(ab_free(), graphs::C(5), 7);
  ASSERT_TRUE(rec.r.has_value());
  EXPECT_EQ(*rec.r, 6);
  EXPECT_EQ(R_bound(cycle_star_free(), 4, 8), 5);
  Property core = hereditary_core(cycle_star_free(), 8);
  EXPECT_FALSE(core(Graph::cycle(4)));
  EXPECT_TRUE(core(Graph::cycle(8)));
  EXPECT_TRUE(core(Graph::path(5)));
}

TEST(Property, ExistsExtensionAgreesWithLayers) {
  for (int n = 0; n <= 4; ++n)
    for (const auto& g : graphs_on(n)) {
      if (!ab_free()(g)) continue;
      for (int r = n; r <= 7; ++r) {
        auto layers = extension_layers(ab_free(), g, r);
        bool via_layers = static_cast<int>(layers.size()) == r - n + 1 && !layers.back().empty();
        EXPECT_EQ(exists_extension(ab_free(), g, r), via_layers);
      }
    }
}

TEST(Property, MinimalForbiddenFamilies) {
  auto f = minimal_forbidden_family(triangle_free(), 5);
  ASSERT_EQ(f.size(), 1u);
  EXPECT_TRUE(isomorphic(f[0], graphs::K(3)));
  auto ab = minimal_forbidden_family(ab_free(), 5);
  EXPECT_EQ(ab.size(), 2u);
}

TEST(Property, BlowupClosure) {
  EXPECT_TRUE(closed_under_blowups(triangle_free(), 4, 2).holds);
  EXPECT_FALSE(closed_under_blowups(induced_free({graphs::C(4)}, "C4-free"), 3, 2).holds);
}

TEST(Property, Registry) {
  EXPECT_EQ(property_by_id("k-colorable:3").name, k_colorable(3).name);
  EXPECT_EQ(property_by_id("edge-density-le:1/4").density_bound, Rational(1, 4));
  EXPECT_THROW(property_by_id("no-such"), InputError);
}
