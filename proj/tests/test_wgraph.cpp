#include "support.hpp"

using namespace vdflab;

TEST(Rational, ParsesFractionsAndIntegers) {
  EXPECT_EQ(parse_rational("3/6"), Rational(1, 2));
  EXPECT_EQ(parse_rational("2"), Rational(2));
  EXPECT_THROW(parse_rational("1/0"), InputError);
  EXPECT_THROW(parse_rational("x"), InputError);
  EXPECT_EQ(to_string(Rational(2, 4)), "1/2");
}

TEST(VertexSet, SetAlgebraAcrossBothWords) {
  VertexSet a = VertexSet::of({1, 70, 127});
  VertexSet b = VertexSet::of({70, 3});
  EXPECT_EQ(a.size(), 3);
  EXPECT_EQ((a & b).members(), std::vector<int>({70}));
  EXPECT_EQ((a | b).size(), 4);
  EXPECT_EQ(a.minus(b).members(), std::vector<int>({1, 127}));
  EXPECT_EQ(a.lowest(), 1);
  EXPECT_EQ(a.highest(), 127);
  EXPECT_EQ(VertexSet::range(100).size(), 100);
}

TEST(VertexDistribution, RejectsBadWeights) {
  EXPECT_THROW(VertexDistribution({Rational(1, 2), Rational(1, 3)}), InputError);
  EXPECT_THROW(VertexDistribution({Rational(3, 2), Rational(-1, 2)}), InputError);
  VertexDistribution d({Rational(1, 6), Rational(1, 3), Rational(1, 2)});
  EXPECT_EQ(d.scale(), 6);
  EXPECT_EQ(d.unit(2), 3);
}

TEST(WeightedGraph, PairDensityMatchesDefinition) {
  // path 0-1-2 with weights 1/2,1/4,1/4
  WeightedGraph wg(Graph::path(3), VertexDistribution({Rational(1, 2), Rational(1, 4), Rational(1, 4)}));
  EXPECT_EQ(pair_density(wg, VertexSet::of({0}), VertexSet::of({1, 2})), Rational(1, 2));
  EXPECT_EQ(pair_density(wg, VertexSet::of({1}), VertexSet::of({0, 2})), Rational(1));
  EXPECT_EQ(total_edge_weight(wg), Rational(1, 8) + Rational(1, 16));
  EXPECT_THROW(pair_density(wg, VertexSet::of({0}), VertexSet::of({0, 1})), InputError);
}

TEST(WeightedGraph, ConditioningRenormalizes) {
  VertexDistribution d({Rational(1, 2), Rational(1, 4), Rational(1, 4)});
  auto c = conditioned(d, VertexSet::of({1, 2}));
  EXPECT_EQ(c[0], Rational(1, 2));
  VertexDistribution z({Rational(1), Rational(0)});
  EXPECT_THROW(conditioned(z, VertexSet::of({1})), ZeroMassError);
}

TEST(Io, WgraphRoundTrip) {
  Stream s(4);
  for (int k = 0; k < 20; ++k) {
    auto wg = oracle::random_wgraph(1 + k % 9, s, 0.4, true);
    EXPECT_EQ(parse_wgraph(format_wgraph(wg)), wg);
  }
}

TEST(Io, WgraphErrors) {
  EXPECT_THROW(parse_wgraph("n 2\nweights 1/2 1/2\ne 0 0\n"), InputError);
  EXPECT_THROW(parse_wgraph("n 2\nweights 1/2 1/2\ne 0 1\ne 1 0\n"), InputError);
  EXPECT_THROW(parse_wgraph("n 2\ne 0 1\n"), InputError);
  EXPECT_EQ(parse_wgraph("n 2\ne 0 1\n", true).dist[1], Rational(1, 2));
  EXPECT_THROW(parse_wgraph("n 2\nweights 1/2 1/3\n"), InputError);
}

TEST(Io, PartitionRoundTrip) {
  Partition p = {VertexSet::of({3, 4}), VertexSet::of({0, 2}), VertexSet::of({1})};
  auto back = parse_partition(format_partition(p));
  EXPECT_EQ(back, normalized(p));
  EXPECT_THROW(parse_partition("0 1\n1 2\n"), InputError);
}
