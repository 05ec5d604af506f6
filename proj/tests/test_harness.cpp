#include "support.hpp"

#include <cstdlib>
#include <filesystem>

using namespace vdflab;

TEST(Wilson, KnownValues) {
  auto ci = wilson_interval(50, 100);
  EXPECT_NEAR(ci.lo, 0.4038, 1e-4);
  EXPECT_NEAR(ci.hi, 0.5962, 1e-4);
  EXPECT_EQ(wilson_interval(0, 10).lo, 0.0);
  EXPECT_EQ(wilson_interval(10, 10).hi, 1.0);
  EXPECT_THROW(wilson_interval(1, 0), InputError);
  EXPECT_THROW(wilson_interval(3, 2), InputError);
}

TEST(Estimate, FairCoin) {
  auto est = estimate_probability([](std::uint64_t s) { return Stream(s).coin(0.5); }, 100000, 11);
  EXPECT_GT(est.estimate, 0.49);
  EXPECT_LT(est.estimate, 0.51);
  EXPECT_LE(est.ci.lo, est.estimate);
  EXPECT_GE(est.ci.hi, est.estimate);
}

TEST(Estimate, TriangleRejectionNearExactLaw) {
  auto wg = WeightedGraph::uniform(Graph::complete(3));
  auto est = estimate_probability([&](std::uint64_t s) { return !vdf_tester(wg, triangle_free(), 3, s).accepted(); }, 20000, 12);
  EXPECT_NEAR(est.estimate, 2.0 / 9, 0.015);
}

namespace {
ExperimentConfig small_config() {
  ExperimentConfig c;
  c.input = "complete:3";
  c.property = "triangle-free";
  c.tester.s = 3;
  c.trials = 500;
  c.seed = 42;
  return c;
}
}  // namespace

TEST(Experiment, ReportsAreReproducible) {
  auto a = run_experiment(small_config()), b = run_experiment(small_config());
  EXPECT_EQ(a, b);
  EXPECT_EQ(report_json(a).dump(), report_json(b).dump());
  EXPECT_EQ(a.distance, std::optional<std::string>("1/9"));
  EXPECT_EQ(a.accept + a.reject, 500);
}

TEST(Experiment, JsonAndCsvRoundTrip) {
  auto r = run_experiment(small_config());
  EXPECT_EQ(report_from_json(report_json(r)), r);
  ExperimentReport u = r;
  u.input = "odd,\"name\"";
  u.distance.reset();
  auto back = reports_from_csv(reports_csv({r, u}));
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0], r);
  EXPECT_EQ(back[1], u);
  EXPECT_THROW(reports_from_csv("bad header\n"), InputError);
}

TEST(Experiment, ConfigFileAndSeedOverride) {
  auto path = (std::filesystem::temp_directory_path() / "vdflab_cfg_test.json").string();
  write_file(path, config_json(small_config()).dump(2));
  unsetenv("VDFLAB_SEED");
  EXPECT_EQ(load_config(path).seed, 42u);
  setenv("VDFLAB_SEED", "7", 1);
  EXPECT_EQ(load_config(path).seed, 7u);
  setenv("VDFLAB_SEED", "x", 1);
  EXPECT_THROW(load_config(path), InputError);
  unsetenv("VDFLAB_SEED");
  write_file(path, "{ not json");
  EXPECT_THROW(load_config(path), InputError);
  std::filesystem::remove(path);
}

TEST(Experiment, SweepFindsMinimalSampleSize) {
  auto c = small_config();
  c.input = "complete:4";
  c.trials = 2000;
  c.sweep = SweepSpec{"s", 1, 10, 1};
  auto r = sweep(c);
  ASSERT_TRUE(r.minimal.has_value());
  EXPECT_EQ(r.reports.back().s, *r.minimal);
  for (std::size_t i = 0; i + 1 < r.reports.size(); ++i) EXPECT_LT(r.reports[i].ci.lo * 3, 2);
  EXPECT_THROW(sweep(small_config()), InputError);
}

TEST(Inputs, GeneratorSpecs) {
  EXPECT_EQ(load_input("complete:5").graph, Graph::complete(5));
  EXPECT_EQ(load_input("cycle:6").graph, Graph::cycle(6));
  EXPECT_EQ(load_input("blowup:complete:3:6").n(), 6);
  EXPECT_EQ(load_input("gallery:cycle-star:5:second").n(), 6);
  EXPECT_EQ(load_input("gnp:10:1/2:3").graph, load_input("gnp:10:1/2:3").graph);
  EXPECT_THROW(load_input("nonsense:3"), InputError);
  EXPECT_THROW(load_input("complete:x"), InputError);
}

TEST(Suites, AllPass) {
  for (const auto& name : suite_names()) EXPECT_TRUE(verify_suite(name).pass()) << name;
  EXPECT_THROW(verify_suite("nope"), InputError);
}
