#pragma once

#include "blowup.hpp"
#include "distance.hpp"
#include "gallery.hpp"
#include "io.hpp"
#include "regularity.hpp"
#include "structure.hpp"
#include "tester.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>

namespace vdflab {

// ---- Monte Carlo estimation ----

constexpr double kWilsonZ = 1.959963984540054;

struct Interval {
  double lo = 0, hi = 1;
};

inline Interval wilson_interval(std::int64_t successes, std::int64_t trials, double z = kWilsonZ) {
  if (trials <= 0) throw InputError("wilson interval needs trials >= 1");
  if (successes < 0 || successes > trials) throw InputError("successes outside [0, trials]");
  const double n = static_cast<double>(trials), p = successes / n, z2 = z * z;
  const double centre = (p + z2 / (2 * n)) / (1 + z2 / n);
  const double half = z / (1 + z2 / n) * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n));
  Interval out{std::max(0.0, centre - half), std::min(1.0, centre + half)};
  if (successes == 0) out.lo = 0;
  if (successes == trials) out.hi = 1;
  return out;
}

struct ProbabilityEstimate {
  std::int64_t events = 0, trials = 0;
  double estimate = 0;
  Interval ci;
};

constexpr std::uint64_t kTesterStream = 1;  // module id for tester trials

// Trial k runs event(derive_seed(derive_seed(seed, kTesterStream), k)).
inline ProbabilityEstimate estimate_probability(const std::function<bool(std::uint64_t)>& event, std::int64_t trials,
                                                std::uint64_t seed) {
  if (trials < 1) throw InputError("trials must be >= 1");
  ProbabilityEstimate out;
  out.trials = trials;
  const std::uint64_t base = derive_seed(seed, kTesterStream);
  for (std::int64_t k = 0; k < trials; ++k)
    if (event(derive_seed(base, static_cast<std::uint64_t>(k)))) ++out.events;
  out.estimate = static_cast<double>(out.events) / trials;
  out.ci = wilson_interval(out.events, trials);
  return out;
}

// ---- experiment configuration ----

struct SweepSpec {
  std::string parameter = "s";
  int from = 1, to = 1, step = 1;
};

struct ExperimentConfig {
  std::string input;     // wgraph path or generator spec
  std::string property;  // registered property id
  TesterConfig tester;
  std::int64_t trials = 1000;
  std::uint64_t seed = 0;
  std::optional<SweepSpec> sweep;
  bool certify = true;  // run the distance oracle when it fits
};

inline TesterConfig tester_config_from_json(const nlohmann::json& j) {
  TesterConfig c;
  if (j.contains("variant")) c.variant = variant_from_name(j.at("variant").get<std::string>());
  if (j.contains("s")) c.s = j.at("s").get<int>();
  if (j.contains("eps")) c.eps = parse_rational(j.at("eps").get<std::string>());
  if (j.contains("delta")) c.delta = parse_rational(j.at("delta").get<std::string>());
  if (j.contains("M")) c.M = j.at("M").get<int>();
  if (j.contains("r_max")) c.r_max = j.at("r_max").get<int>();
  if (j.contains("trivial_branch")) c.trivial_branch = variant_from_name(j.at("trivial_branch").get<std::string>());
  validate(c);
  return c;
}

inline nlohmann::json tester_config_json(const TesterConfig& c) {
  return {{"variant", variant_name(c.variant)}, {"s", c.s}, {"eps", to_string(c.eps)}, {"delta", to_string(c.delta)},
          {"M", c.M}, {"r_max", c.r_max}, {"trivial_branch", variant_name(c.trivial_branch)}};
}

inline ExperimentConfig config_from_json(const nlohmann::json& j) {
  ExperimentConfig c;
  try {
    c.input = j.at("input").get<std::string>();
    c.property = j.at("property").get<std::string>();
    if (j.contains("tester")) c.tester = tester_config_from_json(j.at("tester"));
    if (j.contains("trials")) c.trials = j.at("trials").get<std::int64_t>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("certify")) c.certify = j.at("certify").get<bool>();
    if (j.contains("sweep")) {
      const auto& s = j.at("sweep");
      SweepSpec sw;
      if (s.contains("parameter")) sw.parameter = s.at("parameter").get<std::string>();
      sw.from = s.at("from").get<int>();
      sw.to = s.at("to").get<int>();
      if (s.contains("step")) sw.step = s.at("step").get<int>();
      if (sw.parameter != "s" && sw.parameter != "M") throw InputError("sweep parameter must be s or M");
      if (sw.step < 1 || sw.from < 1 || sw.to < sw.from) throw InputError("bad sweep range");
      c.sweep = sw;
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("config: ") + e.what());
  }
  if (c.trials < 1) throw InputError("trials must be >= 1");
  property_by_id(c.property);
  return c;
}

inline nlohmann::json config_json(const ExperimentConfig& c) {
  nlohmann::json j = {{"input", c.input}, {"property", c.property}, {"tester", tester_config_json(c.tester)},
                      {"trials", c.trials}, {"seed", c.seed}, {"certify", c.certify}};
  if (c.sweep) j["sweep"] = {{"parameter", c.sweep->parameter}, {"from", c.sweep->from}, {"to", c.sweep->to}, {"step", c.sweep->step}};
  return j;
}

// Reads a JSON config; VDFLAB_SEED, when set, replaces the seed.
inline ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
  ExperimentConfig c = config_from_json(j);
  if (const char* env = std::getenv("VDFLAB_SEED")) {
    try {
      c.seed = std::stoull(env);
    } catch (const std::exception&) {
      throw InputError("VDFLAB_SEED is not an unsigned integer");
    }
  }
  return c;
}

// ---- inputs: a wgraph file or a generator spec ----
//   complete:n  empty:n  cycle:n  path:n (n vertices)  gnp:n:p/q:seed
//   blowup:<base generator or file>:N          (uniform Empty blowup)
//   gallery:non-extendable-ab:(first|second)   gallery:cycle-star:M:(first|second)
//   gallery:density:n:(first|second)
inline WeightedGraph load_input(const std::string& spec) {
  if (std::filesystem::exists(spec)) return read_wgraph(spec, true);
  std::vector<std::string> parts;
  {
    std::istringstream in(spec);
    std::string tok;
    while (std::getline(in, tok, ':')) parts.push_back(tok);
  }
  if (parts.empty()) throw InputError("empty input spec");
  auto num = [&](std::size_t i) {
    if (i >= parts.size()) throw InputError("input spec '" + spec + "' is missing a field");
    try {
      return std::stoi(parts[i]);
    } catch (const std::exception&) {
      throw InputError("input spec '" + spec + "': '" + parts[i] + "' is not an integer");
    }
  };
  const std::string& kind = parts[0];
  if (kind == "complete") return WeightedGraph::uniform(Graph::complete(num(1)));
  if (kind == "empty") return WeightedGraph::uniform(Graph(num(1)));
  if (kind == "cycle") return WeightedGraph::uniform(Graph::cycle(num(1)));
  if (kind == "path") return WeightedGraph::uniform(Graph::path(num(1)));
  if (kind == "gnp") {
    int n = num(1);
    if (parts.size() < 4) throw InputError("gnp needs n:p:seed");
    Rational p = parse_rational(parts[2]);
    Stream s(std::stoull(parts[3]));
    Graph g(n);
    double pd = to_double(p);
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (s.coin(pd)) g.add_edge(a, b);
    return WeightedGraph::uniform(g);
  }
  if (kind == "blowup") {
    if (parts.size() < 3) throw InputError("blowup needs <base>:N");
    std::string base;
    for (std::size_t i = 1; i + 1 < parts.size(); ++i) base += (i > 1 ? ":" : "") + parts[i];
    return dn_blowup(load_input(base), num(parts.size() - 1)).uniform();
  }
  if (kind == "gallery") {
    if (parts.size() < 3) throw InputError("gallery spec needs a name and a side");
    const std::string& side = parts.back();
    if (side != "first" && side != "second") throw InputError("gallery side must be first or second");
    GalleryPair pair;
    if (parts[1] == "non-extendable-ab")
      pair = non_extendable_pair(ab_free(), graphs::C(5), VertexSet{});
    else if (parts[1] == "cycle-star")
      pair = cycle_star_pair(num(2), false);
    else if (parts[1] == "density")
      pair = density_pair(num(2));
    else
      throw InputError("unknown gallery construction '" + parts[1] + "'");
    return side == "first" ? pair.first : pair.second;
  }
  throw InputError("input '" + spec + "' is neither a file nor a generator spec");
}

// ---- reports ----

struct ExperimentReport {
  std::string input, property, variant;
  int s = 1, M = 1;
  std::int64_t trials = 0, accept = 0, reject = 0;
  double estimate = 0;  // rejection rate
  Interval ci;
  std::uint64_t seed = 0;
  std::optional<std::string> distance;  // exact farness when certified
  std::string method;
  double runtime_seconds = 0;  // not persisted
};

inline nlohmann::json report_json(const ExperimentReport& r) {
  nlohmann::json j = {{"input", r.input},   {"property", r.property}, {"variant", r.variant},     {"s", r.s},
                      {"M", r.M},           {"trials", r.trials},     {"accept", r.accept},       {"reject", r.reject},
                      {"estimate", r.estimate}, {"ci_lo", r.ci.lo},   {"ci_hi", r.ci.hi},         {"seed", r.seed},
                      {"method", r.method}};
  j["distance"] = r.distance ? nlohmann::json(*r.distance) : nlohmann::json(nullptr);
  return j;
}

inline ExperimentReport report_from_json(const nlohmann::json& j) {
  ExperimentReport r;
  try {
    r.input = j.at("input").get<std::string>();
    r.property = j.at("property").get<std::string>();
    r.variant = j.at("variant").get<std::string>();
    r.s = j.at("s").get<int>();
    r.M = j.at("M").get<int>();
    r.trials = j.at("trials").get<std::int64_t>();
    r.accept = j.at("accept").get<std::int64_t>();
    r.reject = j.at("reject").get<std::int64_t>();
    r.estimate = j.at("estimate").get<double>();
    r.ci = {j.at("ci_lo").get<double>(), j.at("ci_hi").get<double>()};
    r.seed = j.at("seed").get<std::uint64_t>();
    r.method = j.at("method").get<std::string>();
    if (!j.at("distance").is_null()) r.distance = j.at("distance").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("report: ") + e.what());
  }
  return r;
}

inline bool operator==(const ExperimentReport& a, const ExperimentReport& b) { return report_json(a) == report_json(b); }

namespace detail {

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

inline std::vector<std::string> csv_split(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

inline std::string fmt_double(double x) {
  std::ostringstream out;
  out.precision(17);
  out << x;
  return out.str();
}

}  // namespace detail

constexpr const char* kCsvHeader = "input,property,variant,s,M,trials,accept,reject,estimate,ci_lo,ci_hi,seed,distance,method";

inline std::string reports_csv(const std::vector<ExperimentReport>& rs) {
  std::ostringstream out;
  out << kCsvHeader << '\n';
  for (const auto& r : rs)
    out << detail::csv_field(r.input) << ',' << detail::csv_field(r.property) << ',' << r.variant << ',' << r.s << ','
        << r.M << ',' << r.trials << ',' << r.accept << ',' << r.reject << ',' << detail::fmt_double(r.estimate) << ','
        << detail::fmt_double(r.ci.lo) << ',' << detail::fmt_double(r.ci.hi) << ',' << r.seed << ','
        << (r.distance ? *r.distance : "") << ',' << detail::csv_field(r.method) << '\n';
  return out.str();
}

inline std::vector<ExperimentReport> reports_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw InputError("csv: unexpected header");
  std::vector<ExperimentReport> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto f = detail::csv_split(line);
    if (f.size() != 14) throw InputError("csv: expected 14 fields");
    ExperimentReport r;
    try {
      r.input = f[0];
      r.property = f[1];
      r.variant = f[2];
      r.s = std::stoi(f[3]);
      r.M = std::stoi(f[4]);
      r.trials = std::stoll(f[5]);
      r.accept = std::stoll(f[6]);
      r.reject = std::stoll(f[7]);
      r.estimate = std::stod(f[8]);
      r.ci = {std::stod(f[9]), std::stod(f[10])};
      r.seed = std::stoull(f[11]);
    } catch (const std::exception&) {
      throw InputError("csv: malformed number");
    }
    if (!f[12].empty()) r.distance = f[12];
    r.method = f[13];
    out.push_back(r);
  }
  return out;
}

// ---- running ----

inline ExperimentReport run_experiment(const ExperimentConfig& c) {
  auto start = std::chrono::steady_clock::now();
  WeightedGraph wg = load_input(c.input);
  Property p = property_by_id(c.property);
  Tester t(p, c.tester);
  ExperimentReport r;
  r.input = c.input;
  r.property = c.property;
  r.variant = variant_name(c.tester.variant);
  r.s = c.tester.s;
  r.M = c.tester.M;
  r.seed = c.seed;
  r.trials = c.trials;
  auto est = estimate_probability([&](std::uint64_t s) { return !t.run(wg, s).accepted(); }, c.trials, c.seed);
  r.reject = est.events;
  r.accept = c.trials - est.events;
  r.estimate = est.estimate;
  r.ci = est.ci;
  if (c.certify) {
    if (has_closed_form(p)) {
      r.distance = to_string(distance_to_property_closed_form(wg, p));
      r.method = "closed form";
    } else if (wg.n() <= kBruteForceCap) {
      r.distance = to_string(distance_to_property(wg, p).value);
      r.method = "branch-and-bound";
    } else {
      r.method = "uncertified (above oracle cap)";
    }
  } else {
    r.method = "not requested";
  }
  r.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

struct SweepResult {
  std::vector<ExperimentReport> reports;
  std::optional<int> minimal;  // least parameter value with lower CI of rejection >= 2/3
};

inline SweepResult sweep(const ExperimentConfig& c) {
  if (!c.sweep) throw InputError("config has no sweep section");
  SweepResult out;
  for (int v = c.sweep->from; v <= c.sweep->to; v += c.sweep->step) {
    ExperimentConfig k = c;
    (c.sweep->parameter == "s" ? k.tester.s : k.tester.M) = v;
    k.certify = c.certify && out.reports.empty();
    auto r = run_experiment(k);
    if (!k.certify && !out.reports.empty()) {
      r.distance = out.reports.front().distance;
      r.method = out.reports.front().method;
    }
    out.reports.push_back(r);
    if (!out.minimal && r.ci.lo * 3 >= 2) {
      out.minimal = v;
      break;
    }
  }
  return out;
}

// ---- verification suites ----

struct SuiteCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SuiteSummary {
  std::string name;
  std::vector<SuiteCheck> checks;
  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return !checks.empty();
  }
};

inline std::vector<std::string> suite_names() { return {"distance", "tester", "regularity", "structure", "blowup", "gallery"}; }

inline SuiteSummary verify_suite(const std::string& name) {
  SuiteSummary out;
  out.name = name;
  auto check = [&](const std::string& label, const std::function<std::pair<bool, std::string>()>& f) {
    try {
      auto [ok, detail] = f();
      out.checks.push_back({label, ok, detail});
    } catch (const std::exception& e) {
      out.checks.push_back({label, false, std::string("threw: ") + e.what()});
    }
  };
  auto eq = [](const Rational& got, const Rational& want) { return std::make_pair(got == want, to_string(got) + " (want " + to_string(want) + ")"); };
  if (name == "distance") {
    check("K3 to triangle-free, uniform", [&] { return eq(distance_to_property(WeightedGraph::uniform(Graph::complete(3)), triangle_free()).value, Rational(1, 9)); });
    check("K4 to triangle-free, uniform", [&] { return eq(distance_to_property(WeightedGraph::uniform(Graph::complete(4)), triangle_free()).value, Rational(1, 8)); });
    check("closed form agrees with search on K4 to edge-free", [&] {
      auto wg = WeightedGraph::uniform(Graph::complete(4));
      return eq(distance_to_property_closed_form(wg, edge_free()), distance_to_property(wg, edge_free()).value);
    });
  } else if (name == "tester") {
    check("exact rejection law K3, s = 3", [&] { return eq(rejection_probability(WeightedGraph::uniform(Graph::complete(3)), triangle_free(), 3), Rational(2, 9)); });
    check("members always accepted", [&] {
      Tester t(triangle_free(), TesterConfig{Variant::VDF, 5});
      auto wg = WeightedGraph::uniform(Graph::cycle(5));
      for (std::uint64_t s = 0; s < 1000; ++s)
        if (!t.run(wg, s).accepted()) return std::make_pair(false, std::string("rejected a member"));
      return std::make_pair(true, std::string("1000/1000 accepted"));
    });
  } else if (name == "regularity") {
    check("counting recurrence at h = 3, eta = 1/2", [&] { return eq(delta_counting(3, Rational(1, 2)), Rational(1, 128)); });
    check("counting recurrence at h = 2", [&] { return eq(delta_counting(2, Rational(1, 3)), Rational(1, 3)); });
    check("balanced partition masses", [&] {
      VertexDistribution d({Rational(1, 4), Rational(1, 4), Rational(1, 4), Rational(1, 8), Rational(1, 8)});
      auto p = balanced_partition(VertexSet(0x1F, 0), d, 2);
      for (const auto& part : p)
        if (d.mass(part) * 4 < 1) return std::make_pair(false, format_partition(p));
      return std::make_pair(true, std::to_string(p.size()) + " parts");
    });
  } else if (name == "structure") {
    check("psi of {K3} at m = 1", [&] { return std::make_pair(psi_F({graphs::K(3)}, 1) == 3, std::to_string(psi_F({graphs::K(3)}, 1))); });
    check("complete graph decomposition", [&] {
      StructureParams prm;
      prm.eps = Rational(1, 2);
      prm.psi = [](int) { return 2; };
      prm.thresholds = {2, 4, 8, 16};
      auto d = structured_partition(WeightedGraph::uniform(Graph::complete(6)), prm);
      return std::make_pair(d.all_pass(), std::string("items 1-8"));
    });
  } else if (name == "blowup") {
    check("blowup farness K3, N = 6", [&] {
      auto f = verify_blowup_farness(WeightedGraph::uniform(Graph::complete(3)), triangle_free(), 6);
      return std::make_pair(f.blowup >= f.base, to_string(f.base) + " <= " + to_string(f.blowup));
    });
    check("projection push-forward", [&] {
      WeightedGraph e(Graph::from_edges(2, {{0, 1}}), VertexDistribution({Rational(2, 3), Rational(1, 3)}));
      auto b = dn_blowup(e, 3);
      return std::make_pair(project(b, 0) == 0 && project(b, 1) == 0 && project(b, 2) == 1, std::string("sizes 2,1"));
    });
  } else if (name == "gallery") {
    check("AB-free pair at C5", [&] { return eq(non_extendable_pair(ab_free(), graphs::C(5), VertexSet{}).cert.distance, Rational(1, 25)); });
    check("cycle-star pair at M = 4", [&] { return eq(cycle_star_pair(4).cert.distance, Rational(1, 16)); });
    check("density pair densities at n = 8", [&] {
      auto d = density_pair(8);
      return std::make_pair(edge_density(d.first.graph) == Rational(3, 16) && edge_density(d.second.graph) == Rational(15, 32),
                            std::string("3/16 vs 15/32"));
    });
  } else {
    throw InputError("unknown suite '" + name + "'");
  }
  return out;
}

}  // namespace vdflab
