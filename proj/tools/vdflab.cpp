// vdflab command line: distances, testers, sweeps, regularity, blowups, gallery pairs, self-checks.
#include "vdflab/vdflab.hpp"

#include "CLI11.hpp"

#include <iostream>

using namespace vdflab;
using nlohmann::json;

namespace {

enum class Out { Text, Json, Csv };

struct Common {
  bool as_json = false, as_csv = false;
  Out out() const { return as_json ? Out::Json : as_csv ? Out::Csv : Out::Text; }
};

void add_format(CLI::App* cmd, Common& c) {
  cmd->add_flag("--json", c.as_json, "JSON output");
  cmd->add_flag("--csv", c.as_csv, "CSV output");
}

std::string join(const std::vector<int>& v) {
  std::string s;
  for (int x : v) s += (s.empty() ? "" : " ") + std::to_string(x);
  return s;
}

void print_reports(const std::vector<ExperimentReport>& rs, Out out, std::optional<int> minimal = std::nullopt, bool sweeping = false) {
  if (out == Out::Csv) {
    std::cout << reports_csv(rs);
  } else if (out == Out::Json) {
    json j = json::array();
    for (const auto& r : rs) j.push_back(report_json(r));
    if (sweeping) j = {{"reports", j}, {"minimal", minimal ? json(*minimal) : json(nullptr)}};
    else j = j.front();
    std::cout << j.dump(2) << "\n";
  } else {
    for (const auto& r : rs)
      std::cout << r.variant << " s=" << r.s << " M=" << r.M << ": reject " << r.reject << "/" << r.trials << " = " << r.estimate
                << "  95% CI [" << r.ci.lo << ", " << r.ci.hi << "]  distance " << r.distance.value_or("?") << " (" << r.method
                << ")\n";
    if (sweeping) std::cout << "minimal: " << (minimal ? std::to_string(*minimal) : std::string("none in range")) << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Vertex-distribution-free graph property testing lab"};
  app.require_subcommand(1);

  // dist
  Common dist_c;
  std::string dist_input, dist_prop;
  int dist_cap = kBruteForceCap;
  auto* dist = app.add_subcommand("dist", "exact distance of (G, D) to a property");
  dist->add_option("input", dist_input, "wgraph file or generator spec")->required();
  dist->add_option("property", dist_prop, "property id")->required();
  dist->add_option("--cap", dist_cap, "vertex cap of the exact search");
  add_format(dist, dist_c);

  // test
  Common test_c;
  std::string cfg_path;
  auto* test = app.add_subcommand("test", "run a tester experiment from a JSON config");
  test->add_option("config", cfg_path, "experiment config (JSON)")->required()->check(CLI::ExistingFile);
  add_format(test, test_c);

  // sweep
  Common sweep_c;
  std::string sweep_path;
  auto* sw = app.add_subcommand("sweep", "find the least sample size with rejection CI above 2/3");
  sw->add_option("config", sweep_path, "experiment config with a sweep section")->required()->check(CLI::ExistingFile);
  add_format(sw, sweep_c);

  // regularity
  Common reg_c;
  std::string reg_input, reg_eps = "1/4";
  int reg_parts = 1;
  auto* reg = app.add_subcommand("regularity", "certified eps-regular partition");
  reg->add_option("input", reg_input, "wgraph file or generator spec")->required();
  reg->add_option("--eps", reg_eps, "regularity parameter (rational)");
  reg->add_option("--parts", reg_parts, "initial equipartition into this many blocks");
  add_format(reg, reg_c);

  // blowup
  std::string bl_input, bl_policy = "empty", bl_prop;
  int bl_N = 0;
  auto* bl = app.add_subcommand("blowup", "(D,N)-blowup, printed as a wgraph with a sets line");
  bl->add_option("input", bl_input, "wgraph file or generator spec")->required();
  bl->add_option("-N", bl_N, "blowup size (default: least suitable)");
  bl->add_option("--policy", bl_policy, "internal graphs: empty or clique")->check(CLI::IsMember({"empty", "clique"}));
  bl->add_option("--check", bl_prop, "also compare distances to this property");

  // gallery
  std::string gal_name, gal_out;
  int gal_arg = 0;
  auto* gal = app.add_subcommand("gallery", "build a lower-bound construction");
  gal->add_option("name", gal_name, "non-extendable-ab | cycle-star | density")
      ->required()
      ->check(CLI::IsMember({"non-extendable-ab", "cycle-star", "density"}));
  gal->add_option("--size", gal_arg, "M for cycle-star, n for density");
  gal->add_option("--out", gal_out, "write <out>_1.wg, <out>_2.wg and <out>.json");

  // verify
  Common ver_c;
  std::vector<std::string> suites;
  auto* ver = app.add_subcommand("verify", "run built-in verification suites");
  ver->add_option("suites", suites, "suite names (default: all)");
  add_format(ver, ver_c);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*dist) {
      auto wg = load_input(dist_input);
      auto p = property_by_id(dist_prop);
      Rational d;
      std::string method;
      if (has_closed_form(p)) {
        d = distance_to_property_closed_form(wg, p);
        method = "closed form";
      } else {
        auto r = distance_to_property(wg, p, dist_cap);
        d = r.value;
        method = "branch-and-bound";
      }
      if (dist_c.out() == Out::Json)
        std::cout << json{{"input", dist_input}, {"property", dist_prop}, {"distance", to_string(d)}, {"method", method}}.dump(2) << "\n";
      else if (dist_c.out() == Out::Csv)
        std::cout << "input,property,distance,method\n" << dist_input << "," << dist_prop << "," << to_string(d) << "," << method << "\n";
      else
        std::cout << to_string(d) << " (" << method << ")\n";
    } else if (*test) {
      print_reports({run_experiment(load_config(cfg_path))}, test_c.out());
    } else if (*sw) {
      auto r = sweep(load_config(sweep_path));
      print_reports(r.reports, sweep_c.out(), r.minimal, true);
    } else if (*reg) {
      auto wg = load_input(reg_input);
      Rational eps = parse_rational(reg_eps);
      if (reg_parts < 1) throw InputError("--parts must be >= 1");
      Partition p0(std::min(reg_parts, std::max(1, wg.n())));
      for (int v = 0; v < wg.n(); ++v) p0[v * static_cast<int>(p0.size()) / wg.n()].insert(v);
      auto res = szemeredi_run(wg, eps, p0);
      if (reg_c.out() == Out::Json) {
        json parts = json::array();
        for (const auto& s : res.partition) parts.push_back(s.members());
        std::cout << json{{"parts", parts}, {"rounds", res.rounds}, {"irregular_mass", to_string(res.irregular)},
                          {"index", to_string(res.index_history.back())}}.dump(2)
                  << "\n";
      } else {
        std::cout << format_partition(res.partition);
        std::cout << "# rounds " << res.rounds << ", irregular mass " << to_string(res.irregular) << ", index "
                  << to_string(res.index_history.back()) << "\n";
      }
    } else if (*bl) {
      auto wg = load_input(bl_input);
      int N = bl_N > 0 ? bl_N : static_cast<int>(least_blowup_size(wg.dist));
      auto pol = bl_policy == "clique" ? InternalPolicy::Clique : InternalPolicy::Empty;
      auto b = dn_blowup(wg, N, pol);
      std::cout << format_blowup(b);
      if (!bl_prop.empty()) {
        auto f = verify_blowup_farness(wg, property_by_id(bl_prop), N, pol);
        std::cout << "# distance base " << to_string(f.base) << ", blowup " << to_string(f.blowup) << "\n";
      }
    } else if (*gal) {
      GalleryPair pair;
      if (gal_name == "non-extendable-ab") pair = non_extendable_pair(ab_free(), graphs::C(5), VertexSet{});
      else if (gal_name == "cycle-star") pair = cycle_star_pair(gal_arg ? gal_arg : 4, (gal_arg ? gal_arg : 4) + 1 <= kBruteForceCap);
      else pair = density_pair(gal_arg ? gal_arg : 120);
      if (!gal_out.empty()) write_pair(pair, gal_out);
      std::cout << pair.name << ": " << pair.cert.property << " distance " << to_string(pair.cert.distance) << " (" << pair.cert.method
                << ")\n";
      std::cout << "# first\n" << format_wgraph(pair.first) << "# second\n" << format_wgraph(pair.second);
    } else if (*ver) {
      if (suites.empty()) suites = suite_names();
      bool all = true;
      json j = json::array();
      for (const auto& name : suites) {
        auto s = verify_suite(name);
        all = all && s.pass();
        for (const auto& c : s.checks) {
          if (ver_c.out() == Out::Text) std::cout << (c.pass ? "PASS " : "FAIL ") << name << ": " << c.name << " (" << c.detail << ")\n";
          j.push_back({{"suite", name}, {"check", c.name}, {"pass", c.pass}, {"detail", c.detail}});
        }
      }
      if (ver_c.out() == Out::Json) std::cout << j.dump(2) << "\n";
      if (ver_c.out() == Out::Csv) {
        std::cout << "suite,check,pass,detail\n";
        for (const auto& r : j)
          std::cout << detail::csv_field(r["suite"]) << "," << detail::csv_field(r["check"]) << "," << (r["pass"].get<bool>() ? "true" : "false") << ","
                    << detail::csv_field(r["detail"]) << "\n";
      }
      return all ? 0 : 1;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
