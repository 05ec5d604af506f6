#pragma once

#include "property.hpp"
#include "wgraph.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace vdflab {

// Text format:
//   n <count>
//   weights <p/q> ... <p/q>
//   e <i> <j>
// Blank lines and lines starting with '#' are ignored. The weights line may be
// omitted only when `weights_optional` is set (uniform is assumed).
inline WeightedGraph parse_wgraph(std::istream& in, bool weights_optional = false,
                                  std::vector<std::string>* extra = nullptr) {
  std::string line;
  int n = -1;
  std::optional<std::vector<Rational>> weights;
  std::set<std::pair<int, int>> seen;
  std::vector<std::pair<int, int>> edges;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag[0] == '#') continue;
    auto where = [&] { return " (line " + std::to_string(lineno) + ")"; };
    if (tag == "n") {
      if (n >= 0) throw InputError("duplicate n line" + where());
      if (!(ls >> n) || n < 0) throw InputError("bad vertex count" + where());
      if (n > kMaxVertices) throw InputError("vertex count above cap " + std::to_string(kMaxVertices) + where());
    } else if (tag == "weights") {
      if (n < 0) throw InputError("weights before n" + where());
      std::vector<Rational> w;
      std::string tok;
      while (ls >> tok) w.push_back(parse_rational(tok));
      if (static_cast<int>(w.size()) != n) throw InputError("expected " + std::to_string(n) + " weights" + where());
      weights = std::move(w);
    } else if (tag == "e") {
      int a, b;
      if (n < 0) throw InputError("edge before n" + where());
      if (!(ls >> a >> b)) throw InputError("bad edge line" + where());
      if (a < 0 || b < 0 || a >= n || b >= n) throw InputError("edge endpoint out of range" + where());
      if (a == b) throw InputError("self-loop" + where());
      auto key = std::minmax(a, b);
      if (!seen.insert(key).second) throw InputError("duplicate edge" + where());
      edges.emplace_back(a, b);
    } else if (extra) {
      extra->push_back(line);
    } else {
      throw InputError("unknown line tag '" + tag + "'" + where());
    }
  }
  if (n < 0) throw InputError("missing n line");
  Graph g = Graph::from_edges(n, edges);
  if (!weights) {
    if (!weights_optional) throw InputError("missing weights line");
    if (n == 0) throw InputError("cannot weight an empty graph");
    return WeightedGraph::uniform(g);
  }
  return WeightedGraph(g, VertexDistribution(*weights));
}

inline WeightedGraph parse_wgraph(const std::string& text, bool weights_optional = false) {
  std::istringstream in(text);
  return parse_wgraph(in, weights_optional);
}

inline WeightedGraph read_wgraph(const std::string& path, bool weights_optional = false) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return parse_wgraph(in, weights_optional);
}

inline std::string format_wgraph(const WeightedGraph& wg) {
  std::ostringstream out;
  out << "n " << wg.n() << "\nweights";
  for (int v = 0; v < wg.n(); ++v) out << ' ' << to_string(wg.dist[v]);
  out << '\n';
  for (auto [a, b] : wg.graph.edges()) out << "e " << a << ' ' << b << '\n';
  return out.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

// ---- partitions: one line per part, parts ordered by least element ----

using Partition = std::vector<VertexSet>;

inline Partition normalized(Partition p) {
  p.erase(std::remove_if(p.begin(), p.end(), [](const VertexSet& s) { return s.empty(); }), p.end());
  std::sort(p.begin(), p.end(), [](const VertexSet& a, const VertexSet& b) { return a.lowest() < b.lowest(); });
  return p;
}

inline std::string format_partition(const Partition& p) {
  std::ostringstream out;
  for (const auto& part : normalized(p)) {
    bool first = true;
    for (int v : part.members()) {
      out << (first ? "" : " ") << v;
      first = false;
    }
    out << '\n';
  }
  return out.str();
}

inline Partition parse_partition(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  Partition p;
  VertexSet all;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    VertexSet part;
    int v;
    while (ls >> v) {
      if (v < 0 || v >= kMaxVertices) throw InputError("partition vertex out of range");
      if (all.contains(v) || part.contains(v)) throw InputError("vertex " + std::to_string(v) + " appears twice");
      part.insert(v);
    }
    if (part.empty()) continue;
    all |= part;
    p.push_back(part);
  }
  return p;
}

// ---- property registry ----

inline Property property_by_id(const std::string& id) {
  auto colon = id.find(':');
  std::string head = id.substr(0, colon);
  std::string arg = colon == std::string::npos ? "" : id.substr(colon + 1);
  if (id == "triangle-free") return triangle_free();
  if (id == "edge-free") return edge_free();
  if (id == "complete") return complete();
  if (id == "cycle-star-free") return cycle_star_free();
  if (id == "AB-free") return ab_free();
  if (id == "connected") return connected();
  if (id == "hamiltonian") return hamiltonian();
  if (head == "k-colorable" && !arg.empty()) {
    int k = std::stoi(arg);
    if (k < 1) throw InputError("k-colorable needs k >= 1");
    return k_colorable(k);
  }
  if (head == "edge-density-le" && !arg.empty()) return edge_density_le(parse_rational(arg));
  if (head == "induced-H-free" && !arg.empty()) {
    WeightedGraph h = read_wgraph(arg, true);
    Property p = induced_free({h.graph}, id);
    return p;
  }
  throw InputError("unknown property id '" + id + "'");
}

}  // namespace vdflab
