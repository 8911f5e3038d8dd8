#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "lpa/element.hpp"
#include "lpa/graph.hpp"

namespace lpa::testing {

inline std::string corpus_path(const std::string& name) {
  return std::string(LPA_CORPUS_DIR) + "/" + name + ".graph";
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Graph corpus_graph(const std::string& name) {
  return parse_graph(slurp(corpus_path(name)));
}

inline std::vector<std::string> corpus_names() {
  return {"loop",     "rose2",   "rose3",    "a2",    "a3",         "toeplitz", "twocycle",
          "twocomp",  "clock",   "mixed",    "dag",   "breaking",   "uncountable"};
}

// Random graph for property tests: up to five vertices, each a regular
// vertex, a sink, or (when allowed) a countable emitter with a random
// prefix and pattern.
inline Graph random_graph(Rng& rng, bool allow_emitters) {
  size_t n = 1 + rng.below(5);
  Graph g;
  std::vector<std::string> ids;
  for (size_t v = 0; v < n; ++v) {
    ids.push_back("w" + std::to_string(v));
    g.add_vertex(ids.back());
  }
  size_t edge_counter = 0;
  for (size_t v = 0; v < n; ++v) {
    uint64_t role = rng.below(10);
    if (role < 6) {
      size_t deg = 1 + rng.below(3);
      for (size_t k = 0; k < deg; ++k)
        g.add_edge("e" + std::to_string(edge_counter++), ids[v], ids[rng.below(n)]);
    } else if (role < 8 || !allow_emitters) {
      // sink: no edges, no declaration
    } else {
      std::vector<std::pair<std::string, std::string>> prefix;
      size_t prefix_len = rng.below(3);
      for (size_t k = 0; k < prefix_len; ++k)
        prefix.emplace_back("p" + std::to_string(edge_counter++), ids[rng.below(n)]);
      std::vector<std::string> pattern;
      size_t pattern_len = 1 + rng.below(3);
      for (size_t k = 0; k < pattern_len; ++k) pattern.push_back(ids[rng.below(n)]);
      g.declare_countable(ids[v], prefix, pattern);
    }
  }
  g.validate();
  return g;
}

// Cuntz-Krieger relation suite over the materialized edges of a graph: (V),
// (E1), (E2), (CK1) for every edge pair, and (CK2) at every regular vertex.
// CK2 does not apply at infinite emitters and is skipped there.
inline bool relation_suite(const Graph& g, Field field, std::string* failure = nullptr) {
  auto fail = [&](const std::string& what) {
    if (failure) *failure = what;
    return false;
  };
  for (size_t v = 0; v < g.vertex_count(); ++v)
    for (size_t w = 0; w < g.vertex_count(); ++w) {
      Element lhs = Element::vertex(&g, field, v) * Element::vertex(&g, field, w);
      Element rhs = v == w ? Element::vertex(&g, field, v) : Element::zero(&g, field);
      if (!equal(lhs, rhs)) return fail("(V) at " + g.vertex_id(v) + "," + g.vertex_id(w));
    }
  for (size_t e = 0; e < g.edge_count(); ++e) {
    Element ee = Element::real_edge(&g, field, e);
    Element ge = Element::ghost_edge(&g, field, e);
    Element s = Element::vertex(&g, field, g.edge(e).src);
    Element r = Element::vertex(&g, field, g.edge(e).rng);
    if (!equal(s * ee, ee) || !equal(ee * r, ee)) return fail("(E1) at " + g.edge(e).id);
    if (!equal(r * ge, ge) || !equal(ge * s, ge)) return fail("(E2) at " + g.edge(e).id);
    for (size_t f = 0; f < g.edge_count(); ++f) {
      Element lhs = ge * Element::real_edge(&g, field, f);
      Element rhs = e == f ? r : Element::zero(&g, field);
      if (!equal(lhs, rhs)) return fail("(CK1) at " + g.edge(e).id + "," + g.edge(f).id);
    }
  }
  for (size_t v = 0; v < g.vertex_count(); ++v) {
    if (!g.is_regular(v)) continue;  // CK2 only holds at regular vertices
    Element sum = Element::zero(&g, field);
    for (size_t e : g.out_edges(v)) {
      Element ee = Element::real_edge(&g, field, e);
      sum = sum + ee * Element::ghost_edge(&g, field, e);
    }
    if (!equal(Element::vertex(&g, field, v), sum)) return fail("(CK2) at " + g.vertex_id(v));
  }
  return true;
}

}  // namespace lpa::testing
