#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "lpa/predicates.hpp"
#include "test_util.hpp"

using namespace lpa;

namespace {

std::vector<std::string> cycle_strings(const Graph& g) {
  std::vector<std::string> out;
  for (const Path& c : cycles(g)) out.push_back(c.to_string());
  return out;
}

std::vector<std::string> csp_strings(const Graph& g, const std::string& v) {
  std::vector<std::string> out;
  for (const Path& c : closed_simple_paths(g, v)) out.push_back(c.to_string());
  return out;
}

}  // namespace

TEST_CASE("cycle enumeration") {
  CHECK(cycle_strings(testing::corpus_graph("loop")) == std::vector<std::string>{"c"});
  // A cycle has pairwise distinct edge sources, so the rose contributes its
  // petals only.
  CHECK(cycle_strings(testing::corpus_graph("rose2")) == std::vector<std::string>{"e", "f"});
  CHECK(cycle_strings(testing::corpus_graph("a2")).empty());
  CHECK(cycle_strings(testing::corpus_graph("twocycle")) == std::vector<std::string>{"a.b"});
  CHECK(cycle_strings(testing::corpus_graph("toeplitz")) == std::vector<std::string>{"c"});
}

TEST_CASE("cycles are canonicalized to the least edge-id rotation") {
  // b.a and a.b are the same cycle; the canonical representative starts at a.
  Graph g = parse_graph("vertex v\nvertex w\nedge b : v -> w\nedge a : w -> v\n");
  CHECK(cycle_strings(g) == std::vector<std::string>{"a.b"});
}

TEST_CASE("closed simple paths") {
  CHECK(csp_strings(testing::corpus_graph("rose2"), "v") == std::vector<std::string>{"e", "f"});
  CHECK(csp_strings(testing::corpus_graph("loop"), "v") == std::vector<std::string>{"c"});
  // f leaves toward the sink and never returns
  CHECK(csp_strings(testing::corpus_graph("toeplitz"), "u") == std::vector<std::string>{"c"});
  CHECK_THROWS_AS(closed_simple_paths(testing::corpus_graph("loop"), "ghost"),
                  std::invalid_argument);
}

TEST_CASE("closed simple paths may pump through side cycles") {
  // v -> w with a loop at w: returns of every length exist; the enumerator
  // is bounded but must see the short ones.
  Graph g = parse_graph(
      "vertex v\nvertex w\nedge a : v -> w\nedge l : w -> w\nedge b : w -> v\n");
  auto cs = csp_strings(g, "v");
  CHECK(std::find(cs.begin(), cs.end(), "a.b") != cs.end());
  CHECK(std::find(cs.begin(), cs.end(), "a.l.b") != cs.end());
  CHECK(condition_K(g));
  CHECK(condition_L(g));
}

TEST_CASE("condition L") {
  CHECK_FALSE(condition_L(testing::corpus_graph("loop")));
  CHECK(condition_L(testing::corpus_graph("toeplitz")));
  CHECK(condition_L(testing::corpus_graph("a2")));
  CHECK_FALSE(condition_L(testing::corpus_graph("twocycle")));
  CHECK(condition_L(testing::corpus_graph("rose2")));
}

TEST_CASE("condition K") {
  CHECK(condition_K(testing::corpus_graph("rose2")));
  CHECK_FALSE(condition_K(testing::corpus_graph("toeplitz")));
  CHECK(condition_K(testing::corpus_graph("a2")));
  CHECK_FALSE(condition_K(testing::corpus_graph("loop")));
}

TEST_CASE("emitter edges count as cycle edges and exits") {
  // One vertex emitting countably many loops: every cycle has an exit and
  // every vertex on a closed simple path has infinitely many.
  Graph g = parse_graph("vertex u\nemitter u countable pattern u\n");
  CHECK(condition_L(g));
  CHECK(condition_K(g));
  CHECK(cofinal(g));
}

TEST_CASE("a single materialized return through an emitter detour") {
  // v's only return is v -> a -> v through the emitter's enumeration, which
  // recurs in the pattern, so v has infinitely many closed simple paths.
  Graph g = parse_graph("vertex v\nvertex a\nedge va : v -> a\nemitter a countable pattern v\n");
  CHECK(condition_K(g));
  CHECK(condition_L(g));
}

TEST_CASE("hs_closure examples") {
  Graph g4 = testing::corpus_graph("toeplitz");
  CHECK(hs_closure(g4, {"u"}) == std::set<std::string>{"u", "v"});
  CHECK(hs_closure(g4, {"v"}) == std::set<std::string>{"v"});
  Graph a2 = testing::corpus_graph("a2");
  CHECK(hs_closure(a2, {"w"}) == std::set<std::string>{"v", "w"});
}

TEST_CASE("hs_closure is a closure operator on small graphs") {
  for (const auto& name : testing::corpus_names()) {
    Graph g = testing::corpus_graph(name);
    size_t n = g.vertex_count();
    if (n > 6) continue;
    std::vector<std::set<std::string>> subsets;
    for (size_t mask = 0; mask < (size_t(1) << n); ++mask) {
      std::set<std::string> s;
      for (size_t v = 0; v < n; ++v)
        if (mask & (size_t(1) << v)) s.insert(g.vertex_id(v));
      subsets.push_back(s);
    }
    for (const auto& x : subsets) {
      auto cx = hs_closure(g, x);
      CHECK(std::includes(cx.begin(), cx.end(), x.begin(), x.end()));  // extensive
      CHECK(hs_closure(g, cx) == cx);                                  // idempotent
    }
    for (const auto& x : subsets)
      for (const auto& y : subsets) {
        if (!std::includes(y.begin(), y.end(), x.begin(), x.end())) continue;
        auto cx = hs_closure(g, x), cy = hs_closure(g, y);
        CHECK(std::includes(cy.begin(), cy.end(), cx.begin(), cx.end()));  // monotone
      }
  }
}

TEST_CASE("hs lattice sizes") {
  CHECK(hs_lattice(testing::corpus_graph("a2")).size() == 2);
  CHECK(hs_lattice(testing::corpus_graph("toeplitz")).size() == 3);
  CHECK(hs_lattice(testing::corpus_graph("loop")).size() == 2);
  CHECK(hs_lattice(testing::corpus_graph("twocomp")).size() == 4);
  CHECK(hs_lattice(testing::corpus_graph("clock")).size() == 5);
  CHECK(hs_lattice(testing::corpus_graph("mixed")).size() == 3);
  CHECK(hs_lattice(testing::corpus_graph("breaking")).size() == 5);
  CHECK(hs_lattice(testing::corpus_graph("dag")).size() == 2);
}

TEST_CASE("hs lattice of the two-vertex line is trivial") {
  Graph g = testing::corpus_graph("a2");
  HSLattice lat = hs_lattice(g);
  REQUIRE(lat.size() == 2);
  CHECK(lat.member_ids(0).empty());
  CHECK(lat.member_ids(1) == std::set<std::string>{"v", "w"});
}

TEST_CASE("hs lattice members, order and tables") {
  Graph g = testing::corpus_graph("toeplitz");
  HSLattice lat = hs_lattice(g);
  REQUIRE(lat.size() == 3);
  CHECK(lat.member_ids(0).empty());
  CHECK(lat.member_ids(1) == std::set<std::string>{"v"});
  CHECK(lat.member_ids(2) == std::set<std::string>{"u", "v"});
  CHECK(lat.to_string() == "{} {v} {u,v}");
  // meet = intersection, join = closure of union
  CHECK(lat.meet(1, 2) == 1);
  CHECK(lat.join(1, 1) == 1);
  CHECK(lat.join(0, 2) == 2);
  for (size_t i = 0; i < lat.size(); ++i)
    for (size_t j = 0; j < lat.size(); ++j) {
      CHECK(lat.meet(i, j) < lat.size());
      CHECK(lat.join(i, j) < lat.size());
    }
}

TEST_CASE("cofinality") {
  CHECK_FALSE(cofinal(testing::corpus_graph("toeplitz")));
  CHECK(cofinal(testing::corpus_graph("rose2")));
  CHECK(cofinal(testing::corpus_graph("a2")));
  CHECK_FALSE(cofinal(testing::corpus_graph("twocomp")));
  CHECK(cofinal(testing::corpus_graph("uncountable")));
}

TEST_CASE("predicates are invariant under relabeling") {
  Graph g = testing::corpus_graph("toeplitz");
  // distinct ids, same shape
  Graph h = parse_graph("vertex x9\nvertex y7\nedge z2 : x9 -> x9\nedge z1 : x9 -> y7\n");
  CHECK(condition_L(g) == condition_L(h));
  CHECK(condition_K(g) == condition_K(h));
  CHECK(cofinal(g) == cofinal(h));
  CHECK(cycles(g).size() == cycles(h).size());
  CHECK(hs_lattice(g).size() == hs_lattice(h).size());
}

namespace {

// Independent oracle for the number of closed simple paths based at v,
// capped at 2: a bounded length-by-length DP over raw edges. If at least
// two exist, two exist of length <= 2|V| (the shortest is simple; the
// second-shortest is simple or the shortest plus one simple detour), so the
// bound is exact for deciding 0, 1 or >= 2.
int csp_count_oracle(const Graph& g, size_t v) {
  size_t cap = 2 * g.vertex_count() + 2;
  // ways[w] = number of partial paths from v to w of the current length
  // with intermediate sources != v, saturated at 2
  std::vector<int> ways(g.vertex_count(), 0);
  int found = 0;
  ways[v] = 1;
  for (size_t len = 0; len < cap && found < 2; ++len) {
    std::vector<int> next(g.vertex_count(), 0);
    for (size_t w = 0; w < g.vertex_count(); ++w) {
      if (!ways[w]) continue;
      if (w == v && len > 0) continue;  // paths that returned are complete
      for (size_t e : g.out_edges(w)) {
        size_t to = g.edge(e).rng;
        next[to] = std::min(2, next[to] + ways[w]);
      }
    }
    found = std::min(2, found + next[v]);
    ways = std::move(next);
  }
  return found;
}

}  // namespace

TEST_CASE("closed-return counts agree with the bounded oracle on random graphs") {
  Rng rng(2024);
  WalkModel model;
  for (int trial = 0; trial < 400; ++trial) {
    Graph g = testing::random_graph(rng, /*allow_emitters=*/false);
    model = model_of(g);
    for (size_t v = 0; v < g.vertex_count(); ++v) {
      CAPTURE(g.serialize());
      CAPTURE(g.vertex_id(v));
      CHECK(count_based_returns_capped(model, v) == csp_count_oracle(g, v));
    }
  }
}

TEST_CASE("K implies L on the corpus, and acyclic graphs satisfy both") {
  for (const auto& name : testing::corpus_names()) {
    Graph g = testing::corpus_graph(name);
    if (condition_K(g)) CHECK(condition_L(g));
    if (cycles(g).empty() && g.row_finite()) {
      CHECK(condition_L(g));
      CHECK(condition_K(g));
    }
  }
}
