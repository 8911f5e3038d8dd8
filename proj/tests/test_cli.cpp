#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "lpa/cli.hpp"
#include "test_util.hpp"

using namespace lpa;

namespace {

struct RunResult {
  int code;
  std::string out, err;
};

RunResult run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("analyze prints the summary line") {
  RunResult r = run({"analyze", testing::corpus_path("toeplitz")});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "L=true K=false cofinal=false |HS|=3"));
  CHECK(contains(r.out, "cycles: c"));
  CHECK(contains(r.out, "hs-lattice: {} {v} {u,v}"));
}

TEST_CASE("analyze machine mode") {
  RunResult r = run({"analyze", testing::corpus_path("rose2"), "--machine"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "L=true\n"));
  CHECK(contains(r.out, "K=true\n"));
  CHECK(contains(r.out, "cofinal=true\n"));
  CHECK(contains(r.out, "hs_count=2\n"));
}

TEST_CASE("analyze exits 2 on parse errors") {
  RunResult r = run({"analyze", "/nonexistent/x.graph"});
  CHECK(r.code == 2);
  CHECK(contains(r.err, "error:"));
}

TEST_CASE("desingularize emits tails and truncations") {
  RunResult r = run({"desingularize", testing::corpus_path("a2"), "--depth", "2"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "tail w sink"));
  CHECK(contains(r.out, "# truncation depth=2"));
  CHECK(contains(r.out, "edge w.f2 : w.v1 -> w.v2"));
}

TEST_CASE("desingularize exits 3 on uncountable emitters with the exact message") {
  RunResult r = run({"desingularize", testing::corpus_path("uncountable")});
  CHECK(r.code == 3);
  CHECK(r.err ==
        "error: vertex 'b' is an uncountable emitter; the graph does not admit a "
        "desingularization\n");
}

TEST_CASE("eval normal forms, dimension and products") {
  RunResult nf = run({"eval", testing::corpus_path("rose2"), "--nf", "e.e^"});
  CHECK(nf.code == 0);
  CHECK(nf.out == "v - f.f^\n");

  RunResult dim = run({"eval", testing::corpus_path("a2"), "--dim"});
  CHECK(dim.out == "4\n");

  RunResult mul =
      run({"eval", testing::corpus_path("rose2"), "--field", "fp:5", "--mul", "(e.f^)", "(f.e^)"});
  CHECK(mul.code == 0);
  CHECK(mul.out == "v + 4*f.f^\n");

  RunResult grade = run({"eval", testing::corpus_path("rose2"), "--grade", "2*e + v"});
  CHECK(grade.out == "deg 0: v\ndeg 1: 2*e\n");
}

TEST_CASE("eval warnings go to stderr") {
  RunResult r = run({"eval", testing::corpus_path("toeplitz"), "--nf", "f.c"});
  CHECK(r.code == 0);
  CHECK(r.out == "0\n");
  CHECK(contains(r.err, "warning: non-composable"));
}

TEST_CASE("eval exit codes distinguish syntax from ambient mismatches") {
  RunResult syntax = run({"eval", testing::corpus_path("rose2"), "--nf", "e +"});
  CHECK(syntax.code == 2);
  RunResult ambient =
      run({"eval", testing::corpus_path("rose2"), "--field", "fp:5", "--nf", "1 mod 3 * v"});
  CHECK(ambient.code == 4);
  RunResult mode = run({"eval", testing::corpus_path("rose2"), "--nf", "--dim"});
  CHECK(mode.code == 2);
}

TEST_CASE("invariance suite passes over the corpus") {
  RunResult r = run({"invariance-suite", LPA_CORPUS_DIR});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "toeplitz.graph: L=true/true K=false/false cofinal=false/false hs=3/3 PASS"));
  CHECK(contains(r.out, "uncountable.graph: SKIPPED(uncountable)"));
  CHECK(contains(r.out, "result: PASS"));
}

TEST_CASE("invariance suite marks corrupted files and exits 2") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "lpa_suite_test";
  fs::create_directories(dir);
  {
    std::ofstream good(dir / "ok.graph");
    good << "vertex v\nedge c : v -> v\n";
    std::ofstream bad(dir / "broken.graph");
    bad << "vertex v\nedge oops\n";
  }
  RunResult r = run({"invariance-suite", dir.string()});
  CHECK(r.code == 2);
  CHECK(contains(r.out, "ok.graph: L=false/false"));
  CHECK(contains(r.out, "broken.graph: PARSE-ERROR 2:"));
  CHECK(contains(r.out, "result: PARSE-ERROR"));
  fs::remove_all(dir);
}

TEST_CASE("morita-verify scenarios") {
  RunResult iso = run({"morita-verify", "isolocales-m2fp", "--p", "2"});
  CHECK(iso.code == 0);
  CHECK(contains(iso.out, "regular-elements: 16"));
  CHECK(contains(iso.out, "isomorphisms: 16/16"));

  RunResult eq = run({"morita-verify", "equivlocal-matrix", "--p", "2"});
  CHECK(eq.code == 0);
  CHECK(contains(eq.out, "idempotents: 8"));
  CHECK(contains(eq.out, "verified: 8/8"));

  RunResult des = run({"morita-verify", "desing-context", "--graph", testing::corpus_path("a2"),
                       "--depth", "4", "--samples", "25"});
  CHECK(des.code == 0);
  CHECK(contains(des.out, "seed=0"));
  CHECK(contains(des.out, "result: PASS"));
}

TEST_CASE("byte determinism of repeated runs") {
  std::vector<std::vector<std::string>> commands = {
      {"analyze", testing::corpus_path("toeplitz")},
      {"invariance-suite", LPA_CORPUS_DIR},
      {"morita-verify", "isolocales-m2fp", "--p", "2"},
      {"morita-verify", "desing-context", "--graph", testing::corpus_path("mixed"), "--depth", "4",
       "--samples", "20", "--seed", "9"},
      {"eval", testing::corpus_path("rose2"), "--nf", "e.e^", "f.e^.e.f^"},
  };
  for (const auto& cmd : commands) {
    RunResult a = run(cmd);
    RunResult b = run(cmd);
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("machine mode emits key=value records") {
  RunResult iso = run({"morita-verify", "isolocales-m2fp", "--p", "2", "--machine"});
  CHECK(iso.code == 0);
  CHECK(contains(iso.out, "regular-elements=16"));
  CHECK(contains(iso.out, "result=pass"));
  RunResult inv = run({"invariance-suite", LPA_CORPUS_DIR, "--machine"});
  CHECK(inv.code == 0);
  CHECK(contains(inv.out, "file=toeplitz.graph status=pass"));
  CHECK(contains(inv.out, "file=uncountable.graph status=skipped-uncountable"));
  CHECK(contains(inv.out, "result=pass"));
}

TEST_CASE("usage errors exit 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"analyze"}).code == 2);
  CHECK(run({"analyze", "x", "--bogus"}).code == 2);
  CHECK(run({"eval", "x", "--machine"}).code == 2);  // not a report command
  CHECK(run({"morita-verify", "unknown-scenario"}).code == 2);
  CHECK(run({"morita-verify", "isolocales-m2fp", "--p", "4"}).code == 2);
}

TEST_CASE("numeric flags are validated, not wrapped") {
  std::string a2 = testing::corpus_path("a2");
  CHECK(run({"desingularize", a2, "--depth", "-3"}).code == 2);
  CHECK(run({"desingularize", a2, "--depth", "999999999999999999999"}).code == 2);
  CHECK(run({"desingularize", a2, "--depth", "0"}).code == 2);
  CHECK(run({"morita-verify", "desing-context", "--graph", a2, "--samples", "nope"}).code == 2);
  CHECK(run({"eval", a2, "--nf", "99999999999999999999999999*v"}).code == 0);  // big is fine
}
