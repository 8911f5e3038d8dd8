#include "lpa/cli.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "lpa/desing_context.hpp"
#include "lpa/element.hpp"
#include "lpa/errors.hpp"
#include "lpa/fp_algebra.hpp"
#include "lpa/morita.hpp"
#include "lpa/predicates.hpp"
#include "lpa/tails.hpp"

namespace lpa {

namespace {

namespace fs = std::filesystem;

struct Usage : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Usage("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

uint64_t parse_uint(const std::string& text, uint64_t max, const std::string& what) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
    throw Usage(what + " must be a non-negative integer, got '" + text + "'");
  errno = 0;
  char* end = nullptr;
  unsigned long long v = std::strtoull(text.c_str(), &end, 10);
  if (errno != 0 || v > max)
    throw Usage(what + " out of range (max " + std::to_string(max) + ")");
  return v;
}

uint64_t default_seed() {
  if (const char* env = std::getenv("LPA_SEED"))
    return parse_uint(env, UINT64_MAX, "LPA_SEED");
  return 0;
}

struct Options {
  std::vector<std::string> positional;
  std::map<std::string, std::string> flags;
  std::set<std::string> switches;

  bool has(const std::string& f) const { return switches.count(f) || flags.count(f); }
  std::string get(const std::string& f, const std::string& dflt) const {
    auto it = flags.find(f);
    return it == flags.end() ? dflt : it->second;
  }
};

// Each command accepts only its own flags.
Options parse_options(const std::vector<std::string>& args, size_t start,
                      const std::set<std::string>& valued,
                      const std::set<std::string>& boolean) {
  Options o;
  for (size_t i = start; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a.rfind("--", 0) == 0) {
      std::string name = a.substr(2);
      if (boolean.count(name)) {
        o.switches.insert(name);
      } else if (valued.count(name)) {
        if (i + 1 >= args.size()) throw Usage("flag --" + name + " needs a value");
        o.flags[name] = args[++i];
      } else {
        throw Usage("unknown flag --" + name + " for this command");
      }
    } else {
      o.positional.push_back(a);
    }
  }
  return o;
}

std::string bool_str(bool b) { return b ? "true" : "false"; }

void print_checks(const Report& rep, bool machine, std::ostream& out) {
  if (!machine) {
    rep.print(out);
    return;
  }
  // name is the final field, so embedded spaces stay unambiguous
  for (const auto& c : rep.checks) {
    out << "check=" << (c.ok ? "ok" : "fail") << " name=" << c.name << "\n";
    if (!c.ok && !c.detail.empty()) out << "detail=" << c.detail << "\n";
  }
}

// ---------------------------------------------------------------------------

int cmd_analyze(const Options& o, std::ostream& out) {
  if (o.positional.size() != 1) throw Usage("usage: lpa analyze <file> [--machine]");
  Graph g = parse_graph(read_file(o.positional[0]));
  bool machine = o.has("machine");

  std::vector<std::string> vids, regular, sinks, emitters;
  for (size_t v = 0; v < g.vertex_count(); ++v) vids.push_back(g.vertex_id(v));
  std::sort(vids.begin(), vids.end());
  for (const auto& id : vids) {
    size_t v = *g.vertex_index(id);
    switch (g.emitter_class(v)) {
      case EmitterClass::regular: regular.push_back(id); break;
      case EmitterClass::sink: sinks.push_back(id); break;
      case EmitterClass::countable_infinite: emitters.push_back(id + "(countable)"); break;
      case EmitterClass::uncountable_infinite: emitters.push_back(id + "(uncountable)"); break;
    }
  }
  auto join = [](const std::vector<std::string>& xs, const std::string& none) {
    if (xs.empty()) return none;
    std::string s;
    for (size_t i = 0; i < xs.size(); ++i) s += (i ? " " : "") + xs[i];
    return s;
  };
  std::vector<std::string> cyc;
  for (const Path& c : cycles(g)) cyc.push_back(c.to_string());
  bool l = condition_L(g), k = condition_K(g);
  HSLattice lat = hs_lattice(g);
  bool cof = lat.size() == 2;

  if (machine) {
    out << "name=" << g.name() << "\n";
    out << "vertices=" << join(vids, "") << "\n";
    out << "regular=" << join(regular, "") << "\n";
    out << "sinks=" << join(sinks, "") << "\n";
    out << "emitters=" << join(emitters, "") << "\n";
    out << "cycles=" << join(cyc, "") << "\n";
    out << "L=" << bool_str(l) << "\n";
    out << "K=" << bool_str(k) << "\n";
    out << "cofinal=" << bool_str(cof) << "\n";
    out << "hs_count=" << lat.size() << "\n";
    out << "hs_lattice=" << lat.to_string() << "\n";
  } else {
    out << "graph: " << (g.name().empty() ? "(unnamed)" : g.name()) << "\n";
    out << "vertices: " << join(vids, "(none)") << "\n";
    out << "regular: " << join(regular, "(none)") << "\n";
    out << "sinks: " << join(sinks, "(none)") << "\n";
    out << "infinite-emitters: " << join(emitters, "(none)") << "\n";
    out << "cycles: " << join(cyc, "(none)") << "\n";
    out << "L=" << bool_str(l) << " K=" << bool_str(k) << " cofinal=" << bool_str(cof)
        << " |HS|=" << lat.size() << "\n";
    out << "hs-lattice: " << lat.to_string() << "\n";
  }
  return 0;
}

int cmd_desingularize(const Options& o, std::ostream& out) {
  if (o.positional.size() != 1)
    throw Usage("usage: lpa desingularize <file> [--depth k]");
  std::optional<size_t> depth;
  if (o.has("depth")) {
    depth = parse_uint(o.get("depth", "8"), 1u << 20, "--depth");
    if (*depth < 1) throw Usage("--depth must be >= 1");
  }
  Graph g = parse_graph(read_file(o.positional[0]));
  TailedGraph tg = desingularize(g);
  out << tg.serialize();
  if (depth) {
    out << "\n# truncation depth=" << *depth << "\n";
    out << truncate(tg, *depth).serialize();
  }
  return 0;
}

int cmd_eval(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.positional.empty())
    throw Usage("usage: lpa eval <file> [--field q|fp:p] (--nf|--mul|--grade|--dim) <exprs...>");
  Graph g = parse_graph(read_file(o.positional[0]));
  Field field = parse_field(o.get("field", "q"));
  std::vector<std::string> exprs(o.positional.begin() + 1, o.positional.end());

  int modes = int(o.has("nf")) + int(o.has("mul")) + int(o.has("grade")) + int(o.has("dim"));
  if (modes != 1) throw Usage("pick exactly one of --nf, --mul, --grade, --dim");

  auto eval_one = [&](const std::string& text) {
    ParsedElement pe = parse_element(&g, field, text);
    for (const auto& w : pe.warnings) err << "warning: " << w << "\n";
    return pe.element;
  };

  if (o.has("dim")) {
    auto d = dimension(g);
    out << (d ? std::to_string(*d) : std::string("infinite")) << "\n";
    return 0;
  }
  if (exprs.empty()) throw Usage("this mode needs at least one expression");
  if (o.has("nf")) {
    for (const auto& text : exprs) out << normal_form(eval_one(text)).to_string() << "\n";
    return 0;
  }
  if (o.has("mul")) {
    Element acc = eval_one(exprs[0]);
    for (size_t i = 1; i < exprs.size(); ++i) acc = acc * eval_one(exprs[i]);
    out << normal_form(acc).to_string() << "\n";
    return 0;
  }
  // --grade
  for (const auto& text : exprs) {
    std::map<int, Element> graded = eval_one(text).grade();
    if (graded.empty()) out << "deg 0: 0\n";
    for (const auto& [deg, comp] : graded)
      out << "deg " << deg << ": " << comp.to_string() << "\n";
  }
  return 0;
}

int cmd_invariance_suite(const Options& o, std::ostream& out) {
  if (o.positional.size() != 1) throw Usage("usage: lpa invariance-suite <dir> [--machine]");
  bool machine = o.has("machine");
  fs::path dir(o.positional[0]);
  if (!fs::is_directory(dir)) throw Usage("'" + dir.string() + "' is not a directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".graph")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());

  bool any_parse_error = false, any_fail = false;
  for (const auto& f : files) {
    std::string name = f.filename().string();
    Graph g;
    try {
      g = parse_graph(read_file(f.string()));
    } catch (const ParseError& e) {
      if (machine)
        out << "file=" << name << " status=parse-error line=" << e.line << " col=" << e.column
            << "\n";
      else
        out << name << ": PARSE-ERROR " << e.line << ":" << e.column << " " << e.what() << "\n";
      any_parse_error = true;
      continue;
    }
    if (g.has_uncountable_emitter()) {
      if (machine)
        out << "file=" << name << " status=skipped-uncountable\n";
      else
        out << name << ": SKIPPED(uncountable)\n";
      continue;
    }
    bool l = condition_L(g), k = condition_K(g);
    HSLattice lat = hs_lattice(g);
    bool cof = lat.size() == 2;
    TailedPredicates tp = predicates_on_tailed(desingularize(g));
    bool ok = l == tp.L && k == tp.K && cof == tp.cofinal;
    std::string hs = "-";
    if (g.row_finite()) {
      ok = ok && lat.size() == tp.hs_count;
      hs = std::to_string(lat.size()) + "/" + std::to_string(tp.hs_count);
    }
    std::ostringstream row;
    row << "L=" << bool_str(l) << "/" << bool_str(tp.L) << " K=" << bool_str(k) << "/"
        << bool_str(tp.K) << " cofinal=" << bool_str(cof) << "/" << bool_str(tp.cofinal)
        << " hs=" << hs;
    if (machine)
      out << "file=" << name << " status=" << (ok ? "pass" : "fail") << " " << row.str() << "\n";
    else
      out << name << ": " << row.str() << " " << (ok ? "PASS" : "FAIL") << "\n";
    any_fail = any_fail || !ok;
  }
  std::string verdict = any_fail ? "FAIL" : any_parse_error ? "PARSE-ERROR" : "PASS";
  if (machine) {
    std::string v = verdict;
    std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return std::tolower(c); });
    out << "result=" << v << "\n";
  } else {
    out << "result: " << verdict << "\n";
  }
  if (any_fail) return 5;
  if (any_parse_error) return 2;
  return 0;
}

// ---------------------------------------------------------------------------
// morita-verify scenarios

void kv(std::ostream& out, bool machine, const std::string& key, const std::string& value) {
  if (machine)
    out << key << "=" << value << "\n";
  else
    out << key << ": " << value << "\n";
}

int finish_scenario(const Report& rep, bool machine, std::ostream& out) {
  print_checks(rep, machine, out);
  if (machine)
    out << "result=" << (rep.all_ok() ? "pass" : "fail") << "\n";
  else
    out << "result: " << (rep.all_ok() ? "PASS" : "FAIL") << "\n";
  return rep.all_ok() ? 0 : 5;
}

int scenario_isolocales(uint32_t p, bool machine, std::ostream& out) {
  FpAlgebra r = matrix_algebra(p, 2);
  auto regs = regular_elements(r);
  kv(out, machine, "ring", "M_2(F_" + std::to_string(p) + ")");
  kv(out, machine, "regular-elements", std::to_string(regs.size()));
  size_t verified = 0;
  Report failures;
  for (const auto& [a, b] : regs) {
    Report rep = isolocales_iso(r, a, b);
    if (rep.all_ok()) {
      ++verified;
    } else {
      for (auto& c : rep.checks)
        if (!c.ok) failures.add("a=" + r.to_string(a) + " " + c.name, false, c.detail);
    }
  }
  kv(out, machine, "isomorphisms", std::to_string(verified) + "/" + std::to_string(regs.size()));
  failures.add("all local rings isomorphic to their corners", verified == regs.size());
  return finish_scenario(failures, machine, out);
}

int scenario_equivlocal(uint32_t p, bool machine, std::ostream& out) {
  FpAlgebra s = fp_field(p);
  MoritaContext ctx = matrix_context(s, 2);
  FpAlgebra r_part = matrix_algebra(p, 2);
  kv(out, machine, "context", "R=M_2(F_" + std::to_string(p) + "), S=F_" + std::to_string(p));
  Report rep = ctx.verify_axioms();
  size_t count = 0, verified = 0;
  auto size = r_part.carrier_size();
  for (uint64_t i = 0; i < *size; ++i) {
    FpVec m2 = r_part.element_at(i);
    if (!r_part.is_idempotent(m2)) continue;
    ++count;
    FpVec e = ctx.omega.zero();
    for (size_t bi = 0; bi < 2; ++bi)
      for (size_t bj = 0; bj < 2; ++bj)
        e = ctx.omega.add(e, matrix_unit(ctx.omega, s, 3, bi, bj, FpVec{m2[bi * 2 + bj]}));
    EquivlocalResult res = equivlocal_construct(ctx, e, matrix_decomposition(ctx, 2, e));
    if (res.report.all_ok()) {
      ++verified;
    } else {
      for (auto& c : res.report.checks)
        if (!c.ok) rep.add("e=" + r_part.to_string(m2) + " " + c.name, false, c.detail);
    }
  }
  kv(out, machine, "idempotents", std::to_string(count));
  kv(out, machine, "verified", std::to_string(verified) + "/" + std::to_string(count));
  rep.add("u and phi verified for every idempotent", verified == count);
  return finish_scenario(rep, machine, out);
}

int scenario_desigualdad(uint32_t p, bool machine, std::ostream& out) {
  FpAlgebra s = fp_field(p);
  MoritaContext ctx = matrix_context(s, 2);
  FpAlgebra r_part = matrix_algebra(p, 2);
  kv(out, machine, "context", "R=M_2(F_" + std::to_string(p) + "), S=F_" + std::to_string(p));
  auto place = [&](const FpVec& m2) {
    FpVec e = ctx.omega.zero();
    for (size_t bi = 0; bi < 2; ++bi)
      for (size_t bj = 0; bj < 2; ++bj)
        e = ctx.omega.add(e, matrix_unit(ctx.omega, s, 3, bi, bj, FpVec{m2[bi * 2 + bj]}));
    return e;
  };
  std::vector<FpVec> idems = r_part.idempotents();
  size_t pairs = 0, verified = 0;
  Report failures;
  for (const FpVec& e2 : idems)
    for (const FpVec& f2 : idems) {
      if (r_part.mul(r_part.mul(f2, e2), f2) != e2) continue;  // need e <= f
      ++pairs;
      Report rep = desigualdad_check(ctx, place(e2), place(f2),
                                     matrix_decomposition(ctx, 2, place(f2)));
      if (rep.all_ok()) {
        ++verified;
      } else {
        for (auto& c : rep.checks)
          if (!c.ok)
            failures.add("e=" + r_part.to_string(e2) + ", f=" + r_part.to_string(f2) + " " + c.name,
                         false, c.detail);
      }
    }
  kv(out, machine, "nested idempotent pairs", std::to_string(pairs));
  kv(out, machine, "verified", std::to_string(verified) + "/" + std::to_string(pairs));
  failures.add("commuting squares for all nested pairs", verified == pairs && pairs > 0);
  return finish_scenario(failures, machine, out);
}

int scenario_escalera(uint32_t p, size_t max_n, bool machine, std::ostream& out) {
  FpAlgebra r = matrix_algebra(p, 2);
  SigmaUnitLadder ladder{&r, {}};
  ladder.idempotents.push_back(matrix_unit(r, fp_field(p), 2, 0, 0, FpVec{1}));
  for (size_t i = 0; i <= max_n; ++i) ladder.idempotents.push_back(*r.one);
  kv(out, machine, "ring", "M_2(F_" + std::to_string(p) + "), ladder E11 <= 1 <= 1 ...");
  Report rep = ladder.verify();
  for (size_t n = 1; n <= max_n; ++n) {
    Report wn = escalera_window(r, ladder, n);
    for (auto& c : wn.checks) rep.add("n=" + std::to_string(n) + " " + c.name, c.ok, c.detail);
  }
  return finish_scenario(rep, machine, out);
}

int scenario_desing_context(const Options& o, bool machine, std::ostream& out) {
  if (!o.flags.count("graph")) throw Usage("desing-context needs --graph <file>");
  Graph g = parse_graph(read_file(o.get("graph", "")));
  size_t depth = parse_uint(o.get("depth", "8"), 1u << 20, "--depth");
  if (depth < 1) throw Usage("--depth must be >= 1");
  size_t samples = parse_uint(o.get("samples", "1000"), 1u << 30, "--samples");
  uint64_t seed = o.flags.count("seed") ? parse_uint(o.get("seed", "0"), UINT64_MAX, "--seed")
                                        : default_seed();
  Field field = parse_field(o.get("field", "q"));
  std::ostringstream header;
  header << (g.name().empty() ? o.get("graph", "") : g.name()) << " depth=" << depth
         << " samples=" << samples << " seed=" << seed << " field=" << field.to_string();
  kv(out, machine, "graph", header.str());
  DesingContext ctx = context_from_desingularization(g, depth, field);
  std::optional<std::string> corner;
  if (o.flags.count("vertex")) corner = o.get("vertex", "");
  Report rep = verify_desing_context(ctx, samples, seed, corner);
  return finish_scenario(rep, machine, out);
}

int cmd_morita_verify(const Options& o, std::ostream& out) {
  if (o.positional.size() != 1)
    throw Usage(
        "usage: lpa morita-verify "
        "isolocales-m2fp|equivlocal-matrix|desigualdad-matrix|escalera|desing-context [flags]");
  const std::string& scenario = o.positional[0];
  bool machine = o.has("machine");
  uint32_t p = static_cast<uint32_t>(parse_uint(o.get("p", "2"), (1u << 31) - 1, "--p"));
  if (!is_prime(p)) throw Usage("--p must be prime");
  if (scenario == "isolocales-m2fp") return scenario_isolocales(p, machine, out);
  if (scenario == "equivlocal-matrix") return scenario_equivlocal(p, machine, out);
  if (scenario == "desigualdad-matrix") return scenario_desigualdad(p, machine, out);
  if (scenario == "escalera")
    return scenario_escalera(p, parse_uint(o.get("n", "2"), 8, "--n"), machine, out);
  if (scenario == "desing-context") return scenario_desing_context(o, machine, out);
  throw Usage("unknown scenario '" + scenario + "'");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    if (args.empty())
      throw Usage("usage: lpa analyze|desingularize|eval|invariance-suite|morita-verify ...");
    const std::string& cmd = args[0];
    if (cmd == "analyze")
      return cmd_analyze(parse_options(args, 1, {}, {"machine"}), out);
    if (cmd == "desingularize")
      return cmd_desingularize(parse_options(args, 1, {"depth"}, {}), out);
    if (cmd == "eval")
      return cmd_eval(parse_options(args, 1, {"field"}, {"nf", "mul", "grade", "dim"}), out, err);
    if (cmd == "invariance-suite")
      return cmd_invariance_suite(parse_options(args, 1, {}, {"machine"}), out);
    if (cmd == "morita-verify")
      return cmd_morita_verify(
          parse_options(args, 1, {"p", "samples", "seed", "n", "graph", "vertex", "depth", "field"},
                        {"machine"}),
          out);
    throw Usage("unknown command '" + cmd + "'");
  } catch (const ParseError& e) {
    err << "error: " << e.line << ":" << e.column << ": " << e.what() << "\n";
    return 2;
  } catch (const UncountableEmitterError& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const AmbientMismatchError& e) {
    err << "error: " << e.what() << "\n";
    return 4;
  } catch (const VerificationError& e) {
    err << "error: " << e.what() << "\n";
    return 5;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace lpa
