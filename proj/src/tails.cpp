#include "lpa/tails.hpp"

#include <algorithm>
#include <sstream>

#include "lpa/errors.hpp"
#include "lpa/predicates.hpp"
#include "lpa/walks.hpp"

namespace lpa {

TailedGraph::TailedGraph(Graph core, std::map<size_t, TailKind> tails)
    : core_(std::move(core)), tails_(std::move(tails)) {
  // F must be row-finite: every sink and every countable emitter carries a
  // tail, and no vertex is an uncountable emitter.
  for (size_t v = 0; v < core_.vertex_count(); ++v) {
    EmitterClass c = core_.emitter_class(v);
    auto it = tails_.find(v);
    switch (c) {
      case EmitterClass::uncountable_infinite:
        throw UncountableEmitterError(core_.vertex_id(v));
      case EmitterClass::sink:
        if (it == tails_.end() || it->second != TailKind::sink_tail)
          throw std::invalid_argument("sink '" + core_.vertex_id(v) + "' needs a sink tail");
        break;
      case EmitterClass::countable_infinite:
        if (it == tails_.end() || it->second != TailKind::emitter_tail)
          throw std::invalid_argument("emitter '" + core_.vertex_id(v) + "' needs an emitter tail");
        break;
      case EmitterClass::regular:
        if (it != tails_.end())
          throw std::invalid_argument("tail anchored at regular vertex '" + core_.vertex_id(v) + "'");
        break;
    }
  }
}

std::string TailedGraph::serialize() const {
  std::ostringstream os;
  os << core_.serialize();
  for (const auto& [v, kind] : tails_) {
    if (kind == TailKind::sink_tail) {
      os << "tail " << core_.vertex_id(v) << " sink\n";
    } else {
      const CountableEmission* em = core_.countable_emission(v);
      os << "tail " << core_.vertex_id(v) << " emitter targets";
      for (size_t e : em->prefix) os << " " << core_.vertex_id(core_.edge(e).rng);
      os << " pattern";
      for (size_t pv : em->pattern) os << " " << core_.vertex_id(pv);
      os << "\n";
    }
  }
  return os.str();
}

TailedGraph desingularize(const Graph& g) {
  std::map<size_t, TailKind> tails;
  for (size_t v = 0; v < g.vertex_count(); ++v) {
    switch (g.emitter_class(v)) {
      case EmitterClass::uncountable_infinite:
        throw UncountableEmitterError(g.vertex_id(v));
      case EmitterClass::sink:
        tails[v] = TailKind::sink_tail;
        break;
      case EmitterClass::countable_infinite:
        tails[v] = TailKind::emitter_tail;
        break;
      case EmitterClass::regular:
        break;
    }
  }
  return TailedGraph(g, std::move(tails));
}

Graph truncate(const TailedGraph& tg, size_t depth) {
  if (depth < 1) throw std::invalid_argument("truncation depth must be >= 1");
  const Graph& core = tg.core();
  Graph out;
  out.set_name(core.name());
  for (size_t v = 0; v < core.vertex_count(); ++v) out.add_vertex(core.vertex_id(v));
  // Regular vertices keep their edges; anchors' enumerated edges are
  // redistributed below, so prefix edges are dropped here.
  for (size_t e = 0; e < core.edge_count(); ++e) {
    const Edge& ed = core.edge(e);
    if (core.emitter_class(ed.src) == EmitterClass::regular)
      out.add_edge(ed.id, core.vertex_id(ed.src), core.vertex_id(ed.rng));
  }
  for (const auto& [anchor, kind] : tg.tails()) {
    const std::string a = core.vertex_id(anchor);
    std::string prev = a;
    for (size_t j = 1; j <= depth; ++j) {
      std::string tv = a + ".v" + std::to_string(j);
      out.add_vertex(tv);
      out.add_edge(a + ".f" + std::to_string(j), prev, tv);
      if (kind == TailKind::emitter_tail) {
        size_t r = core.enumeration_range(anchor, j);
        out.add_edge(a + ".g" + std::to_string(j), prev, core.vertex_id(r));
      }
      prev = tv;
    }
  }
  out.validate();
  return out;
}

namespace {

// Finite model of the closed-path structure of F. Core vertices only: a
// closed path entering an emitter tail at its anchor and exiting at depth j
// collapses to a detour arc anchor -> r_j; the multiplicity of a detour
// target counts the depths that reach it (omega when the target recurs in
// the pattern). Sink tails never return, so they contribute nothing.
WalkModel tailed_model(const TailedGraph& tg) {
  const Graph& g = tg.core();
  WalkModel m;
  m.nodes = g.vertex_count();
  m.infinite_out.assign(m.nodes, 0);
  std::map<std::pair<size_t, size_t>, uint64_t> grouped;
  for (size_t v = 0; v < g.vertex_count(); ++v) {
    if (g.emitter_class(v) == EmitterClass::regular)
      for (size_t e : g.out_edges(v)) grouped[{v, g.edge(e).rng}] += 1;
  }
  for (const auto& [key, mult] : grouped) m.add_arc(key.first, key.second, mult, false);
  for (const auto& [anchor, kind] : tg.tails()) {
    if (kind != TailKind::emitter_tail) continue;
    const CountableEmission* em = g.countable_emission(anchor);
    std::map<size_t, uint64_t> prefix_mult;
    for (size_t e : em->prefix) prefix_mult[g.edge(e).rng] += 1;
    std::set<size_t> in_pattern(em->pattern.begin(), em->pattern.end());
    for (size_t r : in_pattern) {
      uint64_t pm = prefix_mult.count(r) ? prefix_mult[r] : 0;
      m.add_arc(anchor, r, pm == 0 ? 1 : pm, true);
      prefix_mult.erase(r);
    }
    for (const auto& [r, mult] : prefix_mult) m.add_arc(anchor, r, mult, false);
  }
  return m;
}

// Model restricted for closed paths based at tail vertex a_j: detours of the
// anchor with depth > j would pass through a_j, so only the first j
// enumeration entries are available inside the return walk.
WalkModel restricted_model(const TailedGraph& tg, size_t anchor, size_t j) {
  const Graph& g = tg.core();
  WalkModel m = tailed_model(tg);
  WalkModel out;
  out.nodes = m.nodes;
  out.infinite_out = m.infinite_out;
  for (const auto& a : m.arcs)
    if (a.from != anchor) out.arcs.push_back(a);
  std::map<size_t, uint64_t> mult;
  for (size_t i = 1; i <= j; ++i) mult[g.enumeration_range(anchor, i)] += 1;
  for (const auto& [r, k] : mult) out.add_arc(anchor, r, k, false);
  return out;
}

// Closed-simple-path count (capped at 2) based at tail vertex a_j: choose an
// exit depth j' > j, walk from r_{j'} back to the anchor in the restricted
// model, then ascend the tail to a_j again.
int tail_vertex_return_count(const TailedGraph& tg, size_t anchor, size_t j) {
  const Graph& g = tg.core();
  const CountableEmission* em = g.countable_emission(anchor);
  size_t k0 = em->prefix.size();
  WalkModel mj = restricted_model(tg, anchor, j);
  int total = 0;
  for (size_t jp = j + 1; jp <= k0; ++jp) {
    total = std::min(2, total + count_walks_capped(mj, g.enumeration_range(anchor, jp), anchor));
    if (total >= 2) return 2;
  }
  std::set<size_t> pattern(em->pattern.begin(), em->pattern.end());
  for (size_t r : pattern)
    if (count_walks_capped(mj, r, anchor) >= 1) return 2;  // infinitely many exit depths
  return total;
}

}  // namespace

TailedPredicates predicates_on_tailed(const TailedGraph& tg) {
  const Graph& g = tg.core();
  WalkModel m = tailed_model(tg);
  TailedPredicates out{};

  out.L = !exitless_cycle_exists(m);

  out.K = true;
  for (size_t v = 0; v < g.vertex_count() && out.K; ++v)
    if (count_based_returns_capped(m, v) == 1) out.K = false;
  for (const auto& [anchor, kind] : tg.tails()) {
    if (!out.K) break;
    if (kind != TailKind::emitter_tail) continue;  // sink tails never return
    const CountableEmission* em = g.countable_emission(anchor);
    size_t k0 = em->prefix.size(), period = em->pattern.size();
    // Counts stabilize once the restricted multiplicities saturate, one full
    // period past the point where every pattern target has recurred.
    for (size_t j = 1; j <= k0 + 2 * period && out.K; ++j)
      if (tail_vertex_return_count(tg, anchor, j) == 1) out.K = false;
  }

  // A hereditary saturated subset of F is (trace T on the core, one flag per
  // emitter tail). Valid traces are exactly the hereditary saturated subsets
  // of the core. For an anchor outside T the tail is empty, or co-finite
  // from depth B when every range from B+1 on lies in T and r_B does not;
  // that depth is unique when it exists.
  HSLattice lattice = hs_lattice(g);
  uint64_t count = 0;
  for (size_t i = 0; i < lattice.size(); ++i) {
    const std::set<size_t>& trace = lattice.members()[i];
    uint64_t options = 1;
    for (const auto& [anchor, kind] : tg.tails()) {
      if (kind != TailKind::emitter_tail || trace.count(anchor)) continue;
      const CountableEmission* em = g.countable_emission(anchor);
      bool pattern_inside = true;
      for (size_t pv : em->pattern) pattern_inside = pattern_inside && trace.count(pv);
      if (!pattern_inside) continue;
      size_t b = 0;
      for (size_t jp = 1; jp <= em->prefix.size(); ++jp)
        if (!trace.count(g.enumeration_range(anchor, jp))) b = jp;
      if (b >= 1) options *= 2;
    }
    count += options;
  }
  out.hs_count = count;
  out.cofinal = count == 2;
  return out;
}

TailedGraph parse_tailed_graph(const std::string& text) {
  // Split off tail lines, parse the rest as a plain graph.
  std::istringstream is(text);
  std::ostringstream core_text;
  std::vector<std::pair<int, std::vector<std::string>>> tail_lines;
  std::string raw;
  int n = 0;
  while (std::getline(is, raw)) {
    ++n;
    std::string stripped = raw;
    if (auto pos = stripped.find('#'); pos != std::string::npos) stripped = stripped.substr(0, pos);
    std::istringstream ls(stripped);
    std::vector<std::string> toks;
    std::string t;
    while (ls >> t) toks.push_back(t);
    if (!toks.empty() && toks[0] == "tail")
      tail_lines.emplace_back(n, toks);
    else
      core_text << raw << "\n";
  }
  Graph core = parse_graph(core_text.str());
  std::map<size_t, TailKind> tails;
  for (const auto& [line, toks] : tail_lines) {
    if (toks.size() < 3) throw ParseError(line, 1, "expected: tail <anchor> sink|emitter ...");
    auto v = core.vertex_index(toks[1]);
    if (!v) throw ParseError(line, 1, "tail anchored at undeclared vertex '" + toks[1] + "'");
    if (tails.count(*v)) throw ParseError(line, 1, "duplicate tail at '" + toks[1] + "'");
    if (toks[2] == "sink") {
      if (toks.size() != 3) throw ParseError(line, 1, "expected: tail <anchor> sink");
      if (core.emitter_class(*v) != EmitterClass::sink)
        throw ParseError(line, 1, "sink tail anchored at non-sink '" + toks[1] + "'");
      tails[*v] = TailKind::sink_tail;
    } else if (toks[2] == "emitter") {
      const CountableEmission* em = core.countable_emission(*v);
      if (!em)
        throw ParseError(line, 1, "emitter tail anchored at non-emitter '" + toks[1] + "'");
      // targets <prefix ranges...> pattern <...>, checked against the core
      // emitter declaration.
      size_t k = 3;
      if (k >= toks.size() || toks[k] != "targets")
        throw ParseError(line, 1, "expected: tail <anchor> emitter targets ... pattern ...");
      ++k;
      std::vector<std::string> targets;
      while (k < toks.size() && toks[k] != "pattern") targets.push_back(toks[k++]);
      if (k >= toks.size()) throw ParseError(line, 1, "emitter tail needs a pattern");
      std::vector<std::string> pattern(toks.begin() + k + 1, toks.end());
      if (targets.size() != em->prefix.size() || pattern.size() != em->pattern.size())
        throw ParseError(line, 1, "tail enumeration disagrees with the emitter declaration");
      for (size_t i = 0; i < targets.size(); ++i)
        if (targets[i] != core.vertex_id(core.edge(em->prefix[i]).rng))
          throw ParseError(line, 1, "tail enumeration disagrees with the emitter declaration");
      for (size_t i = 0; i < pattern.size(); ++i)
        if (pattern[i] != core.vertex_id(em->pattern[i]))
          throw ParseError(line, 1, "tail enumeration disagrees with the emitter declaration");
      tails[*v] = TailKind::emitter_tail;
    } else {
      throw ParseError(line, 1, "expected sink or emitter");
    }
  }
  return TailedGraph(std::move(core), std::move(tails));
}

}  // namespace lpa
