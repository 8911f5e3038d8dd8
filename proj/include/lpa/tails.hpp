#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "lpa/graph.hpp"

namespace lpa {

enum class TailKind { sink_tail, emitter_tail };

// Intensional representation of a desingularized graph F: the finite core
// (the original graph, unchanged) plus, for each anchor, an infinite tail
//   v_0 -f1-> v_1 -f2-> v_2 -> ...
// Emitter tails additionally redistribute the anchor's enumerated edges as
// g_j : v_{j-1} -> r(e_j); the targets come from the core's emitter
// declaration. Tail vertices never coincide with core vertices.
class TailedGraph {
 public:
  TailedGraph(Graph core, std::map<size_t, TailKind> tails);

  const Graph& core() const { return core_; }
  const std::map<size_t, TailKind>& tails() const { return tails_; }
  bool has_tail(size_t v) const { return tails_.count(v) != 0; }

  std::string serialize() const;

 private:
  Graph core_;
  std::map<size_t, TailKind> tails_;  // anchor vertex index -> kind
};

// Adds a tail at every sink and every countable emitter. Throws
// UncountableEmitterError when the graph has an uncountable emitter (no
// desingularization exists).
TailedGraph desingularize(const Graph& g);

// Finite window: core plus tail vertices <a>.v1 .. <a>.v<depth> with their
// f/g edges; the deepest tail vertex becomes a sink. An approximation for
// element-level computations only; the predicates below never use it.
Graph truncate(const TailedGraph& tg, size_t depth);

struct TailedPredicates {
  bool L;
  bool K;
  bool cofinal;
  uint64_t hs_count;
};

// Exact values of Condition (L), Condition (K), cofinality and the
// hereditary-saturated count for the infinite graph F, computed symbolically:
// closed paths through a tail fold into finitely many detour families, and a
// hereditary saturated subset of F is its core trace plus one co-finite or
// empty segment per emitter tail.
TailedPredicates predicates_on_tailed(const TailedGraph& tg);

// Parses the graph-file grammar extended with
//   tail <anchor> sink
//   tail <anchor> emitter targets [<v> ...] pattern <v> ...
TailedGraph parse_tailed_graph(const std::string& text);

}  // namespace lpa
