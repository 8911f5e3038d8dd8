#pragma once

#include <memory>
#include <optional>
#include <string>

#include "lpa/element.hpp"
#include "lpa/report.hpp"
#include "lpa/tails.hpp"

namespace lpa {

// Corner Morita context witnessing that L_K(E) and L_K(F) are Morita
// equivalent, realized on a finite truncation window of F: S is the Leavitt
// path algebra of the window, p the sum of the original vertices, R = pSp,
// N = pS, M = Sp, pairings by multiplication. Elements are exact
// (infinite-dimensional carriers are fine; only single elements are ever
// materialized).
struct DesingContext {
  std::unique_ptr<Graph> window;  // stable address: elements point into it
  Field field;
  Element p;
  std::vector<size_t> core_vertices;  // window indices of the original E^0

  DesingContext(std::unique_ptr<Graph> w, Field f, Element p_, std::vector<size_t> core)
      : window(std::move(w)), field(f), p(std::move(p_)), core_vertices(std::move(core)) {}
};

// Throws UncountableEmitterError when E has an uncountable emitter.
DesingContext context_from_desingularization(const Graph& e, size_t depth, Field field);

// Sampled exact verification: p idempotent, context associativity
// (n,m)n' = n[m,n'] on random triples, fullness witnesses for every window
// vertex, and the corner construction u = yxsyxs with its homomorphism
// identity at the corner idempotent e (a vertex of E; the first one when
// unspecified).
Report verify_desing_context(const DesingContext& ctx, size_t samples, uint64_t seed,
                             const std::optional<std::string>& corner_vertex = std::nullopt);

}  // namespace lpa
