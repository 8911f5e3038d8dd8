#pragma once

#include <string>
#include <tuple>
#include <vector>

#include "lpa/fp_algebra.hpp"
#include "lpa/report.hpp"

namespace lpa {

// The isomorphism R_a -> R_{ab} for a von Neumann regular element a with
// witness b, given by ara -> arab. The witness is normalized through
// b -> bab unless `normalize_witness` is false, in which case a witness with
// bab != b is rejected. Verifies bijectivity, additivity and
// multiplicativity exhaustively over the carrier.
Report isolocales_iso(const FpAlgebra& r, const FpVec& a, const FpVec& b,
                      bool normalize_witness = true);

// Morita context (R, S, N, M) realized inside an ambient matrix algebra
// Omega with two orthogonal idempotents: R = piR Omega piR, S = piS Omega
// piS, N = piR Omega piS, M = piS Omega piR, both pairings given by the
// ambient product.
struct MoritaContext {
  FpAlgebra omega;
  FpVec pi_r, pi_s;

  bool in_R(const FpVec& z) const;
  bool in_S(const FpVec& z) const;
  bool in_N(const FpVec& z) const;
  bool in_M(const FpVec& z) const;

  // Context-ring sanity: associativity conditions (n,m)n' = n[m,n'] and
  // [m,n]m' = m(n,m') on basis triples, and piR/piS orthogonality.
  Report verify_axioms() const;
};

// Corner context for an idempotent p in S: R = pSp, N = pS, M = Sp.
MoritaContext corner_context(const FpAlgebra& s, const FpVec& p);

// Matrix context: R = M_n(S), N the column space, M the row space.
MoritaContext matrix_context(const FpAlgebra& s, size_t n);

// Standard decomposition of an idempotent e of R as sum x_i s_i y_i:
// (p, e, p) for a corner context, columns/unit rows for a matrix context.
std::vector<std::tuple<FpVec, FpVec, FpVec>> corner_decomposition(const MoritaContext& ctx,
                                                                  const FpVec& e);
std::vector<std::tuple<FpVec, FpVec, FpVec>> matrix_decomposition(const MoritaContext& ctx,
                                                                  size_t n, const FpVec& e);

struct EquivlocalResult {
  size_t n = 0;        // decomposition length
  FpAlgebra big;       // M_n(Omega)
  FpVec u;             // the constructed idempotent y x s y x s
  Report report;
};

// Builds u = y x s y x s and phi(ere) = y (ere) x s from a decomposition of
// the idempotent e, and verifies exactly: u is idempotent, u lies in
// M_n(S), phi is additive, multiplicative, injective and onto u M_n(S) u.
EquivlocalResult equivlocal_construct(const MoritaContext& ctx, const FpVec& e,
                                      const std::vector<std::tuple<FpVec, FpVec, FpVec>>& decomposition);

// For nested idempotents e <= f (e = fef), builds v from f's decomposition
// and u from t = s y e x s, and verifies u^2 = u, u <= v, and that the
// square formed by the two isomorphisms and the inclusions commutes.
Report desigualdad_check(const MoritaContext& ctx, const FpVec& e, const FpVec& f,
                         const std::vector<std::tuple<FpVec, FpVec, FpVec>>& decomposition_f);

// Finite prefix of a sigma-unit: idempotents with e_n = e_n e_{n+1} =
// e_{n+1} e_n.
struct SigmaUnitLadder {
  const FpAlgebra* ring;
  std::vector<FpVec> idempotents;

  Report verify() const;
};

// Window verification of the direct-limit identity
//   FM(R)_{diag(e_n,...)} ~ M_{2^n}(R)_{diag(e_n,...)} ~ M_{2^n}(R_{e_n})
// at stage n, including the transition monomorphism x -> diag(x, 0) into
// stage n+1. Throws VerificationError when the window would not fit.
Report escalera_window(const FpAlgebra& r, const SigmaUnitLadder& ladder, size_t n,
                       size_t dim_cap = 1024);

}  // namespace lpa
