#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "lpa/desing_context.hpp"
#include "lpa/errors.hpp"
#include "lpa/fp_algebra.hpp"
#include "lpa/morita.hpp"
#include "test_util.hpp"

using namespace lpa;

namespace {

// Independent brute-force oracle: count elements a admitting b with aba = a.
size_t regular_count_oracle(const FpAlgebra& r) {
  uint64_t size = *r.carrier_size();
  size_t count = 0;
  for (uint64_t i = 0; i < size; ++i) {
    FpVec a = r.element_at(i);
    bool found = false;
    for (uint64_t j = 0; j < size && !found; ++j) {
      FpVec b = r.element_at(j);
      if (r.mul(r.mul(a, b), a) == a) found = true;
    }
    if (found) ++count;
  }
  return count;
}

FpVec unit(const FpAlgebra& m2, size_t i, size_t j) {
  // basis order of matrix_algebra(p, 2): E11, E12, E21, E22
  FpVec v = m2.zero();
  v[i * 2 + j] = 1;
  return v;
}

}  // namespace

TEST_CASE("algebra carriers multiply associatively") {
  CHECK_FALSE(matrix_algebra(2, 2).associativity_counterexample().has_value());
  CHECK_FALSE(matrix_algebra(3, 2).associativity_counterexample().has_value());
  Graph a2 = testing::corpus_graph("a2");
  CHECK_FALSE(lpa_algebra(a2, 2).associativity_counterexample().has_value());
}

TEST_CASE("finite-dimensional Leavitt path algebra carrier") {
  Graph a2 = testing::corpus_graph("a2");
  FpAlgebra alg = lpa_algebra(a2, 2);
  CHECK(alg.dim == 4);
  REQUIRE(alg.one.has_value());
  // the unit is the sum of the vertices
  FpVec one = *alg.one;
  CHECK(alg.mul(one, alg.basis(2)) == alg.basis(2));
  Graph loop = testing::corpus_graph("loop");
  CHECK_THROWS_AS(lpa_algebra(loop, 2), VerificationError);
}

TEST_CASE("a finite-dimensional Leavitt path algebra works as a carrier") {
  // L_{F_2}(A_2) is M_2(F_2) in disguise: 16 elements, all regular, and the
  // local-ring isomorphisms verify over it.
  Graph a2 = testing::corpus_graph("a2");
  FpAlgebra r = lpa_algebra(a2, 2);
  auto regs = regular_elements(r);
  CHECK(regs.size() == 16);
  CHECK(r.idempotents().size() == 8);
  for (const auto& [a, b] : regs) CHECK(isolocales_iso(r, a, b).all_ok());
}

TEST_CASE("regular elements of M_1(F_2)") {
  FpAlgebra r = matrix_algebra(2, 1);
  auto regs = regular_elements(r);
  REQUIRE(regs.size() == 2);
  CHECK(regs[0].first == FpVec{0});
  CHECK(regs[0].second == FpVec{0});
  CHECK(regs[1].first == FpVec{1});
  CHECK(regs[1].second == FpVec{1});
}

TEST_CASE("oversized carriers are rejected, not enumerated") {
  FpAlgebra big = matrix_algebra(5, 3);  // 5^9 elements
  CHECK_THROWS_AS(regular_elements(big), VerificationError);
}

TEST_CASE("regular element counts match the oracle") {
  // M_2(F_p) is semisimple, so every element is von Neumann regular.
  FpAlgebra m2f2 = matrix_algebra(2, 2);
  auto regs2 = regular_elements(m2f2);
  CHECK(regs2.size() == 16);
  CHECK(regs2.size() == regular_count_oracle(m2f2));
  FpAlgebra m2f3 = matrix_algebra(3, 2);
  auto regs3 = regular_elements(m2f3);
  CHECK(regs3.size() == 81);
  CHECK(regs3.size() == regular_count_oracle(m2f3));
}

TEST_CASE("witnesses satisfy both identities, idempotents witness themselves") {
  FpAlgebra r = matrix_algebra(2, 2);
  for (const auto& [a, b] : regular_elements(r)) {
    CHECK(r.mul(r.mul(a, b), a) == a);
    CHECK(r.mul(r.mul(b, a), b) == b);
    if (r.is_idempotent(a)) CHECK(b == a);
  }
}

TEST_CASE("local ring at an idempotent is the corner") {
  FpAlgebra r = matrix_algebra(2, 2);
  LocalRing lr = local_ring_at(r, unit(r, 0, 0));
  auto carrier = lr.carrier();
  CHECK(carrier.size() == 2);  // {0, E11} = F_2
  CHECK(lr.sub.alg.one.has_value());
}

TEST_CASE("local ring at a nilpotent") {
  FpAlgebra r = matrix_algebra(2, 2);
  FpVec e12 = unit(r, 0, 1);
  LocalRing lr = local_ring_at(r, e12);
  auto carrier = lr.carrier();
  REQUIRE(carrier.size() == 2);  // {0, E12}
  // deformed product: E12 . E12 = E12 x E12 y E12 with x = y = E21
  CHECK(lr.product(e12, e12) == e12);
}

TEST_CASE("local ring at zero is the zero ring") {
  FpAlgebra r = matrix_algebra(2, 2);
  LocalRing lr = local_ring_at(r, r.zero());
  CHECK(lr.carrier().size() == 1);
}

TEST_CASE("isolocales isomorphism for the nilpotent pair") {
  FpAlgebra r = matrix_algebra(2, 2);
  Report rep = isolocales_iso(r, unit(r, 0, 1), unit(r, 1, 0));
  CHECK(rep.all_ok());
}

TEST_CASE("isolocales with an idempotent and itself is the identity case") {
  FpAlgebra r = matrix_algebra(2, 2);
  FpVec e = unit(r, 0, 0);
  CHECK(isolocales_iso(r, e, e).all_ok());
}

TEST_CASE("isolocales witness validation") {
  FpAlgebra r = matrix_algebra(2, 2);
  FpVec a = unit(r, 0, 1);
  CHECK_THROWS_AS(isolocales_iso(r, a, a), VerificationError);  // a b a = 0 != a
  // b = E11 + E22 satisfies aba = a for a = E11 but not bab = b; the strict
  // mode rejects it, the default normalizes it away.
  FpVec e11 = unit(r, 0, 0);
  FpVec b = r.add(e11, unit(r, 1, 1));
  CHECK_THROWS_AS(isolocales_iso(r, e11, b, false), VerificationError);
  CHECK(isolocales_iso(r, e11, b).all_ok());
}

TEST_CASE("isolocales across every regular element") {
  for (uint32_t p : {2u, 3u}) {
    FpAlgebra r = matrix_algebra(p, 2);
    for (const auto& [a, b] : regular_elements(r)) {
      Report rep = isolocales_iso(r, a, b);
      CHECK_MESSAGE(rep.all_ok(), r.to_string(a));
    }
  }
}

TEST_CASE("context axioms hold for corner and matrix contexts") {
  FpAlgebra s = matrix_algebra(2, 2);
  MoritaContext corner = corner_context(s, unit(s, 0, 0));
  CHECK(corner.verify_axioms().all_ok());
  MoritaContext matrix = matrix_context(fp_field(2), 2);
  CHECK(matrix.verify_axioms().all_ok());
  // the context ring itself is associative
  CHECK_FALSE(corner.omega.associativity_counterexample(1 << 12).has_value());
}

TEST_CASE("equivlocal in a corner context gives u = e and the identity map") {
  FpAlgebra s = matrix_algebra(2, 2);
  FpVec p = unit(s, 0, 0);
  MoritaContext ctx = corner_context(s, p);
  // e = p embedded in the R block
  FpVec e = matrix_unit(ctx.omega, s, 2, 0, 0, p);
  EquivlocalResult res = equivlocal_construct(ctx, e, corner_decomposition(ctx, e));
  CHECK(res.report.all_ok());
  CHECK(res.n == 1);
  // u = pep pep = e, transported to the S block of Omega
  FpVec expected = matrix_unit(res.big, s, 2, 1, 1, p);
  CHECK(res.u == expected);
}

TEST_CASE("equivlocal in the matrix context, hand-checked decomposition") {
  FpAlgebra s = fp_field(2);
  MoritaContext ctx = matrix_context(s, 2);
  // e = E11 of M_2(F_2), decomposition via its single nonzero column
  FpVec e = matrix_unit(ctx.omega, s, 3, 0, 0, FpVec{1});
  auto decomp = matrix_decomposition(ctx, 2, e);
  REQUIRE(decomp.size() == 2);
  EquivlocalResult res = equivlocal_construct(ctx, e, decomp);
  CHECK(res.report.all_ok());
  // u is an idempotent of M_2(S) with corner isomorphic to F_2: rank of the
  // image space must be 1
  CHECK(res.big.is_idempotent(res.u));
}

TEST_CASE("equivlocal across every idempotent of M_2(F_2) and M_2(F_3)") {
  for (uint32_t p : {2u, 3u}) {
    FpAlgebra s = fp_field(p);
    FpAlgebra r = matrix_algebra(p, 2);
    MoritaContext ctx = matrix_context(s, 2);
    for (const FpVec& m : r.idempotents()) {
      FpVec e = ctx.omega.zero();
      for (size_t i = 0; i < 2; ++i)
        for (size_t j = 0; j < 2; ++j)
          e = ctx.omega.add(e, matrix_unit(ctx.omega, s, 3, i, j, FpVec{m[i * 2 + j]}));
      EquivlocalResult res = equivlocal_construct(ctx, e, matrix_decomposition(ctx, 2, e));
      CHECK_MESSAGE(res.report.all_ok(), r.to_string(m));
    }
  }
}

TEST_CASE("equivlocal rejects bad decompositions") {
  FpAlgebra s = fp_field(2);
  MoritaContext ctx = matrix_context(s, 2);
  FpVec e = matrix_unit(ctx.omega, s, 3, 0, 0, FpVec{1});
  auto decomp = matrix_decomposition(ctx, 2, e);
  decomp.pop_back();
  decomp.pop_back();
  CHECK_THROWS_AS(equivlocal_construct(ctx, e, decomp), VerificationError);
}

TEST_CASE("desigualdad on nested idempotent pairs") {
  FpAlgebra s = fp_field(2);
  FpAlgebra r = matrix_algebra(2, 2);
  MoritaContext ctx = matrix_context(s, 2);
  auto place = [&](const FpVec& m) {
    FpVec e = ctx.omega.zero();
    for (size_t i = 0; i < 2; ++i)
      for (size_t j = 0; j < 2; ++j)
        e = ctx.omega.add(e, matrix_unit(ctx.omega, s, 3, i, j, FpVec{m[i * 2 + j]}));
    return e;
  };
  FpVec id2 = r.add(unit(r, 0, 0), unit(r, 1, 1));
  // e = f: the diagram commutes trivially
  Report same = desigualdad_check(ctx, place(id2), place(id2), matrix_decomposition(ctx, 2, place(id2)));
  CHECK(same.all_ok());
  // e = E11 under f = 1
  Report nested =
      desigualdad_check(ctx, place(unit(r, 0, 0)), place(id2), matrix_decomposition(ctx, 2, place(id2)));
  CHECK(nested.all_ok());
  // e not under f
  CHECK_THROWS_AS(desigualdad_check(ctx, place(unit(r, 0, 0)), place(unit(r, 1, 1)),
                                    matrix_decomposition(ctx, 2, place(unit(r, 1, 1)))),
                  VerificationError);
}

TEST_CASE("sigma-unit ladder verification") {
  FpAlgebra r = matrix_algebra(2, 2);
  SigmaUnitLadder good{&r, {unit(r, 0, 0), *r.one, *r.one}};
  CHECK(good.verify().all_ok());
  // E11 and E22 are orthogonal, not nested
  SigmaUnitLadder bad{&r, {unit(r, 0, 0), unit(r, 1, 1)}};
  CHECK_FALSE(bad.verify().all_ok());
}

TEST_CASE("escalera windows for a unital ladder are plain matrix rings") {
  FpAlgebra r = matrix_algebra(2, 2);
  SigmaUnitLadder ladder{&r, {*r.one, *r.one, *r.one}};
  Report rep = escalera_window(r, ladder, 1);
  CHECK(rep.all_ok());
}

TEST_CASE("escalera window n=1 for the E11 ladder") {
  FpAlgebra r = matrix_algebra(2, 2);
  SigmaUnitLadder ladder{&r, {unit(r, 0, 0), *r.one, *r.one}};
  CHECK(ladder.verify().all_ok());
  CHECK(escalera_window(r, ladder, 1).all_ok());
  CHECK(escalera_window(r, ladder, 2).all_ok());
  CHECK_THROWS_AS(escalera_window(r, ladder, 5), VerificationError);  // window overflow
}

TEST_CASE("desingularization corner context verifies on sampled pairs") {
  Graph a2 = testing::corpus_graph("a2");
  DesingContext ctx = context_from_desingularization(a2, 8, Field::rationals());
  Report rep = verify_desing_context(ctx, 50, 0);
  CHECK(rep.all_ok());
  Graph g5 = testing::corpus_graph("mixed");
  DesingContext ctx5 = context_from_desingularization(g5, 8, Field::rationals());
  CHECK(verify_desing_context(ctx5, 50, 0).all_ok());
  // loop graph needs no tails: the context is the ring against itself
  Graph loop = testing::corpus_graph("loop");
  DesingContext ctxl = context_from_desingularization(loop, 3, Field::rationals());
  CHECK(verify_desing_context(ctxl, 25, 0).all_ok());
}

TEST_CASE("desingularization context rejects uncountable emitters") {
  Graph g6 = testing::corpus_graph("uncountable");
  CHECK_THROWS_AS(context_from_desingularization(g6, 4, Field::rationals()),
                  UncountableEmitterError);
}
