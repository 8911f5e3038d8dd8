#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lpa/fp_linalg.hpp"
#include "lpa/graph.hpp"
#include "lpa/rng.hpp"
#include "lpa/scalar.hpp"

namespace lpa {

// Finite-dimensional associative F_p-algebra presented by a basis and
// structure constants. Elements are coordinate vectors. This one carrier
// shape covers everything the verification layer touches: M_n(F_p),
// finite-dimensional Leavitt path algebras, matrix rings over either, and
// their corners and local rings.
class FpAlgebra {
 public:
  uint32_t p = 2;
  size_t dim = 0;
  // table[i * dim + j] = coordinates of basis_i * basis_j
  std::vector<FpVec> table;
  std::vector<std::string> names;
  std::optional<FpVec> one;

  FpVec zero() const { return FpVec(dim, 0); }
  bool is_zero(const FpVec& v) const;
  FpVec basis(size_t i) const;
  FpVec add(const FpVec& x, const FpVec& y) const;
  FpVec sub(const FpVec& x, const FpVec& y) const;
  FpVec neg(const FpVec& x) const;
  FpVec scale(uint32_t c, const FpVec& x) const;
  FpVec mul(const FpVec& x, const FpVec& y) const;
  bool eq(const FpVec& x, const FpVec& y) const { return x == y; }
  bool is_idempotent(const FpVec& x) const { return mul(x, x) == x; }

  // Carrier size p^dim, or nullopt when it exceeds `cap`.
  std::optional<uint64_t> carrier_size(uint64_t cap = 1ull << 16) const;
  FpVec element_at(uint64_t index) const;  // mixed-radix enumeration

  std::string to_string(const FpVec& v) const;

  // Solves x * b_i = b_i = b_i * x for all i; nullopt for non-unital
  // carriers.
  std::optional<FpVec> find_one() const;

  // Exhaustive associativity check on basis triples (complete, by
  // trilinearity) plus a literal sweep over all carrier triples when their
  // count stays within `exhaustive_cap`. Returns a violating triple
  // description, or nullopt.
  std::optional<std::string> associativity_counterexample(uint64_t exhaustive_cap = 1ull << 12) const;

  std::vector<FpVec> idempotents() const;  // carrier must be enumerable
};

FpAlgebra fp_field(uint32_t p);
FpAlgebra matrix_algebra(uint32_t p, size_t n);              // M_n(F_p)
FpAlgebra matrix_over(const FpAlgebra& base, size_t n);      // M_n(base)
// Finite-dimensional Leavitt path algebra of a finite acyclic graph; throws
// VerificationError when the dimension is not finite.
FpAlgebra lpa_algebra(const Graph& g, uint32_t p, uint64_t bound = 1u << 16);

// Matrix-unit helper for matrix_over(base, n): the element E_{ij} (x) b.
FpVec matrix_unit(const FpAlgebra& big, const FpAlgebra& base, size_t n, size_t i, size_t j,
                  const FpVec& b);

// Subalgebra presented on its own basis together with the embedding into the
// ambient algebra. `lift` maps ambient coordinates into subalgebra
// coordinates (ambient value must lie in the span).
struct Subalgebra {
  FpAlgebra alg;
  std::vector<FpVec> embedding;  // subalgebra basis as ambient vectors

  FpVec embed(const FpAlgebra& ambient, const FpVec& sub_coords) const;
  std::optional<FpVec> lift(const FpVec& ambient_vec) const;
};

// Corner eAe for an idempotent e: same product, basis extracted from
// {e b_i e}.
Subalgebra corner_algebra(const FpAlgebra& ambient, const FpVec& e);

// Local ring at an arbitrary element a: carrier aAa with the deformed
// product axa . aya = axaya. Keeps one ambient preimage per basis vector to
// realize the product.
struct LocalRing {
  const FpAlgebra* ambient;
  FpVec a;
  Subalgebra sub;                  // sub.alg carries the deformed product
  std::vector<FpVec> preimages;    // x_i with a x_i a = basis_i (ambient coords)

  // Deformed product directly on ambient representatives.
  FpVec product(const FpVec& u, const FpVec& v) const;
  // All carrier elements (ambient coordinates); requires enumerability.
  std::vector<FpVec> carrier(uint64_t cap = 1ull << 16) const;
};

LocalRing local_ring_at(const FpAlgebra& ambient, const FpVec& a);

// All von Neumann regular elements with one witness each, the witness
// normalized to satisfy both a b a = a and b a b = b. Requires an
// enumerable carrier.
std::vector<std::pair<FpVec, FpVec>> regular_elements(const FpAlgebra& r, uint64_t cap = 1ull << 16);

}  // namespace lpa
