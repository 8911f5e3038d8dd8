#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace lpa {

using FpVec = std::vector<uint32_t>;

// Dense matrix over F_p, row major. Desk-scale only.
struct FpMat {
  size_t rows = 0, cols = 0;
  uint32_t p = 2;
  std::vector<uint32_t> a;

  FpMat() = default;
  FpMat(size_t r, size_t c, uint32_t p) : rows(r), cols(c), p(p), a(r * c, 0) {}
  uint32_t& at(size_t r, size_t c) { return a[r * cols + c]; }
  uint32_t at(size_t r, size_t c) const { return a[r * cols + c]; }
};

uint32_t fp_inv(uint32_t x, uint32_t p);

// In-place reduced row echelon form; returns pivot columns.
std::vector<size_t> rref(FpMat& m);

size_t rank(FpMat m);

// Solves A x = b; nullopt when inconsistent. Free variables are set to 0.
std::optional<FpVec> solve(const FpMat& a, const FpVec& b);

// Row space basis of the given vectors.
std::vector<FpVec> row_basis(const std::vector<FpVec>& rows, uint32_t p);

// Expresses v in terms of the basis rows; nullopt when v is outside the
// span.
std::optional<FpVec> coordinates_in(const std::vector<FpVec>& basis, const FpVec& v, uint32_t p);

}  // namespace lpa
