#include "lpa/fp_linalg.hpp"

namespace lpa {

uint32_t fp_inv(uint32_t x, uint32_t p) {
  uint64_t result = 1, base = x % p, e = p - 2;
  while (e) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<uint32_t>(result);
}

std::vector<size_t> rref(FpMat& m) {
  std::vector<size_t> pivots;
  size_t row = 0;
  const uint64_t p = m.p;
  for (size_t col = 0; col < m.cols && row < m.rows; ++col) {
    size_t pivot = row;
    while (pivot < m.rows && m.at(pivot, col) == 0) ++pivot;
    if (pivot == m.rows) continue;
    for (size_t c = 0; c < m.cols; ++c) std::swap(m.at(row, c), m.at(pivot, c));
    uint64_t inv = fp_inv(m.at(row, col), m.p);
    for (size_t c = 0; c < m.cols; ++c)
      m.at(row, c) = static_cast<uint32_t>(m.at(row, c) * inv % p);
    for (size_t r = 0; r < m.rows; ++r) {
      if (r == row || m.at(r, col) == 0) continue;
      uint64_t f = m.at(r, col);
      for (size_t c = 0; c < m.cols; ++c)
        m.at(r, c) = static_cast<uint32_t>((m.at(r, c) + (p - f) * m.at(row, c)) % p);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

size_t rank(FpMat m) { return rref(m).size(); }

std::optional<FpVec> solve(const FpMat& a, const FpVec& b) {
  FpMat aug(a.rows, a.cols + 1, a.p);
  for (size_t r = 0; r < a.rows; ++r) {
    for (size_t c = 0; c < a.cols; ++c) aug.at(r, c) = a.at(r, c);
    aug.at(r, a.cols) = b[r] % a.p;
  }
  std::vector<size_t> pivots = rref(aug);
  for (size_t i = 0; i < pivots.size(); ++i)
    if (pivots[i] == a.cols) return std::nullopt;  // inconsistent
  FpVec x(a.cols, 0);
  for (size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug.at(i, a.cols);
  return x;
}

std::vector<FpVec> row_basis(const std::vector<FpVec>& rows, uint32_t p) {
  if (rows.empty()) return {};
  FpMat m(rows.size(), rows[0].size(), p);
  for (size_t r = 0; r < rows.size(); ++r)
    for (size_t c = 0; c < rows[r].size(); ++c) m.at(r, c) = rows[r][c] % p;
  std::vector<size_t> pivots = rref(m);
  std::vector<FpVec> basis;
  for (size_t i = 0; i < pivots.size(); ++i)
    basis.emplace_back(m.a.begin() + i * m.cols, m.a.begin() + (i + 1) * m.cols);
  return basis;
}

std::optional<FpVec> coordinates_in(const std::vector<FpVec>& basis, const FpVec& v, uint32_t p) {
  if (basis.empty()) {
    for (uint32_t c : v)
      if (c % p != 0) return std::nullopt;
    return FpVec{};
  }
  FpMat m(v.size(), basis.size(), p);  // columns are basis vectors
  for (size_t j = 0; j < basis.size(); ++j)
    for (size_t i = 0; i < v.size(); ++i) m.at(i, j) = basis[j][i] % p;
  return solve(m, v);
}

}  // namespace lpa
