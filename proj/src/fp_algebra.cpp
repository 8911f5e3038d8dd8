#include "lpa/fp_algebra.hpp"

#include <algorithm>
#include <sstream>

#include "lpa/element.hpp"
#include "lpa/errors.hpp"

namespace lpa {

bool FpAlgebra::is_zero(const FpVec& v) const {
  for (uint32_t c : v)
    if (c) return false;
  return true;
}

FpVec FpAlgebra::basis(size_t i) const {
  FpVec v(dim, 0);
  v[i] = 1;
  return v;
}

FpVec FpAlgebra::add(const FpVec& x, const FpVec& y) const {
  FpVec v(dim);
  for (size_t i = 0; i < dim; ++i) v[i] = (x[i] + y[i]) % p;
  return v;
}

FpVec FpAlgebra::sub(const FpVec& x, const FpVec& y) const {
  FpVec v(dim);
  for (size_t i = 0; i < dim; ++i) v[i] = (x[i] + p - y[i] % p) % p;
  return v;
}

FpVec FpAlgebra::neg(const FpVec& x) const {
  FpVec v(dim);
  for (size_t i = 0; i < dim; ++i) v[i] = (p - x[i] % p) % p;
  return v;
}

FpVec FpAlgebra::scale(uint32_t c, const FpVec& x) const {
  FpVec v(dim);
  for (size_t i = 0; i < dim; ++i) v[i] = static_cast<uint32_t>(uint64_t(c) * x[i] % p);
  return v;
}

FpVec FpAlgebra::mul(const FpVec& x, const FpVec& y) const {
  FpVec v(dim, 0);
  for (size_t i = 0; i < dim; ++i) {
    if (x[i] == 0) continue;
    for (size_t j = 0; j < dim; ++j) {
      if (y[j] == 0) continue;
      uint64_t c = uint64_t(x[i]) * y[j] % p;
      const FpVec& t = table[i * dim + j];
      for (size_t k = 0; k < dim; ++k)
        if (t[k]) v[k] = static_cast<uint32_t>((v[k] + c * t[k]) % p);
    }
  }
  return v;
}

std::optional<uint64_t> FpAlgebra::carrier_size(uint64_t cap) const {
  uint64_t size = 1;
  for (size_t i = 0; i < dim; ++i) {
    if (size > cap / p) return std::nullopt;
    size *= p;
  }
  return size;
}

FpVec FpAlgebra::element_at(uint64_t index) const {
  FpVec v(dim);
  for (size_t i = 0; i < dim; ++i) {
    v[i] = static_cast<uint32_t>(index % p);
    index /= p;
  }
  return v;
}

std::string FpAlgebra::to_string(const FpVec& v) const {
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < dim; ++i) {
    if (!v[i]) continue;
    if (!first) os << " + ";
    if (v[i] != 1) os << v[i] << "*";
    os << (i < names.size() ? names[i] : "b" + std::to_string(i));
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

std::optional<FpVec> FpAlgebra::find_one() const {
  // x b_i = b_i and b_i x = b_i, stacked as one linear system in x.
  FpMat sys(2 * dim * dim, dim, p);
  FpVec rhs(2 * dim * dim, 0);
  for (size_t i = 0; i < dim; ++i) {
    for (size_t j = 0; j < dim; ++j) {
      // sum_k x_k (b_k b_i)_j = (b_i)_j
      for (size_t k = 0; k < dim; ++k) sys.at(i * dim + j, k) = table[k * dim + i][j];
      rhs[i * dim + j] = i == j ? 1 : 0;
      size_t row = dim * dim + i * dim + j;
      for (size_t k = 0; k < dim; ++k) sys.at(row, k) = table[i * dim + k][j];
      rhs[row] = i == j ? 1 : 0;
    }
  }
  auto x = solve(sys, rhs);
  if (!x) return std::nullopt;
  return *x;
}

std::optional<std::string> FpAlgebra::associativity_counterexample(uint64_t exhaustive_cap) const {
  for (size_t i = 0; i < dim; ++i)
    for (size_t j = 0; j < dim; ++j)
      for (size_t k = 0; k < dim; ++k) {
        FpVec lhs = mul(table[i * dim + j], basis(k));
        FpVec rhs = mul(basis(i), table[j * dim + k]);
        if (lhs != rhs)
          return "(b" + std::to_string(i) + " b" + std::to_string(j) + ") b" + std::to_string(k) +
                 " != b" + std::to_string(i) + " (b" + std::to_string(j) + " b" + std::to_string(k) + ")";
      }
  // Literal carrier sweep when the triple count stays within the cap; the
  // basis sweep above is already complete by trilinearity.
  if (auto size = carrier_size()) {
    if (*size <= 1 || *size * *size <= exhaustive_cap / *size) {
      for (uint64_t x = 0; x < *size; ++x)
        for (uint64_t y = 0; y < *size; ++y)
          for (uint64_t z = 0; z < *size; ++z) {
            FpVec a = element_at(x), b = element_at(y), c = element_at(z);
            if (mul(mul(a, b), c) != mul(a, mul(b, c)))
              return "(" + to_string(a) + ")(" + to_string(b) + ")(" + to_string(c) + ")";
          }
    }
  }
  return std::nullopt;
}

std::vector<FpVec> FpAlgebra::idempotents() const {
  auto size = carrier_size();
  if (!size) throw VerificationError("carrier too large to enumerate");
  std::vector<FpVec> out;
  for (uint64_t i = 0; i < *size; ++i) {
    FpVec v = element_at(i);
    if (is_idempotent(v)) out.push_back(v);
  }
  return out;
}

FpAlgebra fp_field(uint32_t p) {
  FpAlgebra a;
  a.p = p;
  a.dim = 1;
  a.table = {FpVec{1}};
  a.names = {"1"};
  a.one = FpVec{1};
  return a;
}

FpAlgebra matrix_over(const FpAlgebra& base, size_t n) {
  FpAlgebra a;
  a.p = base.p;
  a.dim = n * n * base.dim;
  a.table.assign(a.dim * a.dim, {});
  a.names.resize(a.dim);
  // basis index (i, j, k) -> ((i * n) + j) * base.dim + k
  auto idx = [&](size_t i, size_t j, size_t k) { return (i * n + j) * base.dim + k; };
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      for (size_t k = 0; k < base.dim; ++k) {
        std::string base_name = k < base.names.size() ? base.names[k] : "b" + std::to_string(k);
        a.names[idx(i, j, k)] = "E" + std::to_string(i + 1) + std::to_string(j + 1) +
                                (base.dim == 1 ? "" : "(" + base_name + ")");
      }
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      for (size_t k = 0; k < base.dim; ++k)
        for (size_t i2 = 0; i2 < n; ++i2)
          for (size_t j2 = 0; j2 < n; ++j2)
            for (size_t k2 = 0; k2 < base.dim; ++k2) {
              FpVec prod(a.dim, 0);
              if (j == i2) {
                const FpVec& t = base.table[k * base.dim + k2];
                for (size_t m = 0; m < base.dim; ++m)
                  if (t[m]) prod[idx(i, j2, m)] = t[m];
              }
              a.table[idx(i, j, k) * a.dim + idx(i2, j2, k2)] = std::move(prod);
            }
  if (base.one) {
    FpVec one(a.dim, 0);
    for (size_t i = 0; i < n; ++i)
      for (size_t k = 0; k < base.dim; ++k)
        one[idx(i, i, k)] = (*base.one)[k];
    a.one = one;
  }
  return a;
}

FpAlgebra matrix_algebra(uint32_t p, size_t n) { return matrix_over(fp_field(p), n); }

FpVec matrix_unit(const FpAlgebra& big, const FpAlgebra& base, size_t n, size_t i, size_t j,
                  const FpVec& b) {
  FpVec v(big.dim, 0);
  for (size_t k = 0; k < base.dim; ++k) v[(i * n + j) * base.dim + k] = b[k] % base.p;
  return v;
}

FpAlgebra lpa_algebra(const Graph& g, uint32_t p, uint64_t bound) {
  auto dim = dimension(g, bound);
  if (!dim) throw VerificationError("Leavitt path algebra of this graph is infinite dimensional");
  Field field = Field::modp(p);
  // Enumerate the normal-form basis through a zero-element normal form of
  // each candidate monomial: candidates are path pairs with a common range.
  std::vector<std::vector<size_t>> paths;
  std::vector<size_t> ranges;
  for (size_t v = 0; v < g.vertex_count(); ++v) {
    paths.push_back({});
    ranges.push_back(v);
  }
  for (size_t i = 0; i < paths.size(); ++i)
    for (size_t e : g.out_edges(ranges[i])) {
      auto ext = paths[i];
      ext.push_back(e);
      paths.push_back(std::move(ext));
      ranges.push_back(g.edge(e).rng);
    }
  std::vector<Monomial> basis;
  for (size_t i = 0; i < paths.size(); ++i)
    for (size_t j = 0; j < paths.size(); ++j) {
      if (ranges[i] != ranges[j]) continue;
      if (!paths[i].empty() && !paths[j].empty() && paths[i].back() == paths[j].back()) {
        size_t e = paths[i].back();
        if (g.designated_edge(g.edge(e).src) == e) continue;
      }
      basis.push_back(Monomial{paths[i], paths[j], ranges[i]});
    }
  std::sort(basis.begin(), basis.end(), [&](const Monomial& a, const Monomial& b) {
    return MonomialOrder{&g}(a, b);
  });
  std::map<Monomial, size_t, MonomialOrder> index(MonomialOrder{&g});
  for (size_t i = 0; i < basis.size(); ++i) index.emplace(basis[i], i);

  FpAlgebra a;
  a.p = p;
  a.dim = basis.size();
  a.table.assign(a.dim * a.dim, {});
  a.names.resize(a.dim);
  for (size_t i = 0; i < a.dim; ++i)
    a.names[i] = Element::monomial(&g, field, basis[i], Scalar::one(field)).to_string();
  for (size_t i = 0; i < a.dim; ++i)
    for (size_t j = 0; j < a.dim; ++j) {
      Element prod = multiply(Element::monomial(&g, field, basis[i], Scalar::one(field)),
                              Element::monomial(&g, field, basis[j], Scalar::one(field)));
      FpVec coords(a.dim, 0);
      for (const auto& [m, c] : prod.terms()) {
        auto it = index.find(m);
        if (it == index.end())
          throw VerificationError("normal form left the enumerated basis");
        coords[it->second] = static_cast<uint32_t>(std::stoul(c.to_string()));
      }
      a.table[i * a.dim + j] = std::move(coords);
    }
  FpVec one(a.dim, 0);
  for (size_t v = 0; v < g.vertex_count(); ++v)
    one[index.at(Monomial{{}, {}, v})] = 1;
  a.one = one;
  return a;
}

FpVec Subalgebra::embed(const FpAlgebra& ambient, const FpVec& sub_coords) const {
  FpVec v(ambient.dim, 0);
  for (size_t i = 0; i < embedding.size(); ++i) {
    if (!sub_coords[i]) continue;
    for (size_t k = 0; k < ambient.dim; ++k)
      v[k] = static_cast<uint32_t>((v[k] + uint64_t(sub_coords[i]) * embedding[i][k]) % ambient.p);
  }
  return v;
}

std::optional<FpVec> Subalgebra::lift(const FpVec& ambient_vec) const {
  return coordinates_in(embedding, ambient_vec, alg.p);
}

Subalgebra corner_algebra(const FpAlgebra& ambient, const FpVec& e) {
  std::vector<FpVec> span;
  for (size_t i = 0; i < ambient.dim; ++i)
    span.push_back(ambient.mul(ambient.mul(e, ambient.basis(i)), e));
  Subalgebra s;
  s.embedding = row_basis(span, ambient.p);
  s.alg.p = ambient.p;
  s.alg.dim = s.embedding.size();
  s.alg.table.assign(s.alg.dim * s.alg.dim, {});
  for (size_t i = 0; i < s.alg.dim; ++i) {
    s.alg.names.push_back(ambient.to_string(s.embedding[i]));
    for (size_t j = 0; j < s.alg.dim; ++j) {
      FpVec prod = ambient.mul(s.embedding[i], s.embedding[j]);
      auto coords = coordinates_in(s.embedding, prod, ambient.p);
      if (!coords) throw VerificationError("corner not closed under multiplication");
      s.alg.table[i * s.alg.dim + j] = *coords;
    }
  }
  if (ambient.is_idempotent(e)) s.alg.one = s.lift(e);
  return s;
}

LocalRing local_ring_at(const FpAlgebra& ambient, const FpVec& a) {
  LocalRing lr;
  lr.ambient = &ambient;
  lr.a = a;
  // Span of {a b_i a} with remembered preimages b_i.
  std::vector<FpVec> images;
  for (size_t i = 0; i < ambient.dim; ++i)
    images.push_back(ambient.mul(ambient.mul(a, ambient.basis(i)), a));
  lr.sub.embedding = row_basis(images, ambient.p);
  size_t d = lr.sub.embedding.size();
  // Preimage of each basis vector: solve a x a = basis vector, x expressed
  // over the ambient basis via the linear map x -> a x a.
  FpMat axa(ambient.dim, ambient.dim, ambient.p);
  for (size_t j = 0; j < ambient.dim; ++j)
    for (size_t i = 0; i < ambient.dim; ++i) axa.at(i, j) = images[j][i];
  for (size_t i = 0; i < d; ++i) {
    auto x = solve(axa, lr.sub.embedding[i]);
    if (!x) throw VerificationError("local ring basis has no preimage");
    lr.preimages.push_back(*x);
  }
  lr.sub.alg.p = ambient.p;
  lr.sub.alg.dim = d;
  lr.sub.alg.table.assign(d * d, {});
  for (size_t i = 0; i < d; ++i) {
    lr.sub.alg.names.push_back(ambient.to_string(lr.sub.embedding[i]));
    for (size_t j = 0; j < d; ++j) {
      // (a x a) . (a y a) = a x a y a
      FpVec prod = ambient.mul(lr.sub.embedding[i], ambient.mul(lr.preimages[j], a));
      auto coords = coordinates_in(lr.sub.embedding, prod, ambient.p);
      if (!coords) throw VerificationError("deformed product left the local ring");
      lr.sub.alg.table[i * d + j] = *coords;
    }
  }
  lr.sub.alg.one = lr.sub.alg.find_one();
  if (auto cx = lr.sub.alg.associativity_counterexample())
    throw VerificationError("deformed product not associative: " + *cx);
  return lr;
}

FpVec LocalRing::product(const FpVec& u, const FpVec& v) const {
  auto cu = sub.lift(u);
  auto cv = sub.lift(v);
  if (!cu || !cv) throw VerificationError("operand outside the local ring carrier");
  // u . v = u y a for any y with a y a = v
  FpVec y = ambient->zero();
  for (size_t i = 0; i < preimages.size(); ++i)
    if ((*cv)[i]) y = ambient->add(y, ambient->scale((*cv)[i], preimages[i]));
  return ambient->mul(u, ambient->mul(y, a));
}

std::vector<FpVec> LocalRing::carrier(uint64_t cap) const {
  auto size = sub.alg.carrier_size(cap);
  if (!size) throw VerificationError("carrier too large to enumerate");
  std::vector<FpVec> out;
  for (uint64_t i = 0; i < *size; ++i) out.push_back(sub.embed(*ambient, sub.alg.element_at(i)));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::pair<FpVec, FpVec>> regular_elements(const FpAlgebra& r, uint64_t cap) {
  auto size = r.carrier_size(cap);
  if (!size) throw VerificationError("carrier too large to enumerate");
  std::vector<std::pair<FpVec, FpVec>> out;
  for (uint64_t i = 0; i < *size; ++i) {
    FpVec a = r.element_at(i);
    // a itself witnesses when a^3 = a, so idempotents list as (e, e).
    std::optional<FpVec> witness;
    if (r.mul(r.mul(a, a), a) == a) witness = a;
    for (uint64_t j = 0; j < *size && !witness; ++j) {
      FpVec b = r.element_at(j);
      if (r.mul(r.mul(a, b), a) == a) witness = b;
    }
    if (witness) {
      FpVec nb = r.mul(r.mul(*witness, a), *witness);  // a nb a = a and nb a nb = nb
      out.emplace_back(a, nb);
    }
  }
  return out;
}

}  // namespace lpa
