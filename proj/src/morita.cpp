#include "lpa/morita.hpp"

#include <algorithm>
#include <set>

#include "lpa/errors.hpp"

namespace lpa {

namespace {

// Multiply a list of ambient vectors left to right.
FpVec chain_mul(const FpAlgebra& a, std::initializer_list<const FpVec*> xs) {
  FpVec acc;
  bool first = true;
  for (const FpVec* x : xs) {
    acc = first ? *x : a.mul(acc, *x);
    first = false;
  }
  return acc;
}

// Linear map between coordinate algebras, given by the images of the source
// basis expressed in target coordinates.
struct LinearMap {
  const FpAlgebra* src;
  const FpAlgebra* dst;
  std::vector<FpVec> images;  // src basis -> dst coords

  FpVec apply(const FpVec& v) const {
    FpVec out = dst->zero();
    for (size_t i = 0; i < src->dim; ++i)
      if (v[i]) out = dst->add(out, dst->scale(v[i], images[i]));
    return out;
  }
  bool injective() const {
    FpMat m(images.size(), dst->dim, dst->p);
    for (size_t r = 0; r < images.size(); ++r)
      for (size_t c = 0; c < dst->dim; ++c) m.at(r, c) = images[r][c];
    return rank(std::move(m)) == src->dim;
  }
  // Multiplicativity on all basis pairs; complete by bilinearity.
  bool multiplicative(std::string* counterexample = nullptr) const {
    for (size_t i = 0; i < src->dim; ++i)
      for (size_t j = 0; j < src->dim; ++j) {
        FpVec lhs = apply(src->table[i * src->dim + j]);
        FpVec rhs = dst->mul(images[i], images[j]);
        if (lhs != rhs) {
          if (counterexample)
            *counterexample = "basis pair (" + std::to_string(i) + "," + std::to_string(j) + ")";
          return false;
        }
      }
    return true;
  }
};

}  // namespace

// ---------------------------------------------------------------------------
// Local ring isomorphism of a regular element

Report isolocales_iso(const FpAlgebra& r, const FpVec& a, const FpVec& b_in,
                      bool normalize_witness) {
  Report rep;
  if (r.mul(r.mul(a, b_in), a) != a)
    throw VerificationError("witness fails a b a = a");
  FpVec b = b_in;
  if (r.mul(r.mul(b, a), b) != b) {
    if (!normalize_witness) throw VerificationError("witness fails b a b = b");
    b = r.mul(r.mul(b, a), b);
  }
  FpVec e = r.mul(a, b);
  rep.add("e = ab idempotent", r.is_idempotent(e));

  LocalRing ra = local_ring_at(r, a);
  LocalRing re = local_ring_at(r, e);  // coincides with the corner eRe
  std::vector<FpVec> ca = ra.carrier();
  std::vector<FpVec> ce = re.carrier();
  rep.add("carrier sizes match", ca.size() == ce.size(),
          std::to_string(ca.size()) + " vs " + std::to_string(ce.size()));

  // phi(ara) = arab
  std::set<FpVec> image;
  std::set<FpVec> target(ce.begin(), ce.end());
  bool into = true;
  for (const FpVec& u : ca) {
    FpVec img = r.mul(u, b);
    image.insert(img);
    into = into && target.count(img) > 0;
  }
  rep.add("phi maps into R_e", into);
  rep.add("phi bijective", image.size() == ca.size() && image == target);

  bool additive = true, multiplicative = true;
  for (const FpVec& u : ca)
    for (const FpVec& v : ca) {
      if (r.mul(r.add(u, v), b) != r.add(r.mul(u, b), r.mul(v, b))) additive = false;
      // deformed product on the source, corner (ambient) product on the
      // target
      FpVec lhs = r.mul(ra.product(u, v), b);
      FpVec rhs = r.mul(r.mul(u, b), r.mul(v, b));
      if (lhs != rhs) multiplicative = false;
    }
  rep.add("phi additive", additive);
  rep.add("phi multiplicative", multiplicative);
  return rep;
}

// ---------------------------------------------------------------------------
// Morita contexts

bool MoritaContext::in_R(const FpVec& z) const {
  return chain_mul(omega, {&pi_r, &z, &pi_r}) == z;
}
bool MoritaContext::in_S(const FpVec& z) const {
  return chain_mul(omega, {&pi_s, &z, &pi_s}) == z;
}
bool MoritaContext::in_N(const FpVec& z) const {
  return chain_mul(omega, {&pi_r, &z, &pi_s}) == z;
}
bool MoritaContext::in_M(const FpVec& z) const {
  return chain_mul(omega, {&pi_s, &z, &pi_r}) == z;
}

Report MoritaContext::verify_axioms() const {
  Report rep;
  rep.add("piR idempotent", omega.is_idempotent(pi_r));
  rep.add("piS idempotent", omega.is_idempotent(pi_s));
  rep.add("piR piS orthogonal",
          omega.is_zero(omega.mul(pi_r, pi_s)) && omega.is_zero(omega.mul(pi_s, pi_r)));
  // (n, m) n' = n [m, n'] and [m, n] m' = m (n, m') with both pairings the
  // ambient product: associativity over the projected basis triples.
  bool assoc = true;
  for (size_t i = 0; i < omega.dim && assoc; ++i)
    for (size_t j = 0; j < omega.dim && assoc; ++j)
      for (size_t k = 0; k < omega.dim && assoc; ++k) {
        FpVec bi = omega.basis(i), bj = omega.basis(j), bk = omega.basis(k);
        FpVec n = chain_mul(omega, {&pi_r, &bi, &pi_s});
        FpVec m = chain_mul(omega, {&pi_s, &bj, &pi_r});
        FpVec n2 = chain_mul(omega, {&pi_r, &bk, &pi_s});
        FpVec m2 = chain_mul(omega, {&pi_s, &bk, &pi_r});
        if (omega.mul(omega.mul(n, m), n2) != omega.mul(n, omega.mul(m, n2))) assoc = false;
        if (omega.mul(omega.mul(m, n), m2) != omega.mul(m, omega.mul(n, m2))) assoc = false;
      }
  rep.add("context associativity conditions", assoc);
  // Surjectivity witnesses: the pairings span R and S.
  std::vector<FpVec> nm, mn, r_span, s_span;
  for (size_t i = 0; i < omega.dim; ++i)
    for (size_t j = 0; j < omega.dim; ++j) {
      FpVec bi = omega.basis(i), bj = omega.basis(j);
      FpVec n = chain_mul(omega, {&pi_r, &bi, &pi_s});
      FpVec m = chain_mul(omega, {&pi_s, &bj, &pi_r});
      nm.push_back(omega.mul(n, m));
      mn.push_back(omega.mul(m, n));
    }
  for (size_t i = 0; i < omega.dim; ++i) {
    FpVec bi = omega.basis(i);
    r_span.push_back(chain_mul(omega, {&pi_r, &bi, &pi_r}));
    s_span.push_back(chain_mul(omega, {&pi_s, &bi, &pi_s}));
  }
  rep.add("pairing (N, M) spans R", row_basis(nm, omega.p).size() == row_basis(r_span, omega.p).size());
  rep.add("pairing [M, N] spans S", row_basis(mn, omega.p).size() == row_basis(s_span, omega.p).size());
  return rep;
}

MoritaContext corner_context(const FpAlgebra& s, const FpVec& p) {
  if (!s.is_idempotent(p)) throw VerificationError("corner context needs an idempotent");
  if (!s.one) throw VerificationError("corner context needs a unital ambient ring");
  MoritaContext ctx;
  ctx.omega = matrix_over(s, 2);
  ctx.pi_r = matrix_unit(ctx.omega, s, 2, 0, 0, p);
  ctx.pi_s = matrix_unit(ctx.omega, s, 2, 1, 1, *s.one);
  return ctx;
}

MoritaContext matrix_context(const FpAlgebra& s, size_t n) {
  if (!s.one) throw VerificationError("matrix context needs a unital base ring");
  MoritaContext ctx;
  ctx.omega = matrix_over(s, n + 1);
  ctx.pi_r = ctx.omega.zero();
  for (size_t i = 0; i < n; ++i)
    ctx.pi_r = ctx.omega.add(ctx.pi_r, matrix_unit(ctx.omega, s, n + 1, i, i, *s.one));
  ctx.pi_s = matrix_unit(ctx.omega, s, n + 1, n, n, *s.one);
  return ctx;
}

std::vector<std::tuple<FpVec, FpVec, FpVec>> corner_decomposition(const MoritaContext& ctx,
                                                                  const FpVec& e) {
  // e = p e p with x = p (as an element of N), s = e (moved into the S
  // corner), y = p (in M). In the block realization: x = E12 p', s = E22 e',
  // y = E21 p' for the base-ring entries p', e'.
  const FpAlgebra& omega = ctx.omega;
  size_t base_dim = omega.dim / 4;  // omega = M_2(base)
  auto block = [&](const FpVec& z, size_t i, size_t j) {
    FpVec v(base_dim, 0);
    for (size_t k = 0; k < base_dim; ++k) v[k] = z[(i * 2 + j) * base_dim + k];
    return v;
  };
  auto place = [&](const FpVec& v, size_t i, size_t j) {
    FpVec z = omega.zero();
    for (size_t k = 0; k < base_dim; ++k) z[(i * 2 + j) * base_dim + k] = v[k];
    return z;
  };
  FpVec p_base = block(ctx.pi_r, 0, 0);
  FpVec e_base = block(e, 0, 0);
  return {{place(p_base, 0, 1), place(e_base, 1, 1), place(p_base, 1, 0)}};
}

std::vector<std::tuple<FpVec, FpVec, FpVec>> matrix_decomposition(const MoritaContext& ctx,
                                                                  size_t n, const FpVec& e) {
  // e = sum over columns: x_i = (i-th column of e), s_i = 1, y_i = (i-th
  // unit row). Everything lives in Omega = M_{n+1}(base).
  const FpAlgebra& omega = ctx.omega;
  size_t base_dim = omega.dim / ((n + 1) * (n + 1));
  auto entry = [&](const FpVec& z, size_t i, size_t j) {
    FpVec v(base_dim, 0);
    for (size_t k = 0; k < base_dim; ++k) v[k] = z[(i * (n + 1) + j) * base_dim + k];
    return v;
  };
  auto place = [&](const FpVec& v, size_t i, size_t j, FpVec z) {
    for (size_t k = 0; k < base_dim; ++k) z[(i * (n + 1) + j) * base_dim + k] = v[k];
    return z;
  };
  FpVec one_s = entry(ctx.pi_s, n, n);
  std::vector<std::tuple<FpVec, FpVec, FpVec>> out;
  for (size_t col = 0; col < n; ++col) {
    FpVec x = omega.zero();
    for (size_t row = 0; row < n; ++row) x = place(entry(e, row, col), row, n, x);
    FpVec s = place(one_s, n, n, omega.zero());
    FpVec y = place(one_s, n, col, omega.zero());
    out.emplace_back(x, s, y);
  }
  return out;
}

namespace {

struct EquivlocalPieces {
  FpAlgebra big;  // M_n(Omega)
  FpVec X, Y, S, u;
};

EquivlocalPieces build_pieces(const MoritaContext& ctx,
                              const std::vector<std::tuple<FpVec, FpVec, FpVec>>& decomposition) {
  size_t n = decomposition.size();
  EquivlocalPieces p;
  p.big = matrix_over(ctx.omega, n);
  p.X = p.big.zero();
  p.Y = p.big.zero();
  p.S = p.big.zero();
  for (size_t i = 0; i < n; ++i) {
    const auto& [x, s, y] = decomposition[i];
    p.X = p.big.add(p.X, matrix_unit(p.big, ctx.omega, n, 0, i, x));
    p.Y = p.big.add(p.Y, matrix_unit(p.big, ctx.omega, n, i, 0, y));
    p.S = p.big.add(p.S, matrix_unit(p.big, ctx.omega, n, i, i, s));
  }
  FpVec yxs = chain_mul(p.big, {&p.Y, &p.X, &p.S});
  p.u = p.big.mul(yxs, yxs);
  return p;
}

// Projector onto the M_n(S) part of M_n(Omega).
FpVec mn_s_projector(const MoritaContext& ctx, const FpAlgebra& big, size_t n) {
  FpVec ps = big.zero();
  for (size_t i = 0; i < n; ++i)
    ps = big.add(ps, matrix_unit(big, ctx.omega, n, i, i, ctx.pi_s));
  return ps;
}

}  // namespace

EquivlocalResult equivlocal_construct(
    const MoritaContext& ctx, const FpVec& e,
    const std::vector<std::tuple<FpVec, FpVec, FpVec>>& decomposition) {
  const FpAlgebra& omega = ctx.omega;
  if (decomposition.empty()) throw VerificationError("empty decomposition");
  if (!omega.is_idempotent(e) || !ctx.in_R(e))
    throw VerificationError("e must be an idempotent of R");
  FpVec sum = omega.zero();
  for (const auto& [x, s, y] : decomposition) {
    if (!ctx.in_N(x) || !ctx.in_S(s) || !ctx.in_M(y))
      throw VerificationError("decomposition entries must lie in N x S x M");
    sum = omega.add(sum, chain_mul(omega, {&x, &s, &y}));
  }
  if (sum != e) throw VerificationError("decomposition does not sum to e");

  EquivlocalResult res;
  res.n = decomposition.size();
  EquivlocalPieces p = build_pieces(ctx, decomposition);
  res.big = p.big;
  res.u = p.u;
  Report& rep = res.report;

  if (!p.big.is_idempotent(p.u))
    throw VerificationError("u^2 != u: context axioms are broken");
  rep.add("u idempotent", true);
  FpVec ps = mn_s_projector(ctx, p.big, res.n);
  rep.add("u lies in M_n(S)", chain_mul(p.big, {&ps, &p.u, &ps}) == p.u);

  // phi(z) = Y z X S, with z placed in the top-left Omega slot.
  auto phi = [&](const FpVec& z) {
    FpVec zz = matrix_unit(p.big, omega, res.n, 0, 0, z);
    return chain_mul(p.big, {&p.Y, &zz, &p.X, &p.S});
  };

  // Basis of eRe inside Omega.
  std::vector<FpVec> gens;
  for (size_t i = 0; i < omega.dim; ++i) {
    FpVec b = omega.basis(i);
    gens.push_back(chain_mul(omega, {&e, &b, &e}));
  }
  std::vector<FpVec> ere_basis = row_basis(gens, omega.p);

  // Well-defined into u big u.
  bool into = true;
  std::vector<FpVec> images;
  for (const FpVec& z : ere_basis) {
    FpVec img = phi(z);
    images.push_back(img);
    into = into && chain_mul(p.big, {&p.u, &img, &p.u}) == img &&
           chain_mul(p.big, {&ps, &img, &ps}) == img;
  }
  rep.add("phi maps into u M_n(S) u", into);

  // Injective: rank of the linear map equals dim eRe.
  {
    FpMat m(images.size(), p.big.dim, p.big.p);
    for (size_t r = 0; r < images.size(); ++r)
      for (size_t c = 0; c < p.big.dim; ++c) m.at(r, c) = images[r][c];
    rep.add("phi injective", rank(std::move(m)) == ere_basis.size());
  }

  // Surjective onto u M_n(S) u.
  {
    std::vector<FpVec> tgens;
    for (size_t i = 0; i < p.big.dim; ++i) {
      FpVec b = p.big.basis(i);
      FpVec s_part = chain_mul(p.big, {&ps, &b, &ps});
      tgens.push_back(chain_mul(p.big, {&p.u, &s_part, &p.u}));
    }
    std::vector<FpVec> target = row_basis(tgens, p.big.p);
    bool contained = true;
    for (const FpVec& img : images)
      contained = contained && coordinates_in(target, img, p.big.p).has_value();
    std::vector<FpVec> img_basis = row_basis(images, p.big.p);
    rep.add("phi surjective onto u M_n(S) u",
            contained && img_basis.size() == target.size(),
            "image rank " + std::to_string(img_basis.size()) + ", target rank " +
                std::to_string(target.size()));
  }

  // Additivity and multiplicativity; exhaustive over the carrier when it is
  // small, otherwise on spanning pairs (complete by bilinearity).
  {
    size_t d = ere_basis.size();
    bool additive = true, multiplicative = true;
    uint64_t carrier = 1;
    bool small = true;
    for (size_t i = 0; i < d; ++i) {
      if (carrier > 256) { small = false; break; }
      carrier *= omega.p;
    }
    auto element_of = [&](uint64_t idx) {
      FpVec z = omega.zero();
      for (size_t i = 0; i < d; ++i) {
        uint32_t c = static_cast<uint32_t>(idx % omega.p);
        idx /= omega.p;
        if (c) z = omega.add(z, omega.scale(c, ere_basis[i]));
      }
      return z;
    };
    if (small && carrier <= 256) {
      for (uint64_t i = 0; i < carrier; ++i)
        for (uint64_t j = 0; j < carrier; ++j) {
          FpVec zi = element_of(i), zj = element_of(j);
          if (phi(omega.add(zi, zj)) != p.big.add(phi(zi), phi(zj))) additive = false;
          if (phi(omega.mul(zi, zj)) != p.big.mul(phi(zi), phi(zj))) multiplicative = false;
        }
    } else {
      for (const FpVec& zi : ere_basis)
        for (const FpVec& zj : ere_basis) {
          if (phi(omega.add(zi, zj)) != p.big.add(phi(zi), phi(zj))) additive = false;
          if (phi(omega.mul(zi, zj)) != p.big.mul(phi(zi), phi(zj))) multiplicative = false;
        }
    }
    rep.add("phi additive", additive);
    rep.add("phi multiplicative", multiplicative);
  }
  return res;
}

Report desigualdad_check(const MoritaContext& ctx, const FpVec& e, const FpVec& f,
                         const std::vector<std::tuple<FpVec, FpVec, FpVec>>& decomposition_f) {
  const FpAlgebra& omega = ctx.omega;
  if (!omega.is_idempotent(e) || !omega.is_idempotent(f))
    throw VerificationError("e and f must be idempotents");
  if (chain_mul(omega, {&f, &e, &f}) != e)
    throw VerificationError("e does not lie under f (fef != e)");
  FpVec sum = omega.zero();
  for (const auto& [x, s, y] : decomposition_f)
    sum = omega.add(sum, chain_mul(omega, {&x, &s, &y}));
  if (sum != f) throw VerificationError("decomposition does not sum to f");

  Report rep;
  size_t n = decomposition_f.size();
  EquivlocalPieces p = build_pieces(ctx, decomposition_f);
  const FpAlgebra& big = p.big;
  FpVec v = p.u;
  rep.add("v idempotent", big.is_idempotent(v));

  // t = s y e x s, assembled from the same row/column/diagonal pieces.
  FpVec ee = matrix_unit(big, omega, n, 0, 0, e);
  FpVec yex = chain_mul(big, {&p.Y, &ee, &p.X});
  FpVec t = chain_mul(big, {&p.S, &yex, &p.S});
  FpVec yxt = chain_mul(big, {&p.Y, &p.X, &t});
  FpVec u = big.mul(yxt, yxt);
  rep.add("u idempotent", big.is_idempotent(u));

  bool order = big.mul(u, v) == u && big.mul(v, u) == u;
  rep.add("u <= v", order);
  bool corner_incl = true;
  for (size_t i = 0; i < big.dim; ++i) {
    FpVec b = big.basis(i);
    FpVec uzu = chain_mul(big, {&u, &b, &u});
    if (chain_mul(big, {&v, &uzu, &v}) != uzu) corner_incl = false;
  }
  rep.add("u big u contained in v big v", corner_incl);

  // Commuting square: phi_f restricted to eRe coincides with phi_e.
  std::vector<FpVec> gens;
  for (size_t i = 0; i < omega.dim; ++i) {
    FpVec b = omega.basis(i);
    gens.push_back(chain_mul(omega, {&e, &b, &e}));
  }
  bool commutes = true;
  for (const FpVec& z : row_basis(gens, omega.p)) {
    FpVec zz = matrix_unit(big, omega, n, 0, 0, z);
    FpVec via_f = chain_mul(big, {&p.Y, &zz, &p.X, &p.S});
    FpVec via_e = chain_mul(big, {&p.Y, &zz, &p.X, &t});
    if (via_f != via_e) commutes = false;
  }
  rep.add("square commutes (phi_f = phi_e on R_e)", commutes);
  return rep;
}

Report SigmaUnitLadder::verify() const {
  Report rep;
  for (size_t i = 0; i < idempotents.size(); ++i)
    rep.add("e_" + std::to_string(i + 1) + " idempotent", ring->is_idempotent(idempotents[i]));
  for (size_t i = 0; i + 1 < idempotents.size(); ++i) {
    const FpVec& a = idempotents[i];
    const FpVec& b = idempotents[i + 1];
    rep.add("e_" + std::to_string(i + 1) + " = e_" + std::to_string(i + 1) + " e_" +
                std::to_string(i + 2) + " = e_" + std::to_string(i + 2) + " e_" +
                std::to_string(i + 1),
            ring->mul(a, b) == a && ring->mul(b, a) == a);
  }
  return rep;
}

namespace {

// diag(e, ..., e) with k copies inside M_m(R), zero elsewhere.
FpVec padded_diagonal(const FpAlgebra& big, const FpAlgebra& base, size_t m, size_t k,
                      const FpVec& e) {
  FpVec v = big.zero();
  for (size_t i = 0; i < k; ++i)
    v = big.add(v, matrix_unit(big, base, m, i, i, e));
  return v;
}

}  // namespace

Report escalera_window(const FpAlgebra& r, const SigmaUnitLadder& ladder, size_t n,
                       size_t dim_cap) {
  if (ladder.idempotents.size() < n + 1)
    throw VerificationError("ladder too short: need e_" + std::to_string(n + 1));
  const FpVec& en = ladder.idempotents[n - 1];
  const FpVec& en1 = ladder.idempotents[n];
  size_t m = size_t(1) << n;
  if (4 * m * m * r.dim > dim_cap)
    throw VerificationError("window size overflow at n = " + std::to_string(n));

  Report rep;
  rep.add("ladder step e_n <= e_{n+1}",
          r.is_idempotent(en) && r.is_idempotent(en1) && r.mul(en, en1) == en &&
              r.mul(en1, en) == en);

  Subalgebra cor = corner_algebra(r, en);
  FpAlgebra c_ring = matrix_over(cor.alg, m);

  FpAlgebra big_m = matrix_over(r, m);
  FpVec diag_m = padded_diagonal(big_m, r, m, m, en);
  Subalgebra b_corner = corner_algebra(big_m, diag_m);

  FpAlgebra big_2m = matrix_over(r, 2 * m);
  FpVec diag_pad = padded_diagonal(big_2m, r, 2 * m, m, en);
  Subalgebra a_corner = corner_algebra(big_2m, diag_pad);

  // FM window corner -> M_m(R) corner: drop the zero blocks outside the
  // top-left m x m window.
  {
    LinearMap window{&a_corner.alg, &b_corner.alg, {}};
    bool supported = true;
    for (size_t i = 0; i < a_corner.alg.dim; ++i) {
      const FpVec& amb = a_corner.embedding[i];  // coords in M_{2m}(R)
      FpVec small = big_m.zero();
      for (size_t bi = 0; bi < 2 * m; ++bi)
        for (size_t bj = 0; bj < 2 * m; ++bj)
          for (size_t k = 0; k < r.dim; ++k) {
            uint32_t c = amb[(bi * 2 * m + bj) * r.dim + k];
            if (!c) continue;
            if (bi >= m || bj >= m) { supported = false; continue; }
            small[(bi * m + bj) * r.dim + k] = c;
          }
      auto lifted = b_corner.lift(small);
      if (!lifted) { supported = false; lifted = b_corner.alg.zero(); }
      window.images.push_back(*lifted);
    }
    rep.add("FM window supported in top-left block", supported);
    std::string cx;
    rep.add("FM corner ~ matrix-ring corner: bijective",
            a_corner.alg.dim == b_corner.alg.dim && window.injective());
    rep.add("FM corner ~ matrix-ring corner: multiplicative", window.multiplicative(&cx), cx);
  }

  // M_m(R) corner -> M_m(R_{e_n}): entrywise corner coordinates.
  {
    LinearMap entrywise{&b_corner.alg, &c_ring, {}};
    bool entries_in_corner = true;
    for (size_t i = 0; i < b_corner.alg.dim; ++i) {
      const FpVec& amb = b_corner.embedding[i];  // coords in M_m(R)
      FpVec out = c_ring.zero();
      for (size_t bi = 0; bi < m; ++bi)
        for (size_t bj = 0; bj < m; ++bj) {
          FpVec entry(r.dim, 0);
          for (size_t k = 0; k < r.dim; ++k) entry[k] = amb[(bi * m + bj) * r.dim + k];
          auto coords = coordinates_in(cor.embedding, entry, r.p);
          if (!coords) { entries_in_corner = false; continue; }
          for (size_t k = 0; k < cor.alg.dim; ++k)
            out[(bi * m + bj) * cor.alg.dim + k] = (*coords)[k];
        }
      entrywise.images.push_back(out);
    }
    rep.add("corner entries lie in e_n R e_n", entries_in_corner);
    std::string cx;
    rep.add("matrix-ring corner ~ M(R_{e_n}): bijective",
            b_corner.alg.dim == c_ring.dim && entrywise.injective());
    rep.add("matrix-ring corner ~ M(R_{e_n}): multiplicative", entrywise.multiplicative(&cx), cx);
  }

  // Transition x -> diag(x, 0) into stage n + 1.
  if (4 * (2 * m) * (2 * m) * r.dim <= dim_cap) {
    Subalgebra cor1 = corner_algebra(r, en1);
    FpAlgebra c_next = matrix_over(cor1.alg, 2 * m);
    LinearMap rho{&c_ring, &c_next, {}};
    bool entries_included = true;
    for (size_t i = 0; i < c_ring.dim; ++i) {
      // basis of M_m(R_{e_n}): block (bi, bj), corner basis k
      size_t block = i / cor.alg.dim, k = i % cor.alg.dim;
      size_t bi = block / m, bj = block % m;
      auto coords = coordinates_in(cor1.embedding, cor.embedding[k], r.p);
      FpVec out = c_next.zero();
      if (!coords)
        entries_included = false;
      else
        for (size_t k2 = 0; k2 < cor1.alg.dim; ++k2)
          out[(bi * 2 * m + bj) * cor1.alg.dim + k2] = (*coords)[k2];
      rho.images.push_back(out);
    }
    rep.add("R_{e_n} contained in R_{e_{n+1}}", entries_included);
    std::string cx;
    rep.add("transition monomorphism injective", rho.injective());
    rep.add("transition monomorphism multiplicative", rho.multiplicative(&cx), cx);

    // sigma-unit step on the FM side: the padded diagonals form a ladder.
    FpVec diag_next = padded_diagonal(big_2m, r, 2 * m, 2 * m, en1);
    rep.add("FM sigma-unit step",
            big_2m.mul(diag_pad, diag_next) == diag_pad &&
                big_2m.mul(diag_next, diag_pad) == diag_pad);
  }
  return rep;
}

}  // namespace lpa
