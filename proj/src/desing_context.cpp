#include "lpa/desing_context.hpp"

#include "lpa/errors.hpp"
#include "lpa/rng.hpp"

namespace lpa {

DesingContext context_from_desingularization(const Graph& e, size_t depth, Field field) {
  TailedGraph tg = desingularize(e);
  auto window = std::make_unique<Graph>(truncate(tg, depth));
  std::vector<size_t> core;
  Element p = Element::zero(window.get(), field);
  for (size_t v = 0; v < e.vertex_count(); ++v) {
    size_t idx = window->require_vertex(e.vertex_id(v));
    core.push_back(idx);
    p = p + Element::vertex(window.get(), field, idx);
  }
  return DesingContext(std::move(window), field, std::move(p), std::move(core));
}

namespace {

// Tail vertices are reached from their anchor by the f-edge chain; core
// vertices are reached by the empty path. Returns the path mu with
// mu* p mu = vertex.
std::vector<size_t> witness_path(const Graph& w, size_t vertex) {
  std::vector<size_t> path;
  std::string id = w.vertex_id(vertex);
  auto dot = id.find(".v");
  if (dot == std::string::npos) return path;  // core vertex
  std::string anchor = id.substr(0, dot);
  size_t depth = std::stoul(id.substr(dot + 2));
  for (size_t j = 1; j <= depth; ++j)
    path.push_back(*w.edge_index(anchor + ".f" + std::to_string(j)));
  return path;
}

}  // namespace

Report verify_desing_context(const DesingContext& ctx, size_t samples, uint64_t seed,
                             const std::optional<std::string>& corner_vertex) {
  const Graph* w = ctx.window.get();
  Field field = ctx.field;
  Report rep;
  Rng rng(seed);

  rep.add("p idempotent", equal(ctx.p * ctx.p, ctx.p));

  // Context associativity (n, m) n' = n [m, n'] on sampled triples; both
  // pairings are the ambient product, so this is exact associativity of
  // elements shaped p z, z' p, p z''.
  bool assoc = true;
  for (size_t i = 0; i < samples && assoc; ++i) {
    Element n = ctx.p * random_element(w, field, rng);
    Element m = random_element(w, field, rng) * ctx.p;
    Element n2 = ctx.p * random_element(w, field, rng);
    if (!equal((n * m) * n2, n * (m * n2))) assoc = false;
  }
  rep.add("context associativity on sampled triples", assoc);

  // Fullness: every window vertex lies in S p S, witnessed by its tail
  // path: vertex = mu* p mu. Edge and ghost generators follow from
  // s(g) g = g.
  bool full = true;
  for (size_t v = 0; v < w->vertex_count() && full; ++v) {
    std::vector<size_t> mu = witness_path(*w, v);
    Element mu_real = Element::vertex(w, field, mu.empty() ? v : w->edge(mu.front()).src);
    for (size_t eidx : mu) mu_real = mu_real * Element::real_edge(w, field, eidx);
    Element mu_star = Element::vertex(w, field, v);
    for (auto it = mu.rbegin(); it != mu.rend(); ++it)
      mu_star = mu_star * Element::ghost_edge(w, field, *it);
    if (!equal(mu_star * (ctx.p * mu_real), Element::vertex(w, field, v))) full = false;
  }
  rep.add("fullness: S p S contains every window vertex", full);

  // Corner construction at e = a vertex of E: decomposition e = p e p gives
  // u = (pep)(pep) and phi(z) = p z p e.
  size_t ev;
  if (corner_vertex) {
    ev = w->require_vertex(*corner_vertex);
  } else {
    ev = ctx.core_vertices.front();
  }
  Element e = Element::vertex(w, field, ev);
  Element pep = (ctx.p * e) * ctx.p;
  Element u = pep * pep;
  rep.add("u = yxsyxs idempotent", equal(u * u, u));
  rep.add("u recovers e", equal(u, e));

  auto phi = [&](const Element& z) { return ((ctx.p * z) * ctx.p) * e; };
  bool hom = true, additive = true, lands = true;
  for (size_t i = 0; i < samples; ++i) {
    Element z = (e * random_element(w, field, rng)) * e;
    Element zz = (e * random_element(w, field, rng)) * e;
    if (!equal(phi(z * zz), phi(z) * phi(zz))) hom = false;
    if (!equal(phi(z + zz), phi(z) + phi(zz))) additive = false;
    if (!equal((u * phi(z)) * u, phi(z))) lands = false;
    if (!hom) break;
  }
  rep.add("phi multiplicative on sampled pairs", hom);
  rep.add("phi additive on sampled pairs", additive);
  rep.add("phi lands in u M_1(S) u", lands);
  return rep;
}

}  // namespace lpa
