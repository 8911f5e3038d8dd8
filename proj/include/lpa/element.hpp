#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lpa/graph.hpp"
#include "lpa/rng.hpp"
#include "lpa/scalar.hpp"

namespace lpa {

// Basis monomial alpha beta* with r(alpha) = r(beta); `base` is that common
// range, which pins the vertex when both paths are empty. The ghost part
// prints reversed: for beta = e_1...e_n the word beta* is e_n* ... e_1*, so
// beta's edges appear in reverse order, each starred.
struct Monomial {
  std::vector<size_t> alpha;  // edge indices
  std::vector<size_t> beta;
  size_t base;  // r(alpha) = r(beta)

  int degree() const { return static_cast<int>(alpha.size()) - static_cast<int>(beta.size()); }
};

// Orders monomials by total length, then alpha edge ids, then beta edge ids,
// then base vertex id; this is the canonical printing order.
struct MonomialOrder {
  const Graph* g;
  bool operator()(const Monomial& a, const Monomial& b) const;
};

// Finite scalar combination of monomials over a fixed graph and field, with
// no zero coefficients stored. normal_form() reduces modulo the
// Cuntz-Krieger relations; multiply() resolves the inner ghost/real
// adjacencies directly, so elements are always linear combinations of
// alpha beta* words.
class Element {
 public:
  Element(const Graph* g, Field field);

  static Element zero(const Graph* g, Field field) { return Element(g, field); }
  static Element vertex(const Graph* g, Field field, size_t v);
  static Element real_edge(const Graph* g, Field field, size_t e);
  static Element ghost_edge(const Graph* g, Field field, size_t e);
  static Element monomial(const Graph* g, Field field, Monomial m, Scalar c);

  const Graph* graph() const { return g_; }
  const Field& field() const { return field_; }
  const std::map<Monomial, Scalar, MonomialOrder>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool in_normal_form() const { return normal_; }
  size_t term_count() const { return terms_.size(); }

  Element operator+(const Element& o) const;
  Element operator-(const Element& o) const;
  Element operator*(const Element& o) const;  // returns normal form
  Element scaled(const Scalar& c) const;
  Element negated() const;

  // Confluent CK rewriting: a monomial whose alpha and beta both end with
  // the designated edge e of the regular vertex s(e) rewrites through
  // CK2 as alpha' beta'* - sum over the sibling edges f != e of
  // alpha' f f* beta'*. Never applied at infinite emitters.
  Element normal_form() const;

  // Vertices appearing as sources of alpha or beta across all terms; a
  // vertex-sum over this set is a local unit for the element.
  std::set<size_t> support_vertices() const;

  // Sum over v in p of v, i.e. the corner projection  ê x ê.
  Element corner_project(const std::set<size_t>& p) const;

  std::map<int, Element> grade() const;  // degree -> homogeneous component

  std::string to_string() const;

 private:
  void add_term(const Monomial& m, const Scalar& c);

  const Graph* g_;
  Field field_;
  std::map<Monomial, Scalar, MonomialOrder> terms_;
  bool normal_ = false;

  friend Element multiply(const Element&, const Element&);
  friend Element normal_form(const Element&);
};

Element multiply(const Element& x, const Element& y);
Element normal_form(const Element& x);

// Equality in the quotient algebra: normal_form(x - y) == 0.
bool equal(const Element& x, const Element& y);

// Counts the normal-form basis monomials of L_K(g) by brute-force path
// enumeration, independent of the rewriting engine: all pairs (alpha, beta)
// with matching range, excluding pairs whose shared terminal edge is the
// designated edge of its (regular) source. Returns nullopt ("infinite")
// when g has a cycle, an infinite emitter, or the count exceeds `bound`.
std::optional<uint64_t> dimension(const Graph& g, uint64_t bound = 1u << 20);

struct ParsedElement {
  Element element;
  std::vector<std::string> warnings;
};

// Element grammar: scalars `n`, `n/m`, `k mod p`; vertex and edge names;
// ghost `e^`; concatenation `.`; scalar multiple `*`; `+`, `-`;
// parentheses. Names containing dots (tail edge ids) are resolved by
// longest match against the declared ids.
ParsedElement parse_element(const Graph* g, Field field, const std::string& text);

// Deterministic random element for property tests: up to `max_terms`
// monomials with path lengths <= 3 built over materialized edges.
Element random_element(const Graph* g, Field field, Rng& rng, size_t max_terms = 4);

// Random homogeneous element of the given degree; may be zero when the
// graph has no paths realizing the degree.
Element random_homogeneous(const Graph* g, Field field, Rng& rng, int degree);

}  // namespace lpa
