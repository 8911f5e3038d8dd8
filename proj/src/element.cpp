#include "lpa/element.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "lpa/errors.hpp"

namespace lpa {

bool MonomialOrder::operator()(const Monomial& a, const Monomial& b) const {
  size_t la = a.alpha.size() + a.beta.size(), lb = b.alpha.size() + b.beta.size();
  if (la != lb) return la < lb;
  auto seq_less = [&](const std::vector<size_t>& x, const std::vector<size_t>& y, bool& decided) {
    for (size_t i = 0; i < std::min(x.size(), y.size()); ++i) {
      const std::string& ix = g->edge(x[i]).id;
      const std::string& iy = g->edge(y[i]).id;
      if (ix != iy) { decided = true; return ix < iy; }
    }
    if (x.size() != y.size()) { decided = true; return x.size() < y.size(); }
    decided = false;
    return false;
  };
  bool decided = false;
  bool lt = seq_less(a.alpha, b.alpha, decided);
  if (decided) return lt;
  lt = seq_less(a.beta, b.beta, decided);
  if (decided) return lt;
  return g->vertex_id(a.base) < g->vertex_id(b.base);
}

Element::Element(const Graph* g, Field field)
    : g_(g), field_(field), terms_(MonomialOrder{g}), normal_(true) {}

Element Element::vertex(const Graph* g, Field field, size_t v) {
  Element e(g, field);
  e.add_term(Monomial{{}, {}, v}, Scalar::one(field));
  return e;
}

Element Element::real_edge(const Graph* g, Field field, size_t edge) {
  Element e(g, field);
  e.add_term(Monomial{{edge}, {}, g->edge(edge).rng}, Scalar::one(field));
  return e;
}

Element Element::ghost_edge(const Graph* g, Field field, size_t edge) {
  Element e(g, field);
  e.add_term(Monomial{{}, {edge}, g->edge(edge).rng}, Scalar::one(field));
  return e;
}

Element Element::monomial(const Graph* g, Field field, Monomial m, Scalar c) {
  Element e(g, field);
  e.add_term(m, c);
  e.normal_ = false;
  return e;
}

void Element::add_term(const Monomial& m, const Scalar& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
  } else {
    Scalar s = it->second + c;
    if (s.is_zero())
      terms_.erase(it);
    else
      it->second = s;
  }
}

namespace {

void check_ambient(const Element& x, const Element& y) {
  if (x.graph() != y.graph())
    throw AmbientMismatchError("elements live over different graphs");
  if (x.field() != y.field())
    throw AmbientMismatchError("elements live over different fields: " +
                               x.field().to_string() + " vs " + y.field().to_string());
}

size_t path_source(const Graph& g, const std::vector<size_t>& path, size_t base) {
  return path.empty() ? base : g.edge(path.front()).src;
}

// (a1 b1*) (a2 b2*): the inner word b1* a2 collapses by CK1. Both b1 and a2
// start at the word boundary, so the product survives only when they share
// a source and one is a prefix of the other.
std::optional<Monomial> mono_product(const Graph& g, const Monomial& x, const Monomial& y) {
  if (path_source(g, x.beta, x.base) != path_source(g, y.alpha, y.base)) return std::nullopt;
  const auto& b1 = x.beta;
  const auto& a2 = y.alpha;
  size_t common = 0;
  while (common < b1.size() && common < a2.size() && b1[common] == a2[common]) ++common;
  if (common < b1.size() && common < a2.size()) return std::nullopt;
  if (common == b1.size()) {
    Monomial m;
    m.alpha = x.alpha;
    m.alpha.insert(m.alpha.end(), a2.begin() + common, a2.end());
    m.beta = y.beta;
    m.base = y.base;
    return m;
  }
  // a2 exhausted: the leftover ghost part of b1 lands at the outer end of
  // the new beta, so beta := y.beta ++ b1[common:].
  Monomial m;
  m.alpha = x.alpha;
  m.beta = y.beta;
  m.beta.insert(m.beta.end(), b1.begin() + common, b1.end());
  m.base = x.base;
  return m;
}

}  // namespace

Element Element::operator+(const Element& o) const {
  check_ambient(*this, o);
  Element out(g_, field_);
  out.terms_ = terms_;
  for (const auto& [m, c] : o.terms_) out.add_term(m, c);
  out.normal_ = false;
  return out;
}

Element Element::operator-(const Element& o) const { return *this + o.negated(); }

Element Element::operator*(const Element& o) const { return multiply(*this, o); }

Element Element::scaled(const Scalar& c) const {
  Element out(g_, field_);
  for (const auto& [m, coeff] : terms_) out.add_term(m, coeff * c);
  out.normal_ = normal_;
  return out;
}

Element Element::negated() const {
  Element out(g_, field_);
  for (const auto& [m, c] : terms_) out.add_term(m, c.negated());
  out.normal_ = normal_;
  return out;
}

Element multiply(const Element& x, const Element& y) {
  check_ambient(x, y);
  Element out(x.graph(), x.field());
  for (const auto& [mx, cx] : x.terms())
    for (const auto& [my, cy] : y.terms())
      if (auto m = mono_product(*x.graph(), mx, my)) out.add_term(*m, cx * cy);
  return normal_form(out);
}

Element normal_form(const Element& x) {
  const Graph& g = *x.graph();
  Element out(x.graph(), x.field());
  // The only reducible position of a monomial is its terminal shared edge,
  // so the system has no overlaps and any processing order reaches the same
  // normal form. Each step replaces a monomial by one of smaller total
  // length plus siblings of equal length with non-designated terminals, so
  // the multiset of (length, designated-terminal) measures strictly
  // decreases and the loop terminates.
  std::map<Monomial, Scalar, MonomialOrder> work(MonomialOrder{&g});
  for (const auto& [m, c] : x.terms()) work.emplace(m, c);
  auto reducible = [&](const Monomial& m) {
    if (m.alpha.empty() || m.beta.empty()) return false;
    size_t e = m.alpha.back();
    if (e != m.beta.back()) return false;
    size_t v = g.edge(e).src;
    return g.is_regular(v) && g.designated_edge(v) == e;
  };
  while (!work.empty()) {
    auto it = std::prev(work.end());
    Monomial m = it->first;
    Scalar c = it->second;
    work.erase(it);
    if (c.is_zero()) continue;
    if (!reducible(m)) {
      out.add_term(m, c);
      continue;
    }
    size_t e = m.alpha.back();
    size_t v = g.edge(e).src;
    Monomial stem;
    stem.alpha.assign(m.alpha.begin(), m.alpha.end() - 1);
    stem.beta.assign(m.beta.begin(), m.beta.end() - 1);
    stem.base = v;
    auto push = [&](const Monomial& mm, const Scalar& cc) {
      if (cc.is_zero()) return;
      auto [wit, fresh] = work.emplace(mm, cc);
      if (!fresh) {
        Scalar s = wit->second + cc;
        if (s.is_zero())
          work.erase(wit);
        else
          wit->second = s;
      }
    };
    push(stem, c);
    for (size_t f : g.out_edges(v)) {
      if (f == e) continue;
      Monomial sib = stem;
      sib.alpha.push_back(f);
      sib.beta.push_back(f);
      sib.base = g.edge(f).rng;
      push(sib, c.negated());
    }
  }
  out.normal_ = true;
  return out;
}

Element Element::normal_form() const { return lpa::normal_form(*this); }

bool equal(const Element& x, const Element& y) {
  check_ambient(x, y);
  return normal_form(x - y).is_zero();
}

std::set<size_t> Element::support_vertices() const {
  std::set<size_t> s;
  for (const auto& [m, c] : terms_) {
    s.insert(path_source(*g_, m.alpha, m.base));
    s.insert(path_source(*g_, m.beta, m.base));
  }
  return s;
}

Element Element::corner_project(const std::set<size_t>& p) const {
  Element unit(g_, field_);
  for (size_t v : p) unit.add_term(Monomial{{}, {}, v}, Scalar::one(field_));
  return multiply(multiply(unit, *this), unit);
}

std::map<int, Element> Element::grade() const {
  Element nf = in_normal_form() ? *this : normal_form();
  std::map<int, Element> out;
  for (const auto& [m, c] : nf.terms_) {
    auto [it, fresh] = out.emplace(m.degree(), Element(g_, field_));
    it->second.add_term(m, c);
    it->second.normal_ = true;
  }
  return out;
}

std::string Element::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    bool neg = c.prints_negative();
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    std::string word;
    {
      std::ostringstream ws;
      bool any = false;
      for (size_t e : m.alpha) {
        if (any) ws << ".";
        ws << g_->edge(e).id;
        any = true;
      }
      for (auto it = m.beta.rbegin(); it != m.beta.rend(); ++it) {
        if (any) ws << ".";
        ws << g_->edge(*it).id << "^";
        any = true;
      }
      if (!any) ws << g_->vertex_id(m.base);
      word = ws.str();
    }
    std::string mag = c.magnitude_string();
    if (mag == "1")
      os << word;
    else
      os << mag << "*" << word;
  }
  return os.str();
}

std::optional<uint64_t> dimension(const Graph& g, uint64_t bound) {
  if (!g.row_finite()) return std::nullopt;  // infinite emitter
  // Cycle check: any cycle gives paths of unbounded length.
  {
    enum { White, Grey, Black };
    std::vector<int> color(g.vertex_count(), White);
    std::function<bool(size_t)> dfs = [&](size_t v) -> bool {
      color[v] = Grey;
      for (size_t e : g.out_edges(v)) {
        size_t w = g.edge(e).rng;
        if (color[w] == Grey) return true;
        if (color[w] == White && dfs(w)) return true;
      }
      color[v] = Black;
      return false;
    };
    for (size_t v = 0; v < g.vertex_count(); ++v)
      if (color[v] == White && dfs(v)) return std::nullopt;
  }
  // Materialize every path, then count pairs with a common range, dropping
  // pairs whose shared terminal edge is designated.
  std::vector<std::vector<size_t>> paths;  // edge lists; empty list per vertex below
  std::vector<size_t> ranges;
  for (size_t v = 0; v < g.vertex_count(); ++v) {
    paths.push_back({});
    ranges.push_back(v);
  }
  for (size_t i = 0; i < paths.size(); ++i) {
    if (paths.size() > bound) return std::nullopt;
    for (size_t e : g.out_edges(ranges[i])) {
      auto ext = paths[i];
      ext.push_back(e);
      paths.push_back(std::move(ext));
      ranges.push_back(g.edge(e).rng);
    }
  }
  uint64_t count = 0;
  for (size_t i = 0; i < paths.size(); ++i)
    for (size_t j = 0; j < paths.size(); ++j) {
      if (ranges[i] != ranges[j]) continue;
      if (!paths[i].empty() && !paths[j].empty() && paths[i].back() == paths[j].back()) {
        size_t e = paths[i].back();
        if (g.designated_edge(g.edge(e).src) == e) continue;
      }
      if (++count > bound) return std::nullopt;
    }
  return count;
}

// ---------------------------------------------------------------------------
// Expression parsing

namespace {

enum class Tok { name, number, hat, dot, star, plus, minus, slash, lparen, rparen, end };

struct Token {
  Tok kind;
  std::string text;
  int line, col;
};

std::vector<Token> lex(const std::string& text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto push = [&](Tok k, std::string t) { out.push_back(Token{k, std::move(t), line, col}); };
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') { ++line; col = 1; ++i; continue; }
    if (std::isspace(static_cast<unsigned char>(c))) { ++col; ++i; continue; }
    int start_col = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
      out.push_back(Token{Tok::name, text.substr(i, j - i), line, start_col});
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      out.push_back(Token{Tok::number, text.substr(i, j - i), line, start_col});
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    switch (c) {
      case '^': push(Tok::hat, "^"); break;
      case '.': push(Tok::dot, "."); break;
      case '*': push(Tok::star, "*"); break;
      case '+': push(Tok::plus, "+"); break;
      case '-': push(Tok::minus, "-"); break;
      case '/': push(Tok::slash, "/"); break;
      case '(': push(Tok::lparen, "("); break;
      case ')': push(Tok::rparen, ")"); break;
      default:
        throw ParseError(line, col, std::string("unexpected character '") + c + "'");
    }
    ++col;
    ++i;
  }
  out.push_back(Token{Tok::end, "", line, col});
  return out;
}

struct ExprParser {
  const Graph* g;
  Field field;
  std::vector<Token> toks;
  size_t pos = 0;
  std::vector<std::string>* warnings;

  const Token& peek() const { return toks[pos]; }
  Token take() { return toks[pos++]; }
  [[noreturn]] void fail(const Token& t, const std::string& msg) {
    throw ParseError(t.line, t.col, msg);
  }

  // A chain item before name resolution.
  struct Item {
    bool is_expr;
    Element value;    // when is_expr
    std::string name;  // when !is_expr
    bool hat = false;
    Token tok;
  };

  Element parse_expr() {
    bool neg = false;
    if (peek().kind == Tok::minus) { take(); neg = true; }
    Element acc = parse_term();
    if (neg) acc = acc.negated();
    while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
      bool minus = take().kind == Tok::minus;
      Element rhs = parse_term();
      acc = minus ? acc - rhs : acc + rhs;
    }
    return acc;
  }

  Element parse_term() {
    if (peek().kind == Tok::number) {
      Token t = take();
      Scalar s = parse_scalar_tail(t);
      if (peek().kind != Tok::star) fail(peek(), "expected '*' after scalar");
      take();
      return parse_chain().scaled(s);
    }
    return parse_chain();
  }

  Scalar parse_scalar_tail(const Token& num) {
    try {
      if (peek().kind == Tok::slash) {
        take();
        if (peek().kind != Tok::number) fail(peek(), "expected denominator");
        return Scalar::from_decimal(field, num.text, take().text);
      }
      if (peek().kind == Tok::name && peek().text == "mod") {
        take();
        if (peek().kind != Tok::number) fail(peek(), "expected modulus");
        Token pm = take();
        if (field.kind != FieldKind::modp || pm.text != std::to_string(field.p))
          throw AmbientMismatchError("scalar 'mod " + pm.text + "' does not match ambient field " +
                                     field.to_string());
        return Scalar::from_decimal(field, num.text);
      }
      return Scalar::from_decimal(field, num.text);
    } catch (const std::invalid_argument& e) {
      fail(num, e.what());
    }
  }

  Element parse_chain() {
    std::vector<Item> items;
    items.push_back(parse_factor());
    while (peek().kind == Tok::dot) {
      take();
      items.push_back(parse_factor());
    }
    std::vector<Element> factors = resolve(items);
    Element acc = factors[0];
    for (size_t i = 1; i < factors.size(); ++i) {
      bool lhs_nonzero = !acc.is_zero();
      Element next = acc * factors[i];
      if (lhs_nonzero && !factors[i].is_zero() && next.is_zero() && warnings)
        warnings->push_back("non-composable concatenation yields the zero element");
      acc = next;
    }
    return acc;
  }

  Item parse_factor() {
    if (peek().kind == Tok::lparen) {
      Token open = take();
      Element e = parse_expr();
      if (peek().kind != Tok::rparen) fail(peek(), "expected ')'");
      take();
      bool hat = false;
      if (peek().kind == Tok::hat) fail(peek(), "'^' applies to a single edge name");
      return Item{true, e, "", hat, open};
    }
    if (peek().kind != Tok::name) fail(peek(), "expected a vertex, edge or '('");
    Token t = take();
    bool hat = false;
    if (peek().kind == Tok::hat) { take(); hat = true; }
    return Item{false, Element::zero(g, field), t.text, hat, t};
  }

  // Tail-generated ids contain dots, which also serve as the concatenation
  // operator. Adjacent name atoms re-join by longest match against the
  // declared ids ("w.f1^" is the ghost of edge w.f1, not w times f1).
  std::vector<Element> resolve(const std::vector<Item>& items) {
    std::vector<Element> out;
    size_t i = 0;
    while (i < items.size()) {
      if (items[i].is_expr) {
        out.push_back(items[i].value);
        ++i;
        continue;
      }
      size_t best = i;  // index of last joined item; i alone when nothing longer matches
      std::string joined = items[i].name;
      std::string best_name = joined;
      bool found = declared(best_name);
      for (size_t j = i + 1; j < items.size() && !items[j - 1].hat && !items[j].is_expr; ++j) {
        joined += "." + items[j].name;
        if (declared(joined)) {
          best = j;
          best_name = joined;
          found = true;
        }
      }
      if (!found) fail(items[i].tok, "unknown vertex or edge '" + items[i].name + "'");
      bool hat = items[best].hat;
      out.push_back(atom(best_name, hat, items[i].tok));
      i = best + 1;
    }
    return out;
  }

  bool declared(const std::string& name) const {
    return g->vertex_index(name).has_value() || g->edge_index(name).has_value();
  }

  Element atom(const std::string& name, bool hat, const Token& at) {
    if (auto e = g->edge_index(name)) return hat ? Element::ghost_edge(g, field, *e)
                                                 : Element::real_edge(g, field, *e);
    auto v = g->vertex_index(name);
    if (hat) fail(at, "'^' applies to edges, not vertices");
    return Element::vertex(g, field, *v);
  }
};

}  // namespace

ParsedElement parse_element(const Graph* g, Field field, const std::string& text) {
  ParsedElement out{Element::zero(g, field), {}};
  ExprParser p{g, field, lex(text), 0, &out.warnings};
  out.element = p.parse_expr();
  if (p.peek().kind != Tok::end) p.fail(p.peek(), "trailing input after expression");
  return out;
}

// ---------------------------------------------------------------------------
// Random elements for property tests

namespace {

std::vector<size_t> random_forward_path(const Graph& g, Rng& rng, size_t start, size_t len) {
  std::vector<size_t> path;
  size_t at = start;
  for (size_t k = 0; k < len; ++k) {
    const auto& outs = g.out_edges(at);
    if (outs.empty()) break;
    size_t e = outs[rng.below(outs.size())];
    path.push_back(e);
    at = g.edge(e).rng;
  }
  return path;
}

std::vector<size_t> random_backward_path(const Graph& g, Rng& rng, size_t end, size_t len) {
  std::vector<size_t> path;  // built back to front
  size_t at = end;
  for (size_t k = 0; k < len; ++k) {
    const auto& ins = g.in_edges(at);
    if (ins.empty()) break;
    size_t e = ins[rng.below(ins.size())];
    path.insert(path.begin(), e);
    at = g.edge(e).src;
  }
  return path;
}

Scalar random_coeff(Field field, Rng& rng) {
  if (field.kind == FieldKind::rationals) {
    long num = 0;
    while (num == 0) num = rng.range(-3, 3);
    long den = rng.range(1, 3);
    return Scalar::from_fraction(field, num, den);
  }
  return Scalar::from_int(field, rng.range(1, field.p - 1));
}

}  // namespace

Element random_element(const Graph* g, Field field, Rng& rng, size_t max_terms) {
  Element out(g, field);
  size_t k = 1 + rng.below(max_terms);
  for (size_t t = 0; t < k; ++t) {
    size_t start = rng.below(g->vertex_count());
    std::vector<size_t> alpha = random_forward_path(*g, rng, start, rng.below(4));
    size_t mid = alpha.empty() ? start : g->edge(alpha.back()).rng;
    std::vector<size_t> beta = random_backward_path(*g, rng, mid, rng.below(4));
    Monomial m{std::move(alpha), {}, mid};
    // beta was built as a forward path into mid; store it forward.
    m.beta = beta;
    out = out + Element::monomial(g, field, m, random_coeff(field, rng));
  }
  return out;
}

Element random_homogeneous(const Graph* g, Field field, Rng& rng, int degree) {
  Element out(g, field);
  size_t k = 1 + rng.below(3);
  for (size_t t = 0; t < k; ++t) {
    for (int attempt = 0; attempt < 8; ++attempt) {
      size_t lb = (degree < 0 ? static_cast<size_t>(-degree) : 0) + rng.below(2);
      size_t la = lb + degree;
      size_t start = rng.below(g->vertex_count());
      std::vector<size_t> alpha = random_forward_path(*g, rng, start, la);
      if (alpha.size() != la) continue;
      size_t mid = alpha.empty() ? start : g->edge(alpha.back()).rng;
      std::vector<size_t> beta = random_backward_path(*g, rng, mid, lb);
      if (beta.size() != lb) continue;
      Monomial m{std::move(alpha), std::move(beta), mid};
      out = out + Element::monomial(g, field, m, random_coeff(field, rng));
      break;
    }
  }
  return out;
}

}  // namespace lpa
