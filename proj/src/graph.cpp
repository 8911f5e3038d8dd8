#include "lpa/graph.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "lpa/errors.hpp"

namespace lpa {

std::string to_string(EmitterClass c) {
  switch (c) {
    case EmitterClass::regular: return "regular";
    case EmitterClass::sink: return "sink";
    case EmitterClass::countable_infinite: return "countable";
    case EmitterClass::uncountable_infinite: return "uncountable";
  }
  return "?";
}

size_t Graph::add_vertex(const std::string& id) {
  if (vertex_index_.count(id)) throw std::invalid_argument("duplicate vertex id '" + id + "'");
  vertices_.push_back(id);
  vertex_index_[id] = vertices_.size() - 1;
  out_.emplace_back();
  in_.emplace_back();
  return vertices_.size() - 1;
}

size_t Graph::add_edge(const std::string& id, const std::string& src, const std::string& rng) {
  if (edge_index_.count(id)) throw std::invalid_argument("duplicate edge id '" + id + "'");
  auto s = vertex_index(src);
  if (!s) throw std::invalid_argument("edge '" + id + "' references undeclared vertex '" + src + "'");
  auto r = vertex_index(rng);
  if (!r) throw std::invalid_argument("edge '" + id + "' references undeclared vertex '" + rng + "'");
  if (countable_.count(*s) || uncountable_.count(*s))
    throw std::invalid_argument("vertex '" + src +
                                "' is a declared infinite emitter; its edges belong in the emitter declaration");
  edges_.push_back(Edge{id, *s, *r});
  edge_index_[id] = edges_.size() - 1;
  out_[*s].push_back(edges_.size() - 1);
  in_[*r].push_back(edges_.size() - 1);
  return edges_.size() - 1;
}

void Graph::declare_uncountable(const std::string& v) {
  auto i = vertex_index(v);
  if (!i) throw std::invalid_argument("emitter declaration references undeclared vertex '" + v + "'");
  if (countable_.count(*i) || uncountable_.count(*i))
    throw std::invalid_argument("duplicate emitter declaration for '" + v + "'");
  if (!out_[*i].empty())
    throw std::invalid_argument("vertex '" + v + "' already has explicit edges; cannot declare it an emitter");
  uncountable_.insert(*i);
}

void Graph::declare_countable(const std::string& v,
                              const std::vector<std::pair<std::string, std::string>>& prefix,
                              const std::vector<std::string>& pattern) {
  auto i = vertex_index(v);
  if (!i) throw std::invalid_argument("emitter declaration references undeclared vertex '" + v + "'");
  if (countable_.count(*i) || uncountable_.count(*i))
    throw std::invalid_argument("duplicate emitter declaration for '" + v + "'");
  if (!out_[*i].empty())
    throw std::invalid_argument("vertex '" + v + "' already has explicit edges; cannot declare it an emitter");
  if (pattern.empty()) throw std::invalid_argument("countable emitter '" + v + "' needs a nonempty pattern");
  CountableEmission em;
  for (const auto& [eid, rng] : prefix) {
    if (edge_index_.count(eid)) throw std::invalid_argument("duplicate edge id '" + eid + "'");
    auto r = vertex_index(rng);
    if (!r) throw std::invalid_argument("prefix edge '" + eid + "' references undeclared vertex '" + rng + "'");
    edges_.push_back(Edge{eid, *i, *r});
    edge_index_[eid] = edges_.size() - 1;
    in_[*r].push_back(edges_.size() - 1);
    em.prefix.push_back(edges_.size() - 1);
  }
  for (const auto& pv : pattern) {
    auto r = vertex_index(pv);
    if (!r) throw std::invalid_argument("pattern references undeclared vertex '" + pv + "'");
    em.pattern.push_back(*r);
  }
  countable_[*i] = std::move(em);
  // Prefix edges are materialized out-edges of the emitter.
  for (size_t e : countable_[*i].prefix) out_[*i].push_back(e);
}

void Graph::validate() const {
  if (vertices_.empty()) throw std::invalid_argument("empty graph");
}

std::optional<size_t> Graph::vertex_index(const std::string& id) const {
  auto it = vertex_index_.find(id);
  if (it == vertex_index_.end()) return std::nullopt;
  return it->second;
}

size_t Graph::require_vertex(const std::string& id) const {
  auto i = vertex_index(id);
  if (!i) throw std::invalid_argument("unknown vertex '" + id + "'");
  return *i;
}

std::optional<size_t> Graph::edge_index(const std::string& id) const {
  auto it = edge_index_.find(id);
  if (it == edge_index_.end()) return std::nullopt;
  return it->second;
}

EmitterClass Graph::emitter_class(size_t v) const {
  if (uncountable_.count(v)) return EmitterClass::uncountable_infinite;
  if (countable_.count(v)) return EmitterClass::countable_infinite;
  return out_[v].empty() ? EmitterClass::sink : EmitterClass::regular;
}

const CountableEmission* Graph::countable_emission(size_t v) const {
  auto it = countable_.find(v);
  return it == countable_.end() ? nullptr : &it->second;
}

bool Graph::row_finite() const { return countable_.empty() && uncountable_.empty(); }

bool Graph::has_uncountable_emitter() const { return !uncountable_.empty(); }

size_t Graph::enumeration_range(size_t v, size_t j) const {
  const CountableEmission* em = countable_emission(v);
  if (!em || j == 0) throw std::invalid_argument("bad enumeration query");
  if (j <= em->prefix.size()) return edges_[em->prefix[j - 1]].rng;
  return em->pattern[(j - em->prefix.size() - 1) % em->pattern.size()];
}

std::set<size_t> Graph::declared_range_set(size_t v) const {
  std::set<size_t> s;
  if (const CountableEmission* em = countable_emission(v)) {
    for (size_t e : em->prefix) s.insert(edges_[e].rng);
    for (size_t pv : em->pattern) s.insert(pv);
  }
  return s;
}

size_t Graph::designated_edge(size_t v) const {
  if (!is_regular(v)) throw std::invalid_argument("designated edge queried at non-regular vertex");
  size_t best = out_[v][0];
  for (size_t e : out_[v])
    if (edges_[e].id < edges_[best].id) best = e;
  return best;
}

std::string Graph::serialize() const {
  std::ostringstream os;
  if (!name_.empty()) os << "graph " << name_ << "\n";
  for (const auto& v : vertices_) os << "vertex " << v << "\n";
  std::set<size_t> prefix_edges;
  for (const auto& [v, em] : countable_)
    for (size_t e : em.prefix) prefix_edges.insert(e);
  for (size_t i = 0; i < edges_.size(); ++i) {
    if (prefix_edges.count(i)) continue;
    os << "edge " << edges_[i].id << " : " << vertices_[edges_[i].src] << " -> "
       << vertices_[edges_[i].rng] << "\n";
  }
  for (const auto& [v, em] : countable_) {
    os << "emitter " << vertices_[v] << " countable";
    if (!em.prefix.empty()) {
      os << " prefix ";
      for (size_t k = 0; k < em.prefix.size(); ++k) {
        const Edge& e = edges_[em.prefix[k]];
        os << (k ? "," : "") << e.id << ":" << vertices_[e.src] << "->" << vertices_[e.rng];
      }
    }
    os << " pattern";
    for (size_t pv : em.pattern) os << " " << vertices_[pv];
    os << "\n";
  }
  for (size_t v : uncountable_) os << "emitter " << vertices_[v] << " uncountable\n";
  return os.str();
}

Path::Path(const Graph* g, size_t base_vertex) : g_(g), base_(base_vertex) {}

Path::Path(const Graph* g, std::vector<size_t> edges) : g_(g), edges_(std::move(edges)), base_(0) {
  if (edges_.empty()) throw std::invalid_argument("edge-list path must be nonempty");
  for (size_t i = 0; i + 1 < edges_.size(); ++i)
    if (g_->edge(edges_[i]).rng != g_->edge(edges_[i + 1]).src)
      throw std::invalid_argument("non-composable edge sequence");
  base_ = g_->edge(edges_[0]).src;
}

size_t Path::source() const { return edges_.empty() ? base_ : g_->edge(edges_.front()).src; }

size_t Path::range() const { return edges_.empty() ? base_ : g_->edge(edges_.back()).rng; }

Path Path::appended(size_t edge) const {
  if (g_->edge(edge).src != range()) throw std::invalid_argument("non-composable append");
  std::vector<size_t> es = edges_;
  es.push_back(edge);
  return Path(g_, std::move(es));
}

bool Path::operator==(const Path& o) const {
  return edges_ == o.edges_ && (!edges_.empty() || base_ == o.base_);
}

bool Path::operator<(const Path& o) const {
  if (edges_.size() != o.edges_.size()) return edges_.size() < o.edges_.size();
  if (edges_.empty()) return g_->vertex_id(base_) < o.g_->vertex_id(o.base_);
  for (size_t i = 0; i < edges_.size(); ++i) {
    const std::string& a = g_->edge(edges_[i]).id;
    const std::string& b = o.g_->edge(o.edges_[i]).id;
    if (a != b) return a < b;
  }
  return false;
}

std::string Path::to_string() const {
  if (edges_.empty()) return g_->vertex_id(base_);
  std::string s;
  for (size_t i = 0; i < edges_.size(); ++i) {
    if (i) s += ".";
    s += g_->edge(edges_[i]).id;
  }
  return s;
}

namespace {

struct Line {
  int number;
  std::vector<std::string> tokens;
  std::vector<int> cols;  // 1-based start column of each token
};

std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> lines;
  std::istringstream is(text);
  std::string raw;
  int n = 0;
  while (std::getline(is, raw)) {
    ++n;
    if (auto pos = raw.find('#'); pos != std::string::npos) raw = raw.substr(0, pos);
    Line line{n, {}, {}};
    size_t i = 0;
    while (i < raw.size()) {
      if (std::isspace(static_cast<unsigned char>(raw[i]))) { ++i; continue; }
      size_t start = i;
      while (i < raw.size() && !std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      line.tokens.push_back(raw.substr(start, i - start));
      line.cols.push_back(static_cast<int>(start) + 1);
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

[[noreturn]] void fail(const Line& l, size_t tok, const std::string& msg) {
  int col = tok < l.cols.size() ? l.cols[tok] : (l.cols.empty() ? 1 : l.cols.back() + 1);
  throw ParseError(l.number, col, msg);
}

// "e:u->w" -> (e, u, w)
bool split_prefix_entry(const std::string& s, std::string& id, std::string& src, std::string& rng) {
  auto colon = s.find(':');
  auto arrow = s.find("->");
  if (colon == std::string::npos || arrow == std::string::npos || arrow < colon) return false;
  id = s.substr(0, colon);
  src = s.substr(colon + 1, arrow - colon - 1);
  rng = s.substr(arrow + 2);
  return !id.empty() && !src.empty() && !rng.empty();
}

}  // namespace

Graph parse_graph(const std::string& text) {
  Graph g;
  for (const Line& l : tokenize(text)) {
    const auto& t = l.tokens;
    try {
      if (t[0] == "graph") {
        if (t.size() != 2) fail(l, 1, "expected: graph <name>");
        g.set_name(t[1]);
      } else if (t[0] == "vertex") {
        if (t.size() != 2) fail(l, 1, "expected: vertex <id>");
        g.add_vertex(t[1]);
      } else if (t[0] == "edge") {
        // edge <id> : <src> -> <rng>
        if (t.size() != 6 || t[2] != ":" || t[4] != "->")
          fail(l, 1, "expected: edge <id> : <src> -> <rng>");
        g.add_edge(t[1], t[3], t[5]);
      } else if (t[0] == "emitter") {
        if (t.size() < 3) fail(l, 1, "expected: emitter <v> countable|uncountable ...");
        if (t[2] == "uncountable") {
          if (t.size() != 3) fail(l, 3, "uncountable emitter takes no enumeration");
          g.declare_uncountable(t[1]);
        } else if (t[2] == "countable") {
          size_t k = 3;
          std::vector<std::pair<std::string, std::string>> prefix;
          if (k < t.size() && t[k] == "prefix") {
            ++k;
            if (k >= t.size()) fail(l, k, "prefix needs at least one entry");
            std::string entry = t[k++];
            // comma-separated entries; allow spaces after commas too
            std::string acc;
            std::istringstream es(entry);
            while (std::getline(es, acc, ',')) {
              std::string id, src, rng;
              if (!split_prefix_entry(acc, id, src, rng))
                fail(l, k - 1, "bad prefix entry '" + acc + "' (expected e:src->rng)");
              prefix.emplace_back(id, rng);
              if (src != t[1])
                fail(l, k - 1, "prefix edge '" + id + "' must be sourced at '" + t[1] + "'");
            }
          }
          if (k >= t.size() || t[k] != "pattern") fail(l, k, "expected: pattern <v1> <v2> ...");
          ++k;
          std::vector<std::string> pattern(t.begin() + k, t.end());
          if (pattern.empty()) fail(l, k, "pattern must be nonempty");
          g.declare_countable(t[1], prefix, pattern);
        } else {
          fail(l, 2, "expected countable or uncountable");
        }
      } else if (t[0] == "tail") {
        fail(l, 0, "tail lines are only valid in tailed-graph files");
      } else {
        fail(l, 0, "unknown directive '" + t[0] + "'");
      }
    } catch (const std::invalid_argument& e) {
      fail(l, 1, e.what());
    }
  }
  try {
    g.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(1, 1, e.what());
  }
  return g;
}

}  // namespace lpa
