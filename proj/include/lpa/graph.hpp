#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace lpa {

enum class EmitterClass { regular, sink, countable_infinite, uncountable_infinite };

std::string to_string(EmitterClass c);

struct Edge {
  std::string id;
  size_t src;
  size_t rng;
};

// Finitely presented enumeration of a countable emitter's edge list
// e_1, e_2, ...: the first `prefix.size()` edges are explicit (they carry ids
// and are materialized), every later edge e_j has its range drawn cyclically
// from `pattern`.
struct CountableEmission {
  std::vector<size_t> prefix;   // indices into Graph edges
  std::vector<size_t> pattern;  // vertex indices, nonempty
};

// Directed multigraph with per-vertex emitter class. Immutable once built;
// all operations on it are pure functions, so values are freely shareable
// across threads.
class Graph {
 public:
  Graph() = default;

  // Building interface, used by the parser and by tests. Throws
  // std::invalid_argument on duplicate ids and dangling references.
  void set_name(std::string name) { name_ = std::move(name); }
  size_t add_vertex(const std::string& id);
  size_t add_edge(const std::string& id, const std::string& src, const std::string& rng);
  void declare_uncountable(const std::string& v);
  // Prefix entries are (edge id, range id); their source is the emitter.
  void declare_countable(const std::string& v,
                         const std::vector<std::pair<std::string, std::string>>& prefix,
                         const std::vector<std::string>& pattern);
  // Whole-graph invariants; call once after building.
  void validate() const;

  const std::string& name() const { return name_; }
  size_t vertex_count() const { return vertices_.size(); }
  const std::string& vertex_id(size_t i) const { return vertices_[i]; }
  std::optional<size_t> vertex_index(const std::string& id) const;
  size_t require_vertex(const std::string& id) const;

  size_t edge_count() const { return edges_.size(); }
  const Edge& edge(size_t i) const { return edges_[i]; }
  std::optional<size_t> edge_index(const std::string& id) const;

  // Materialized out-edges: a regular vertex's edges, or a countable
  // emitter's explicit prefix edges. Sinks and uncountable emitters have
  // none.
  const std::vector<size_t>& out_edges(size_t v) const { return out_[v]; }
  const std::vector<size_t>& in_edges(size_t v) const { return in_[v]; }

  EmitterClass emitter_class(size_t v) const;
  bool is_regular(size_t v) const { return emitter_class(v) == EmitterClass::regular; }
  bool is_sink(size_t v) const { return emitter_class(v) == EmitterClass::sink; }
  const CountableEmission* countable_emission(size_t v) const;

  bool row_finite() const;
  bool has_uncountable_emitter() const;

  // Range of the j-th edge (1-based) of a countable emitter's enumeration.
  size_t enumeration_range(size_t v, size_t j) const;
  // Distinct vertices appearing as declared ranges (prefix and pattern).
  std::set<size_t> declared_range_set(size_t v) const;

  // Lexicographically least out-edge id at a regular vertex; the CK2
  // rewrite pivot.
  size_t designated_edge(size_t v) const;

  std::string serialize() const;

 private:
  std::string name_;
  std::vector<std::string> vertices_;
  std::map<std::string, size_t> vertex_index_;
  std::vector<Edge> edges_;
  std::map<std::string, size_t> edge_index_;
  std::vector<std::vector<size_t>> out_, in_;
  std::map<size_t, CountableEmission> countable_;
  std::set<size_t> uncountable_;
};

// Path in a graph: a composable edge sequence, or a single base vertex for
// length zero.
class Path {
 public:
  Path(const Graph* g, size_t base_vertex);
  Path(const Graph* g, std::vector<size_t> edges);

  const Graph* graph() const { return g_; }
  size_t length() const { return edges_.size(); }
  bool empty() const { return edges_.empty(); }
  const std::vector<size_t>& edges() const { return edges_; }
  size_t source() const;
  size_t range() const;

  Path appended(size_t edge) const;

  bool operator==(const Path& o) const;
  bool operator<(const Path& o) const;  // by length, then edge ids

  std::string to_string() const;  // "e.f" or the base vertex id

 private:
  const Graph* g_;
  std::vector<size_t> edges_;
  size_t base_;  // source vertex when edges_ is empty
};

// Parses the line-oriented graph-file grammar:
//   graph <name>
//   vertex <id>
//   edge <id> : <src> -> <rng>
//   emitter <v> countable [prefix <e>:<src>-><rng>[,...]] pattern <v1> <v2> ...
//   emitter <v> uncountable
//   # comment
// Throws ParseError with 1-based line/column positions.
Graph parse_graph(const std::string& text);

}  // namespace lpa
