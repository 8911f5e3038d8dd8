#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "lpa/graph.hpp"
#include "lpa/walks.hpp"

namespace lpa {

// All cycles over materialized edges, one representative per rotation class,
// canonicalized to the lexicographically least edge-id rotation and sorted.
// Cycles through the non-materialized part of an emitter's enumeration are
// not representable as Paths; the boolean predicates below account for them
// symbolically.
std::vector<Path> cycles(const Graph& g);

// Closed simple paths based at v (s = r = v, intermediate edge sources != v)
// over materialized edges, up to length max_len. The full set can be
// infinite (a return path may loop through a cycle that avoids v), so this
// enumerator is bounded; max_len == 0 means 2 * |E^0|. condition_K does not
// use it: it decides the >= 2 condition exactly.
std::vector<Path> closed_simple_paths(const Graph& g, const std::string& v, size_t max_len = 0);

// Condition (L): every cycle has an exit. Declared emitter edges count both
// as cycle edges and as exits.
bool condition_L(const Graph& g);

// Condition (K): every vertex based on a closed simple path admits at least
// two closed simple paths. Decided exactly, with non-materialized emitter
// edges contributing countably many parallel copies.
bool condition_K(const Graph& g);

// Smallest hereditary and saturated superset of X. Hereditary closure
// follows declared emitter ranges (prefix and pattern); saturation applies
// to regular vertices only.
std::set<std::string> hs_closure(const Graph& g, const std::set<std::string>& xs);

// Lattice of all hereditary and saturated vertex subsets.
class HSLattice {
 public:
  HSLattice(const Graph* g, std::vector<std::set<size_t>> members);

  size_t size() const { return members_.size(); }
  // Sorted by cardinality then by vertex ids.
  const std::vector<std::set<size_t>>& members() const { return members_; }
  std::set<std::string> member_ids(size_t i) const;

  size_t meet(size_t i, size_t j) const { return meet_[i * members_.size() + j]; }
  size_t join(size_t i, size_t j) const { return join_[i * members_.size() + j]; }

  std::string to_string() const;  // "{} {v} {u,v}"

 private:
  const Graph* g_;
  std::vector<std::set<size_t>> members_;
  std::vector<size_t> meet_, join_;
};

HSLattice hs_lattice(const Graph& g);

// Cofinal: the only hereditary and saturated subsets are the trivial two.
bool cofinal(const Graph& g);

// Shared finite model of a graph's closed-path structure; exposed for the
// tails module.
WalkModel model_of(const Graph& g);

}  // namespace lpa
