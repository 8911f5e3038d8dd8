#pragma once

#include <cstdint>
#include <cstddef>
#include <vector>

namespace lpa {

// Finite multigraph abstraction shared by the predicate engines. An arc with
// omega=true stands for countably many parallel edges with the same
// endpoints (the non-materialized tail of an infinite emitter's enumeration,
// or a tail detour that can exit at infinitely many depths). Nodes flagged
// infinite_out provide an exit for any closed path through them even when no
// arc is listed.
struct WalkModel {
  struct Arc {
    size_t from, to;
    uint64_t mult;  // >= 1
    bool omega;
  };
  size_t nodes = 0;
  std::vector<Arc> arcs;
  std::vector<char> infinite_out;  // per node

  void add_arc(size_t from, size_t to, uint64_t mult, bool omega);
  // Total number of outgoing edge copies, saturated at 2.
  int out_mult_capped(size_t v) const;
};

// Number of walks from `s` to `t` (edge sequences; vertices may repeat),
// counting parallel copies, saturated at 2. The walk of length zero counts
// when s == t. Returns 0, 1 or 2 (2 means "at least two", including
// infinitely many).
int count_walks_capped(const WalkModel& m, size_t s, size_t t);

// Number of closed paths based at `v` whose intermediate edges have source
// != v (closed simple paths in the model), saturated at 2.
int count_based_returns_capped(const WalkModel& m, size_t v);

// True when some cycle (closed path with pairwise distinct arc sources) has
// no exit: every vertex on it has exactly one outgoing edge copy and is not
// infinite_out.
bool exitless_cycle_exists(const WalkModel& m);

}  // namespace lpa
