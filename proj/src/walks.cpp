#include "lpa/walks.hpp"

#include <algorithm>
#include <functional>

namespace lpa {

void WalkModel::add_arc(size_t from, size_t to, uint64_t mult, bool omega) {
  if (mult == 0 && !omega) return;
  arcs.push_back(Arc{from, to, mult == 0 ? 1 : mult, omega});
}

int WalkModel::out_mult_capped(size_t v) const {
  if (!infinite_out.empty() && infinite_out[v]) return 2;
  uint64_t total = 0;
  for (const Arc& a : arcs)
    if (a.from == v) {
      if (a.omega) return 2;
      total += a.mult;
      if (total >= 2) return 2;
    }
  return static_cast<int>(total);
}

namespace {

std::vector<std::vector<size_t>> forward_adj(const WalkModel& m) {
  std::vector<std::vector<size_t>> adj(m.nodes);
  for (size_t i = 0; i < m.arcs.size(); ++i) adj[m.arcs[i].from].push_back(i);
  return adj;
}

std::vector<char> reachable_from(const WalkModel& m, size_t s) {
  std::vector<char> seen(m.nodes, 0);
  std::vector<size_t> stack{s};
  seen[s] = 1;
  auto adj = forward_adj(m);
  while (!stack.empty()) {
    size_t v = stack.back();
    stack.pop_back();
    for (size_t ai : adj[v]) {
      size_t w = m.arcs[ai].to;
      if (!seen[w]) { seen[w] = 1; stack.push_back(w); }
    }
  }
  return seen;
}

std::vector<char> coreachable_to(const WalkModel& m, size_t t) {
  std::vector<char> seen(m.nodes, 0);
  std::vector<std::vector<size_t>> radj(m.nodes);
  for (size_t i = 0; i < m.arcs.size(); ++i) radj[m.arcs[i].to].push_back(i);
  std::vector<size_t> stack{t};
  seen[t] = 1;
  while (!stack.empty()) {
    size_t v = stack.back();
    stack.pop_back();
    for (size_t ai : radj[v]) {
      size_t w = m.arcs[ai].from;
      if (!seen[w]) { seen[w] = 1; stack.push_back(w); }
    }
  }
  return seen;
}

// Cycle detection restricted to a node mask, parallel copies ignored.
bool has_cycle_within(const WalkModel& m, const std::vector<char>& mask) {
  enum { White, Grey, Black };
  std::vector<int> color(m.nodes, White);
  auto adj = forward_adj(m);
  std::function<bool(size_t)> dfs = [&](size_t v) -> bool {
    color[v] = Grey;
    for (size_t ai : adj[v]) {
      size_t w = m.arcs[ai].to;
      if (!mask[w]) continue;
      if (color[w] == Grey) return true;
      if (color[w] == White && dfs(w)) return true;
    }
    color[v] = Black;
    return false;
  };
  for (size_t v = 0; v < m.nodes; ++v)
    if (mask[v] && color[v] == White && dfs(v)) return true;
  return false;
}

int saturating_add(int a, int b) { return std::min(2, a + b); }

int saturating_mul_arc(const WalkModel::Arc& a, int ways) {
  if (ways == 0) return 0;
  if (a.omega || a.mult >= 2) return 2;
  return std::min(2, ways);
}

}  // namespace

int count_walks_capped(const WalkModel& m, size_t s, size_t t) {
  std::vector<char> fwd = reachable_from(m, s);
  std::vector<char> bwd = coreachable_to(m, t);
  std::vector<char> relevant(m.nodes, 0);
  bool any = false;
  for (size_t v = 0; v < m.nodes; ++v) {
    relevant[v] = fwd[v] && bwd[v];
    any = any || relevant[v];
  }
  if (!relevant[s] || !relevant[t]) return 0;  // no walk at all
  (void)any;
  // Any cycle touching a relevant node can be pumped into infinitely many
  // distinct s->t walks.
  if (has_cycle_within(m, relevant)) return 2;
  // The relevant subgraph is acyclic: count by DP in topological order.
  auto adj = forward_adj(m);
  std::vector<int> ways(m.nodes, -1);
  std::function<int(size_t)> count = [&](size_t v) -> int {
    if (ways[v] >= 0) return ways[v];
    int w = (v == t) ? 1 : 0;
    ways[v] = w;  // acyclic, so no re-entry
    for (size_t ai : adj[v]) {
      const auto& a = m.arcs[ai];
      if (!relevant[a.to]) continue;
      w = saturating_add(w, saturating_mul_arc(a, count(a.to)));
    }
    ways[v] = w;
    return w;
  };
  return count(s);
}

int count_based_returns_capped(const WalkModel& m, size_t v) {
  // Split v: node `nodes` takes over v's outgoing arcs, v keeps only its
  // incoming role. Walks split_v -> v are then exactly the closed simple
  // paths based at v.
  WalkModel split;
  split.nodes = m.nodes + 1;
  split.infinite_out.assign(split.nodes, 0);
  for (const auto& a : m.arcs) {
    size_t from = a.from == v ? m.nodes : a.from;
    split.add_arc(from, a.to, a.mult, a.omega);
  }
  return count_walks_capped(split, m.nodes, v);
}

bool exitless_cycle_exists(const WalkModel& m) {
  // Keep only vertices whose single outgoing edge copy is forced; a cycle in
  // the kept subgraph is exactly a cycle without an exit.
  std::vector<char> forced(m.nodes, 0);
  for (size_t vtx = 0; vtx < m.nodes; ++vtx) forced[vtx] = m.out_mult_capped(vtx) == 1;
  WalkModel sub;
  sub.nodes = m.nodes;
  sub.infinite_out.assign(m.nodes, 0);
  for (const auto& a : m.arcs)
    if (forced[a.from] && forced[a.to]) sub.add_arc(a.from, a.to, 1, false);
  return has_cycle_within(sub, forced);
}

}  // namespace lpa
