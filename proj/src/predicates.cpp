#include "lpa/predicates.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace lpa {

namespace {

// Rotate a cycle's edge list so it starts with the least edge id.
std::vector<size_t> canonical_rotation(const Graph& g, const std::vector<size_t>& es) {
  size_t best = 0;
  auto rotation_less = [&](size_t a, size_t b) {
    for (size_t k = 0; k < es.size(); ++k) {
      const std::string& x = g.edge(es[(a + k) % es.size()]).id;
      const std::string& y = g.edge(es[(b + k) % es.size()]).id;
      if (x != y) return x < y;
    }
    return false;
  };
  for (size_t i = 1; i < es.size(); ++i)
    if (rotation_less(i, best)) best = i;
  std::vector<size_t> out;
  out.reserve(es.size());
  for (size_t k = 0; k < es.size(); ++k) out.push_back(es[(best + k) % es.size()]);
  return out;
}

}  // namespace

std::vector<Path> cycles(const Graph& g) {
  // A cycle's edge sources are pairwise distinct, so its length is at most
  // |E^0|. Enumerate each rotation class once by requiring the start vertex
  // to be the minimum vertex index on the cycle.
  std::set<Path> found;
  std::vector<size_t> stack;
  std::vector<char> on_path(g.vertex_count(), 0);
  std::function<void(size_t, size_t)> dfs = [&](size_t start, size_t at) {
    for (size_t e : g.out_edges(at)) {
      size_t w = g.edge(e).rng;
      if (w == start) {
        stack.push_back(e);
        found.insert(Path(&g, canonical_rotation(g, stack)));
        stack.pop_back();
        continue;
      }
      if (w < start || on_path[w]) continue;
      stack.push_back(e);
      on_path[w] = 1;
      dfs(start, w);
      on_path[w] = 0;
      stack.pop_back();
    }
  };
  for (size_t v = 0; v < g.vertex_count(); ++v) {
    on_path[v] = 1;
    dfs(v, v);
    on_path[v] = 0;
  }
  return std::vector<Path>(found.begin(), found.end());
}

std::vector<Path> closed_simple_paths(const Graph& g, const std::string& vid, size_t max_len) {
  size_t v = g.require_vertex(vid);
  if (max_len == 0) max_len = 2 * g.vertex_count();
  std::set<Path> found;
  std::vector<size_t> stack;
  std::function<void(size_t)> dfs = [&](size_t at) {
    if (stack.size() >= max_len) return;
    for (size_t e : g.out_edges(at)) {
      if (!stack.empty() && at == v) continue;  // intermediate source must avoid v
      size_t w = g.edge(e).rng;
      stack.push_back(e);
      if (w == v) found.insert(Path(&g, stack));
      dfs(w);
      stack.pop_back();
    }
  };
  dfs(v);
  return std::vector<Path>(found.begin(), found.end());
}

WalkModel model_of(const Graph& g) {
  WalkModel m;
  m.nodes = g.vertex_count();
  m.infinite_out.assign(m.nodes, 0);
  std::map<std::pair<size_t, size_t>, uint64_t> grouped;
  for (size_t e = 0; e < g.edge_count(); ++e)
    grouped[{g.edge(e).src, g.edge(e).rng}] += 1;
  for (size_t v = 0; v < g.vertex_count(); ++v) {
    EmitterClass c = g.emitter_class(v);
    if (c == EmitterClass::countable_infinite) {
      m.infinite_out[v] = 1;
      for (size_t r : g.countable_emission(v)->pattern) {
        auto key = std::make_pair(v, r);
        // countably many enumeration edges share each pattern range
        m.add_arc(v, r, grouped.count(key) ? grouped[key] : 0, true);
        grouped.erase(key);
      }
    } else if (c == EmitterClass::uncountable_infinite) {
      m.infinite_out[v] = 1;
    }
  }
  for (const auto& [key, mult] : grouped) m.add_arc(key.first, key.second, mult, false);
  return m;
}

bool condition_L(const Graph& g) { return !exitless_cycle_exists(model_of(g)); }

bool condition_K(const Graph& g) {
  WalkModel m = model_of(g);
  for (size_t v = 0; v < g.vertex_count(); ++v)
    if (count_based_returns_capped(m, v) == 1) return false;
  return true;
}

namespace {

std::set<size_t> hs_close(const Graph& g, std::set<size_t> h) {
  bool changed = true;
  while (changed) {
    changed = false;
    // hereditary: ranges of out-edges and of declared emitter ranges
    for (size_t v : std::vector<size_t>(h.begin(), h.end())) {
      for (size_t e : g.out_edges(v))
        if (h.insert(g.edge(e).rng).second) changed = true;
      if (g.emitter_class(v) == EmitterClass::countable_infinite)
        for (size_t r : g.declared_range_set(v))
          if (h.insert(r).second) changed = true;
    }
    // saturated: regular vertices with every range inside
    for (size_t v = 0; v < g.vertex_count(); ++v) {
      if (h.count(v) || !g.is_regular(v)) continue;
      bool all_in = true;
      for (size_t e : g.out_edges(v)) all_in = all_in && h.count(g.edge(e).rng);
      if (all_in) {
        h.insert(v);
        changed = true;
      }
    }
  }
  return h;
}

}  // namespace

std::set<std::string> hs_closure(const Graph& g, const std::set<std::string>& xs) {
  std::set<size_t> h;
  for (const auto& id : xs) h.insert(g.require_vertex(id));
  h = hs_close(g, h);
  std::set<std::string> out;
  for (size_t v : h) out.insert(g.vertex_id(v));
  return out;
}

HSLattice::HSLattice(const Graph* g, std::vector<std::set<size_t>> members)
    : g_(g), members_(std::move(members)) {
  auto by_card = [&](const std::set<size_t>& a, const std::set<size_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    std::vector<std::string> ia, ib;
    for (size_t v : a) ia.push_back(g_->vertex_id(v));
    for (size_t v : b) ib.push_back(g_->vertex_id(v));
    std::sort(ia.begin(), ia.end());
    std::sort(ib.begin(), ib.end());
    return ia < ib;
  };
  std::sort(members_.begin(), members_.end(), by_card);
  size_t n = members_.size();
  meet_.assign(n * n, 0);
  join_.assign(n * n, 0);
  auto index_of = [&](const std::set<size_t>& s) -> size_t {
    for (size_t i = 0; i < n; ++i)
      if (members_[i] == s) return i;
    throw std::logic_error("hereditary saturated family not closed");
  };
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      std::set<size_t> cap;
      std::set_intersection(members_[i].begin(), members_[i].end(), members_[j].begin(),
                            members_[j].end(), std::inserter(cap, cap.begin()));
      meet_[i * n + j] = index_of(cap);
      std::set<size_t> cup = members_[i];
      cup.insert(members_[j].begin(), members_[j].end());
      join_[i * n + j] = index_of(hs_close(*g_, cup));
    }
}

std::set<std::string> HSLattice::member_ids(size_t i) const {
  std::set<std::string> out;
  for (size_t v : members_[i]) out.insert(g_->vertex_id(v));
  return out;
}

std::string HSLattice::to_string() const {
  std::ostringstream os;
  for (size_t i = 0; i < members_.size(); ++i) {
    if (i) os << " ";
    os << "{";
    bool first = true;
    for (const auto& id : member_ids(i)) {
      if (!first) os << ",";
      os << id;
      first = false;
    }
    os << "}";
  }
  return os.str();
}

HSLattice hs_lattice(const Graph& g) {
  // Every hereditary saturated set is the join of the closures of its
  // singletons, so close {∅} ∪ {cl({v})} under pairwise joins.
  std::set<std::set<size_t>> members;
  members.insert(std::set<size_t>{});
  std::vector<std::set<size_t>> work;
  for (size_t v = 0; v < g.vertex_count(); ++v) {
    auto c = hs_close(g, {v});
    if (members.insert(c).second) work.push_back(c);
  }
  while (!work.empty()) {
    std::set<size_t> cur = work.back();
    work.pop_back();
    for (const auto& other : std::vector<std::set<size_t>>(members.begin(), members.end())) {
      std::set<size_t> cup = cur;
      cup.insert(other.begin(), other.end());
      auto j = hs_close(g, cup);
      if (members.insert(j).second) work.push_back(j);
    }
    if (members.size() > 100000)
      throw std::invalid_argument("hereditary saturated lattice too large to materialize");
  }
  return HSLattice(&g, std::vector<std::set<size_t>>(members.begin(), members.end()));
}

bool cofinal(const Graph& g) { return hs_lattice(g).size() == 2; }

}  // namespace lpa
