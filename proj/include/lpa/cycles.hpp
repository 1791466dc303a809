#pragma once

// Cycle structure of a finite graph: strongly connected components,
// elementary cycles, simple closed paths, maximal sinks and cycles, and
// enumeration of paths ending at a vertex.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <vector>

#include "lpa/graph.hpp"
#include "lpa/path.hpp"

namespace lpa {

struct SccResult {
  std::vector<std::size_t> component;  // by vertex id
  std::size_t count = 0;
};

// Tarjan's algorithm, recursive; desk-scale graphs only.
inline SccResult strongly_connected_components(const Graph& g) {
  const std::size_t n = g.num_vertices();
  SccResult r;
  r.component.assign(n, SIZE_MAX);
  std::vector<std::size_t> index(n, SIZE_MAX), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::size_t counter = 0;
  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (auto e : g.out_edges(VertexId{static_cast<std::uint32_t>(v)})) {
      const std::size_t w = g.rng(e).value;
      if (index[w] == SIZE_MAX) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      for (;;) {
        const std::size_t w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        r.component[w] = r.count;
        if (w == v) break;
      }
      ++r.count;
    }
  };
  for (std::size_t v = 0; v < n; ++v)
    if (index[v] == SIZE_MAX) visit(v);
  return r;
}

// Vertices with a path to v (v included).
inline std::vector<bool> ancestors(const Graph& g, VertexId v) {
  std::vector<bool> seen(g.num_vertices(), false);
  std::vector<VertexId> work{v};
  seen[v.value] = true;
  while (!work.empty()) {
    const VertexId w = work.back();
    work.pop_back();
    for (auto e : g.in_edges(w)) {
      const VertexId u = g.src(e);
      if (!seen[u.value]) {
        seen[u.value] = true;
        work.push_back(u);
      }
    }
  }
  return seen;
}

// Every cycle (closed path without repeated vertices) once, in least rotation,
// sorted by length then edge names.
inline std::vector<FinitePath> elementary_cycles(const Graph& g) {
  std::set<FinitePath> found;
  const std::size_t n = g.num_vertices();
  // Cycles through start s using only vertices with id >= s; each cycle is
  // found from its least vertex exactly once.
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<bool> on_path(n, false);
    std::vector<EdgeId> edges;
    std::function<void(VertexId)> dfs = [&](VertexId v) {
      on_path[v.value] = true;
      for (auto e : g.out_edges(v)) {
        const VertexId w = g.rng(e);
        if (w.value < s) continue;
        edges.push_back(e);
        if (w.value == s) {
          found.insert(canonical_rotation(g, FinitePath::from_edges(g, edges)).first);
        } else if (!on_path[w.value]) {
          dfs(w);
        }
        edges.pop_back();
      }
      on_path[v.value] = false;
    };
    dfs(VertexId{static_cast<std::uint32_t>(s)});
  }
  return {found.begin(), found.end()};
}

inline bool lies_on_cycle(const Graph& g, const SccResult& scc, VertexId v) {
  for (auto e : g.out_edges(v))
    if (scc.component[g.rng(e).value] == scc.component[v.value]) return true;
  return false;
}

// Number of elementary cycles per strongly connected component.
inline std::vector<std::size_t> cycles_per_component(const Graph& g, const SccResult& scc,
                                                     const std::vector<FinitePath>& cycles) {
  std::vector<std::size_t> count(scc.count, 0);
  for (const auto& c : cycles) ++count[scc.component[c.source().value]];
  return count;
}

struct ClosedPathList {
  std::vector<FinitePath> paths;
  bool complete = false;
};

// Simple closed paths of length <= bound, one per rotation class (least rotation).
inline ClosedPathList simple_closed_paths(const Graph& g, std::size_t bound) {
  if (bound < 1) throw PreconditionError("bound must be >= 1");
  std::set<FinitePath> found;
  std::vector<EdgeId> edges;
  std::function<void(VertexId, VertexId)> dfs = [&](VertexId start, VertexId v) {
    if (edges.size() == bound) return;
    for (auto e : g.out_edges(v)) {
      edges.push_back(e);
      if (g.rng(e) == start) {
        const FinitePath c = FinitePath::from_edges(g, edges);
        if (is_simple_closed(c) && canonical_rotation(g, c).first == c) found.insert(c);
      }
      dfs(start, g.rng(e));
      edges.pop_back();
    }
  };
  for (auto v : g.vertices()) dfs(v, v);
  ClosedPathList r;
  r.paths.assign(found.begin(), found.end());
  const auto scc = strongly_connected_components(g);
  const auto cycles = elementary_cycles(g);
  const auto per = cycles_per_component(g, scc, cycles);
  const bool one_each = std::all_of(per.begin(), per.end(), [](std::size_t k) { return k <= 1; });
  std::size_t longest = 0;
  for (const auto& c : cycles) longest = std::max(longest, c.length());
  r.complete = one_each && bound >= longest;
  return r;
}

// Whether some vertex on a cycle has a path to v.
inline bool reached_by_cycle(const Graph& g, VertexId v) {
  const auto scc = strongly_connected_components(g);
  const auto anc = ancestors(g, v);
  for (auto u : g.vertices())
    if (anc[u.value] && lies_on_cycle(g, scc, u)) return true;
  return false;
}

// Count of finite paths ending at v, for v not reached by any cycle.
inline std::uint64_t count_paths_ending_at(const Graph& g, VertexId v) {
  if (reached_by_cycle(g, v)) throw PreconditionError("infinitely many paths end at '" + g.name(v) + "'");
  std::vector<std::uint64_t> memo(g.num_vertices(), 0);
  std::vector<bool> done(g.num_vertices(), false);
  std::function<std::uint64_t(VertexId)> count = [&](VertexId w) -> std::uint64_t {
    if (done[w.value]) return memo[w.value];
    std::uint64_t total = 1;
    for (auto e : g.in_edges(w)) total += count(g.src(e));
    done[w.value] = true;
    return memo[w.value] = total;
  };
  return count(v);
}

struct MaximalSink {
  VertexId vertex;
  std::uint64_t path_count;
};

// Sinks that no cycle reaches, with the number of paths ending there.
inline std::vector<MaximalSink> maximal_sinks(const Graph& g) {
  std::vector<MaximalSink> out;
  for (auto v : g.sinks())
    if (!reached_by_cycle(g, v)) out.push_back({v, count_paths_ending_at(g, v)});
  return out;
}

// Cycles whose component holds no other cycle and that no other cycle reaches.
inline std::vector<FinitePath> maximal_cycles(const Graph& g) {
  const auto scc = strongly_connected_components(g);
  const auto cycles = elementary_cycles(g);
  const auto per = cycles_per_component(g, scc, cycles);
  std::vector<FinitePath> out;
  for (const auto& c : cycles) {
    const std::size_t comp = scc.component[c.source().value];
    if (per[comp] != 1) continue;
    const auto anc = ancestors(g, c.source());
    bool fed = false;
    for (auto u : g.vertices())
      if (anc[u.value] && scc.component[u.value] != comp && lies_on_cycle(g, scc, u)) fed = true;
    if (!fed) out.push_back(c);
  }
  return out;
}

struct PathList {
  std::vector<FinitePath> paths;
  bool exact = false;
};

// Paths mu with r(mu) = v. When no cycle reaches v the list is complete and
// the bound is ignored; otherwise it holds every path of length <= bound.
inline PathList enumerate_paths_ending_at(const Graph& g, VertexId v, std::size_t bound) {
  PathList r;
  r.exact = !reached_by_cycle(g, v);
  std::vector<EdgeId> rev;
  std::function<void(VertexId)> back = [&](VertexId w) {
    if (rev.empty()) {
      r.paths.push_back(FinitePath::vertex(v));
    } else {
      r.paths.push_back(FinitePath::from_edges(g, std::vector<EdgeId>(rev.rbegin(), rev.rend())));
    }
    if (!r.exact && rev.size() == bound) return;
    for (auto e : g.in_edges(w)) {
      rev.push_back(e);
      back(g.src(e));
      rev.pop_back();
    }
  };
  back(v);
  std::sort(r.paths.begin(), r.paths.end());
  return r;
}

}  // namespace lpa
