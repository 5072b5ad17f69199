#pragma once

// Helpers shared by the test binaries: small named graphs and brute-force
// checks that share no code with the library's canonical forms.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "stip/stip.hpp"

namespace testing_support {

using stip::Arc;
using stip::DiGraph;
using stip::Edge;
using stip::EdgeId;
using stip::UGraph;
using stip::VertexId;

inline UGraph path(VertexId n) {
  std::vector<Edge> e;
  for (VertexId i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
  return UGraph::simple(n, e);
}

inline UGraph cycle(VertexId n) {
  std::vector<Edge> e;
  for (VertexId i = 0; i < n; ++i) e.push_back({i, (i + 1) % n});
  return UGraph::simple(n, e);
}

inline UGraph star(VertexId n) {
  std::vector<Edge> e;
  for (VertexId i = 1; i < n; ++i) e.push_back({0, i});
  return UGraph::simple(n, e);
}

inline UGraph complete(VertexId n) {
  std::vector<Edge> e;
  for (VertexId i = 0; i < n; ++i)
    for (VertexId j = i + 1; j < n; ++j) e.push_back({i, j});
  return UGraph::simple(n, e);
}

// Theta graph on a=0, b=1, x=2, y=3, z=4: edges ax, xb, ay, yb, az, zb.
inline constexpr VertexId kA = 0, kB = 1, kX = 2, kY = 3, kZ = 4;
inline UGraph theta() { return UGraph::simple(5, {{kA, kX}, {kX, kB}, {kA, kY}, {kY, kB}, {kA, kZ}, {kZ, kB}}); }

// Two triangles {v,a,b} and {v,c,d} sharing v=0.
inline UGraph figure_eight() { return UGraph::simple(5, {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {3, 4}, {4, 0}}); }

inline DiGraph dipath(VertexId n) {
  std::vector<Arc> a;
  for (VertexId i = 0; i + 1 < n; ++i) a.push_back({i, i + 1});
  return DiGraph::simple(n, a);
}

inline DiGraph dicycle(VertexId n) {
  std::vector<Arc> a;
  for (VertexId i = 0; i < n; ++i) a.push_back({i, (i + 1) % n});
  return DiGraph::simple(n, a);
}

inline DiGraph out_star(VertexId n) {
  std::vector<Arc> a;
  for (VertexId i = 1; i < n; ++i) a.push_back({0, i});
  return DiGraph::simple(n, a);
}

inline UGraph relabel(const UGraph& g, const std::vector<VertexId>& p) {
  std::vector<Edge> e;
  for (const auto& x : g.edges()) e.push_back({p[x.u], p[x.v]});
  return UGraph::simple(g.n(), e);
}

inline DiGraph relabel(const DiGraph& d, const std::vector<VertexId>& p) {
  std::vector<Arc> a;
  for (const auto& x : d.arcs()) a.push_back({p[x.tail], p[x.head]});
  return DiGraph::simple(d.n(), a);
}

inline std::vector<VertexId> random_perm(VertexId n, std::uint64_t seed) {
  stip::Rng rng(seed);
  return rng.permutation(n);
}

inline std::set<std::pair<VertexId, VertexId>> edge_set(const UGraph& g) {
  std::set<std::pair<VertexId, VertexId>> s;
  for (const auto& e : g.edges()) s.emplace(std::min(e.u, e.v), std::max(e.u, e.v));
  return s;
}

inline std::vector<std::size_t> degree_sequence(const UGraph& g) {
  std::vector<std::size_t> d;
  for (VertexId v = 0; v < g.n(); ++v) d.push_back(g.degree(v));
  std::sort(d.begin(), d.end());
  return d;
}

/// Tries all n! bijections. `fix` pins one vertex of a onto one vertex of b.
inline bool brute_iso(const UGraph& a, const UGraph& b, std::optional<std::pair<VertexId, VertexId>> fix = {}) {
  if (a.n() != b.n() || a.m() != b.m()) return false;
  if (degree_sequence(a) != degree_sequence(b)) return false;
  const auto ea = edge_set(a);
  const auto eb = edge_set(b);
  std::vector<VertexId> p(static_cast<std::size_t>(a.n()));
  std::iota(p.begin(), p.end(), 0);
  do {
    if (fix && p[fix->first] != fix->second) continue;
    bool ok = true;
    for (const auto& [u, v] : ea)
      if (!eb.count({std::min(p[u], p[v]), std::max(p[u], p[v])})) {
        ok = false;
        break;
      }
    if (ok) return true;
  } while (std::next_permutation(p.begin(), p.end()));
  return false;
}

inline bool brute_iso(const DiGraph& a, const DiGraph& b) {
  if (a.n() != b.n() || a.m() != b.m()) return false;
  std::set<std::pair<VertexId, VertexId>> eb;
  for (const auto& x : b.arcs()) eb.emplace(x.tail, x.head);
  std::vector<VertexId> p(static_cast<std::size_t>(a.n()));
  std::iota(p.begin(), p.end(), 0);
  do {
    bool ok = true;
    for (const auto& x : a.arcs())
      if (!eb.count({p[x.tail], p[x.head]})) {
        ok = false;
        break;
      }
    if (ok) return true;
  } while (std::next_permutation(p.begin(), p.end()));
  return false;
}

/// Union-find connectivity, independent of the library.
inline bool connected(VertexId n, const std::vector<Edge>& edges) {
  std::vector<VertexId> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<VertexId(VertexId)> find = [&](VertexId x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  int comps = n;
  for (const auto& e : edges) {
    const auto a = find(e.u), b = find(e.v);
    if (a != b) {
      parent[a] = b;
      --comps;
    }
  }
  return comps <= 1;
}

/// Ground truth by exhaustive removal and permutation isomorphism. Small n only.
inline bool brute_has_spanning_tree(const UGraph& g, const UGraph& t) {
  if (g.n() != t.n()) return false;
  const int m = g.m();
  const int keep = g.n() - 1;
  if (keep > m) return false;
  std::vector<int> pick(static_cast<std::size_t>(m), 0);
  std::fill(pick.begin(), pick.begin() + keep, 1);
  std::sort(pick.begin(), pick.end());
  do {
    std::vector<Edge> e;
    for (int i = 0; i < m; ++i)
      if (pick[i]) e.push_back(g.edge(i));
    if (!connected(g.n(), e)) continue;
    if (brute_iso(t, UGraph::simple(g.n(), e))) return true;
  } while (std::next_permutation(pick.begin(), pick.end()));
  return false;
}

inline bool brute_has_spanning_arborescence(const DiGraph& d, const DiGraph& t) {
  if (d.n() != t.n()) return false;
  const int m = d.m();
  const int keep = d.n() - 1;
  if (keep > m) return false;
  std::vector<int> pick(static_cast<std::size_t>(m), 0);
  std::fill(pick.begin(), pick.begin() + keep, 1);
  std::sort(pick.begin(), pick.end());
  do {
    std::vector<Arc> a;
    for (int i = 0; i < m; ++i)
      if (pick[i]) a.push_back(d.arc(i));
    if (brute_iso(t, DiGraph::simple(d.n(), a))) return true;
  } while (std::next_permutation(pick.begin(), pick.end()));
  return false;
}

/// Every labelled tree on n vertices (Prüfer sequences), n >= 1.
/// Every k-subset of arcs whose removal leaves a spanning arborescence rooted
/// at r, by plain subset enumeration.
inline std::vector<std::vector<EdgeId>> brute_arborescence_removals(const DiGraph& d, VertexId r) {
  const int m = d.m();
  const int k = m - d.n() + 1;
  std::vector<std::vector<EdgeId>> out;
  std::vector<int> pick(static_cast<std::size_t>(m), 0);
  std::fill(pick.end() - k, pick.end(), 1);
  do {
    std::vector<EdgeId> removed;
    std::vector<int> indeg(static_cast<std::size_t>(d.n()), 0);
    std::vector<std::vector<VertexId>> out_adj(static_cast<std::size_t>(d.n()));
    for (int i = 0; i < m; ++i) {
      if (pick[i]) {
        removed.push_back(i);
      } else {
        ++indeg[d.arc(i).head];
        out_adj[d.arc(i).tail].push_back(d.arc(i).head);
      }
    }
    bool ok = indeg[r] == 0;
    for (VertexId v = 0; v < d.n() && ok; ++v)
      if (v != r && indeg[v] != 1) ok = false;
    if (ok) {
      std::vector<char> seen(static_cast<std::size_t>(d.n()), 0);
      std::vector<VertexId> stack{r};
      seen[r] = 1;
      int count = 1;
      while (!stack.empty()) {
        const auto x = stack.back();
        stack.pop_back();
        for (auto y : out_adj[x])
          if (!seen[y]) {
            seen[y] = 1;
            ++count;
            stack.push_back(y);
          }
      }
      if (count == d.n()) out.push_back(removed);
    }
  } while (std::next_permutation(pick.begin(), pick.end()));
  return out;
}

inline std::vector<UGraph> all_labelled_trees(VertexId n) {
  if (n == 1) return {UGraph(1)};
  if (n == 2) return {UGraph::simple(2, {{0, 1}})};
  std::vector<UGraph> out;
  std::vector<VertexId> seq(static_cast<std::size_t>(n - 2), 0);
  while (true) {
    std::vector<int> count(static_cast<std::size_t>(n), 0);
    for (auto x : seq) ++count[x];
    std::vector<Edge> e;
    std::vector<VertexId> s = seq;
    for (auto x : s) {
      VertexId leaf = 0;
      while (count[leaf] != 0) ++leaf;
      e.push_back({leaf, x});
      count[leaf] = -1;
      --count[x];
    }
    std::vector<VertexId> last;
    for (VertexId v = 0; v < n; ++v)
      if (count[v] == 0) last.push_back(v);
    e.push_back({last[0], last[1]});
    out.push_back(UGraph::simple(n, e));
    std::size_t i = 0;
    while (i < seq.size() && ++seq[i] == n) seq[i++] = 0;
    if (i == seq.size()) break;
  }
  return out;
}

/// One representative per isomorphism class, found by permutation search.
inline std::vector<UGraph> unlabelled_trees(VertexId n) {
  std::vector<UGraph> reps;
  for (auto& t : all_labelled_trees(n)) {
    bool seen = false;
    for (const auto& r : reps)
      if (brute_iso(r, t)) {
        seen = true;
        break;
      }
    if (!seen) reps.push_back(std::move(t));
  }
  return reps;
}

}  // namespace testing_support
