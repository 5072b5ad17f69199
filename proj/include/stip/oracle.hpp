#pragma once

// Exhaustive ground truth: try every k-subset of edges (arcs) for removal.
// Witness mappings come from a plain backtracking bijection search, not from
// the canonical-code machinery the solvers use.

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "stip/graph.hpp"
#include "stip/pdstip.hpp"
#include "stip/pustip.hpp"
#include "stip/target_tree.hpp"
#include "stip/tree_iso.hpp"

namespace stip {

inline constexpr double kOracleSubsetLimit = 1e7;

/// C(m, k) as a double, saturating well above the guard.
inline double binomial(long m, long k) {
  if (k < 0 || k > m) return 0;
  double c = 1;
  for (long i = 0; i < k; ++i) {
    c = c * static_cast<double>(m - i) / static_cast<double>(i + 1);
    if (c > 1e300) return c;
  }
  return c;
}

namespace detail {

inline void require_oracle_scale(long m, long k) {
  if (binomial(m, k) > kOracleSubsetLimit)
    throw InputError("oracle scale guard: C(" + std::to_string(m) + "," + std::to_string(k) + ") exceeds 1e7 subsets");
}

/// Calls `visit` on each k-subset of {0..m-1} in colexicographic order until
/// it returns true.
inline bool for_each_subset(int m, int k, const std::function<bool(const std::vector<EdgeId>&)>& visit) {
  if (k > m) return false;
  std::vector<int> c(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) c[i] = i;
  std::vector<EdgeId> ids(c.begin(), c.end());
  while (true) {
    std::copy(c.begin(), c.end(), ids.begin());
    if (visit(ids)) return true;
    if (!next_combination_colex(c, m)) return false;
  }
}

/// Brute-force search for a bijection t -> h with every tree edge of t landing
/// on a tree edge of h. Roots are fixed when given, otherwise every image of
/// t's vertex 0 is tried.
inline std::optional<std::vector<VertexId>> brute_force_tree_map(const UGraph& t, const UGraph& h,
                                                                 std::optional<VertexId> t_root = std::nullopt,
                                                                 std::optional<VertexId> h_root = std::nullopt) {
  if (t.n() != h.n() || !is_tree(t) || !is_tree(h)) return std::nullopt;
  const auto n = static_cast<std::size_t>(t.n());
  const VertexId tr = t_root.value_or(0);
  const auto trooting = root_tree(t, tr);
  std::vector<int> tsize(n, 1);
  for (auto it = trooting.order.rbegin(); it != trooting.order.rend(); ++it)
    if (trooting.parent[*it] != kNoVertex) tsize[trooting.parent[*it]] += tsize[*it];

  std::vector<VertexId> map(n, kNoVertex);
  std::vector<char> used(n, 0);
  std::vector<VertexId> hparent;
  std::vector<int> hsize;

  std::function<bool(std::size_t)> place = [&](std::size_t i) -> bool {
    if (i == n) return true;
    const auto v = trooting.order[i];
    const auto p = map[trooting.parent[v]];
    for (const auto& inc : h.incidence(p)) {
      const auto w = inc.other;
      if (used[w] || hparent[w] != p) continue;
      if (h.degree(w) != t.degree(v) || hsize[w] != tsize[v]) continue;
      map[v] = w;
      used[w] = 1;
      if (place(i + 1)) return true;
      used[w] = 0;
      map[v] = kNoVertex;
    }
    return false;
  };

  for (VertexId hr = 0; hr < h.n(); ++hr) {
    if (h_root && *h_root != hr) continue;
    if (h.degree(hr) != t.degree(tr)) continue;
    const auto hrooting = root_tree(h, hr);
    hparent = hrooting.parent;
    hsize.assign(n, 1);
    for (auto it = hrooting.order.rbegin(); it != hrooting.order.rend(); ++it)
      if (hparent[*it] != kNoVertex) hsize[hparent[*it]] += hsize[*it];
    std::fill(used.begin(), used.end(), 0);
    map[tr] = hr;
    used[hr] = 1;
    if (place(1)) return map;
  }
  return std::nullopt;
}

}  // namespace detail

struct OracleStats {
  long subsets = 0;  // removal sets examined
};

inline Verdict oracle_undirected(const UGraph& g, const UGraph& target, OracleStats* stats = nullptr) {
  OracleStats local;
  OracleStats& st = stats != nullptr ? *stats : local;
  st = {};
  detail::require_tree(target);
  if (g.n() != target.n())
    throw InputError("graph has " + std::to_string(g.n()) + " vertices, target has " + std::to_string(target.n()));
  if (!is_connected(g)) return Verdict::no();
  const long k = redundant_size(g);
  detail::require_oracle_scale(g.m(), k);
  const auto t_code = unrooted_code(target);

  Verdict verdict;
  detail::for_each_subset(g.m(), static_cast<int>(k), [&](const std::vector<EdgeId>& removed) {
    ++st.subsets;
    const auto h = detail::without_edges(g, removed);
    if (!is_connected(h) || unrooted_code(h) != t_code) return false;
    auto map = detail::brute_force_tree_map(target, h);
    if (!map) throw std::logic_error("oracle: equal canonical codes but no bijection found");
    verdict = Verdict::yes(std::move(*map), removed);
    return true;
  });
  return verdict;
}

inline Verdict oracle_undirected(const UGraph& g, const TargetTree& t, OracleStats* stats = nullptr) {
  return oracle_undirected(g, t.tree(), stats);
}

inline Verdict oracle_directed(const DiGraph& d, const DiGraph& target, OracleStats* stats = nullptr) {
  OracleStats local;
  OracleStats& st = stats != nullptr ? *stats : local;
  st = {};
  const auto t_root = arborescence_root(target);
  if (d.n() != target.n())
    throw InputError("graph has " + std::to_string(d.n()) + " vertices, target has " + std::to_string(target.n()));
  const auto underlying = d.underlying();
  if (!is_connected(underlying)) return Verdict::no();
  const long k = redundant_size(underlying);
  detail::require_oracle_scale(d.m(), k);
  const auto t_under = target.underlying();

  Verdict verdict;
  detail::for_each_subset(d.m(), static_cast<int>(k), [&](const std::vector<EdgeId>& removed) {
    ++st.subsets;
    const auto f = d.without(removed);
    VertexId root = kNoVertex;
    for (VertexId v = 0; v < f.n(); ++v)
      if (f.in(v).empty()) root = v;
    if (root == kNoVertex || !is_spanning_arborescence(f, root) || !arborescence_iso(target, f)) return false;
    auto map = detail::brute_force_tree_map(t_under, f.underlying(), t_root, root);
    if (!map) throw std::logic_error("oracle: isomorphic arborescences but no bijection found");
    verdict = Verdict::yes(std::move(*map), removed);
    return true;
  });
  return verdict;
}

struct InvalidNeighborReport {
  VertexId v = kNoVertex;
  std::vector<VertexId> invalid;  // ascending
  long bound = 0;                 // 2k
};

/// Neighbours u of v whose side of G - (u, v) contains a cycle or reaches v
/// again.
inline InvalidNeighborReport invalid_neighbors(const UGraph& g, VertexId v) {
  g.check_vertex(v);
  if (!is_connected(g)) throw InputError("invalid_neighbors needs a connected graph");
  InvalidNeighborReport out{v, {}, 2 * redundant_size(g)};
  const auto n = static_cast<std::size_t>(g.n());
  std::vector<char> seen(n);
  std::vector<VertexId> queue;
  for (const auto& start : g.incidence(v)) {
    const auto u = start.other;
    if (u == v) continue;
    std::fill(seen.begin(), seen.end(), 0);
    queue.assign({u});
    seen[u] = 1;
    long edge_ends = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const auto x = queue[head];
      for (const auto& inc : g.incidence(x)) {
        if (inc.edge == start.edge) continue;
        ++edge_ends;
        if (!seen[inc.other]) {
          seen[inc.other] = 1;
          queue.push_back(inc.other);
        }
      }
    }
    const long vertices = static_cast<long>(queue.size());
    const long edges = edge_ends / 2;
    if (seen[v] || edges >= vertices) out.invalid.push_back(u);
  }
  std::sort(out.invalid.begin(), out.invalid.end());
  out.invalid.erase(std::unique(out.invalid.begin(), out.invalid.end()), out.invalid.end());
  return out;
}

}  // namespace stip
