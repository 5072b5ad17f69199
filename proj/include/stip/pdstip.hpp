#pragma once

// Directed spanning tree isomorphism for out-arborescence targets.
//
// Every redundant arc lies on an anchor chain of the kernel of the underlying
// graph, and no chain loses more than one arc. Within a chain the arc
// directions leave at most two deletable arcs: each chain-interior vertex
// must keep exactly one incoming chain arc, except the vertex through which
// the root enters the chain, which keeps none. The solver enumerates k-subsets
// of kernel edges and, per subset, every choice among those candidates.

#include <algorithm>
#include <optional>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "stip/graph.hpp"
#include "stip/kernelize.hpp"
#include "stip/target_tree.hpp"
#include "stip/tree_iso.hpp"

namespace stip {

struct ChainCandidates {
  std::optional<int> root_entry;  // index into chain.vertices
  std::vector<EdgeId> candidates;  // arcs whose deletion fits the chain, ascending
  int reversal_count = 0;          // direction changes between consecutive hops
};

/// Deletable arcs of one chain. `root_entry`, when given, is the interior
/// position where the root reaches the chain first (the root itself or the
/// attachment of the pendant tree holding it).
inline ChainCandidates chain_candidates(const DiGraph& d, const AnchorChain& chain,
                                        std::optional<int> root_entry = std::nullopt) {
  const auto hops = chain.edges.size();
  if (chain.vertices.size() != hops + 1 || hops == 0) throw InputError("malformed chain: vertex/arc counts disagree");
  const int last = static_cast<int>(hops);  // index of the far endpoint
  if (root_entry && (*root_entry < 1 || *root_entry >= last))
    throw InputError("malformed chain: root entry is not an interior position");

  // head position of every hop, +1 forward / -1 backward
  std::vector<int> head(hops);
  std::vector<int> dir(hops);
  for (std::size_t h = 0; h < hops; ++h) {
    const auto a = chain.edges[h];
    if (a < 0 || a >= d.m()) throw InputError("malformed chain: unknown arc " + std::to_string(a));
    const auto& arc = d.arc(a);
    const auto from = chain.vertices[h];
    const auto to = chain.vertices[h + 1];
    if (arc.tail == from && arc.head == to) {
      head[h] = static_cast<int>(h + 1);
      dir[h] = 1;
    } else if (arc.tail == to && arc.head == from) {
      head[h] = static_cast<int>(h);
      dir[h] = -1;
    } else {
      throw InputError("malformed chain: arc " + std::to_string(a) + " does not join consecutive chain vertices");
    }
  }

  ChainCandidates out;
  out.root_entry = root_entry;
  for (std::size_t h = 1; h < hops; ++h)
    if (dir[h] != dir[h - 1]) ++out.reversal_count;

  std::vector<int> in(hops + 1, 0);
  for (auto h : head) ++in[h];
  auto need = [&](int i) { return root_entry && *root_entry == i ? 0 : 1; };
  int bad = 0;
  for (int i = 1; i < last; ++i)
    if (in[i] != need(i)) ++bad;

  for (std::size_t h = 0; h < hops; ++h) {
    const int x = head[h];
    int after = bad;
    if (x >= 1 && x < last) after += (in[x] - 1 != need(x)) - (in[x] != need(x));
    if (after == 0) out.candidates.push_back(chain.edges[h]);
  }
  std::sort(out.candidates.begin(), out.candidates.end());
  return out;
}

/// n - 1 arcs, the root has in-degree 0, every other vertex in-degree 1, and
/// the root reaches everything.
inline bool is_spanning_arborescence(const DiGraph& f, VertexId r) {
  if (r < 0 || r >= f.n()) return false;
  if (f.m() != f.n() - 1) return false;
  for (VertexId v = 0; v < f.n(); ++v)
    if (f.in(v).size() != (v == r ? 0u : 1u)) return false;
  return reachable_all(f, r);
}

/// Checks a YES certificate: k arcs removed, the rest a spanning arborescence,
/// and the mapping carries every target arc onto a kept arc with its
/// direction.
inline bool certify_directed(const DiGraph& d, const DiGraph& target, const Verdict& verdict) {
  if (!verdict.yes() || !verdict.mapping || !verdict.removed) return false;
  if (d.n() != target.n() || !is_arborescence(target)) return false;
  const auto n = static_cast<std::size_t>(d.n());
  const auto& map = *verdict.mapping;
  const auto& removed = *verdict.removed;
  const long k = static_cast<long>(d.m()) - static_cast<long>(d.n()) + 1;
  if (map.size() != n || static_cast<long>(removed.size()) != k) return false;
  std::vector<bool> hit(n, false);
  for (auto v : map) {
    if (v < 0 || static_cast<std::size_t>(v) >= n || hit[v]) return false;
    hit[v] = true;
  }
  std::set<EdgeId> gone;
  for (auto a : removed)
    if (a < 0 || a >= d.m() || !gone.insert(a).second) return false;

  const auto f = d.without(removed);
  if (!is_spanning_arborescence(f, map[arborescence_root(target)])) return false;
  std::set<std::pair<VertexId, VertexId>> kept;
  for (const auto& a : f.arcs()) kept.emplace(a.tail, a.head);
  std::set<std::pair<VertexId, VertexId>> image;
  for (const auto& a : target.arcs()) {
    const std::pair arc{map[a.tail], map[a.head]};
    if (!kept.count(arc)) return false;
    image.insert(arc);
  }
  return image == kept;
}

struct RootWork {
  VertexId root = kNoVertex;
  long subsets = 0;        // k-subsets of kernel edges examined
  long plans = 0;          // candidate deletions examined
  long arborescences = 0;  // plans that left a spanning arborescence
};

struct PdstipOptions {
  /// Per-root work counters, one line per reachable root.
  std::ostream* trace = nullptr;
};

struct PdstipStats {
  std::string route;  // "disconnected", "tree", "unicyclic" or "kernel"
  long k = 0;
  long kernel_edges = 0;
  std::vector<RootWork> roots;  // reachable roots examined, in order
  long plans = 0;
};

namespace detail {

/// Where the root first meets each chain: climb out of the pendant tree to the
/// core; a chain-interior landing point is that chain's entry.
struct RootEntry {
  EdgeId chain = kNoEdge;
  int index = -1;
};

inline RootEntry root_entry_of(const Kernel& kernel, VertexId r) {
  auto v = r;
  while (kernel.trim_parent[v] != kNoVertex) v = kernel.trim_parent[v];
  if (kernel.is_anchor[v]) return {};
  const auto& slot = kernel.chain_slot[v];
  return {slot.chain, slot.index};
}

/// Advances a colexicographic k-combination of {0, ..., n - 1}.
inline bool next_combination_colex(std::vector<int>& c, int n) {
  const auto k = c.size();
  for (std::size_t j = 0; j < k; ++j) {
    const int limit = j + 1 < k ? c[j + 1] : n;
    if (c[j] + 1 < limit) {
      ++c[j];
      for (std::size_t i = 0; i < j; ++i) c[i] = static_cast<int>(i);
      return true;
    }
  }
  return false;
}

inline Verdict try_arborescence(const DiGraph& f, const std::vector<EdgeId>& removed, const DiGraph& target) {
  if (!is_arborescence(f) || !arborescence_iso(target, f)) return Verdict::no();
  return Verdict::yes(*arborescence_isomorphism(target, f), removed);
}

}  // namespace detail

inline Verdict solve_pdstip(const DiGraph& d, const DiGraph& target, const PdstipOptions& options = {},
                            PdstipStats* stats = nullptr) {
  PdstipStats local;
  PdstipStats& st = stats != nullptr ? *stats : local;
  st = {};
  if (d.n() != target.n())
    throw InputError("graph has " + std::to_string(d.n()) + " vertices, target has " + std::to_string(target.n()));
  const auto t_root = arborescence_root(target);  // throws for non-arborescence targets
  const auto underlying = d.underlying();
  if (!is_connected(underlying)) {
    st.route = "disconnected";
    return Verdict::no();
  }
  const long k = redundant_size(underlying);
  st.k = k;

  Verdict verdict;
  if (k == 0) {
    st.route = "tree";
    verdict = detail::try_arborescence(d, {}, target);
  } else if (k == 1) {
    st.route = "unicyclic";
    const auto core = peel_to_core(underlying);
    for (EdgeId a = 0; a < d.m() && !verdict.yes(); ++a) {
      const auto& arc = d.arc(a);
      if (core.in_core[arc.tail] && core.in_core[arc.head]) verdict = detail::try_arborescence(d.without({a}), {a}, target);
    }
  } else {
    st.route = "kernel";
    const auto kernel = make_contractible(underlying);
    const int edges = static_cast<int>(kernel.chains.size());
    st.kernel_edges = edges;
    std::vector<std::vector<EdgeId>> off_chain(kernel.chains.size());
    for (std::size_t e = 0; e < kernel.chains.size(); ++e)
      off_chain[e] = chain_candidates(d, kernel.chains[e]).candidates;

    const auto t_under = target.underlying();
    const auto t_code = rooted_code(t_under, t_root);

    for (VertexId r = 0; r < d.n() && !verdict.yes(); ++r) {
      if (!reachable_all(d, r)) continue;
      RootWork work{r};
      const auto entry = detail::root_entry_of(kernel, r);
      std::vector<EdgeId> on_chain;
      if (entry.chain != kNoEdge) on_chain = chain_candidates(d, kernel.chains[entry.chain], entry.index).candidates;

      std::vector<int> subset(static_cast<std::size_t>(k));
      for (int i = 0; i < static_cast<int>(k); ++i) subset[i] = i;
      if (k <= edges) {
        do {
          ++work.subsets;
          std::vector<const std::vector<EdgeId>*> options_per_chain;
          bool feasible = true;
          for (auto e : subset) {
            const auto* opts = e == entry.chain ? &on_chain : &off_chain[e];
            if (opts->empty()) feasible = false;
            options_per_chain.push_back(opts);
          }
          if (!feasible) continue;
          std::vector<std::size_t> digit(subset.size(), 0);
          while (true) {
            std::vector<EdgeId> del;
            for (std::size_t i = 0; i < subset.size(); ++i) del.push_back((*options_per_chain[i])[digit[i]]);
            ++work.plans;
            const auto f = d.without(del);
            if (is_spanning_arborescence(f, r)) {
              ++work.arborescences;
              const auto f_under = f.underlying();
              if (rooted_code(f_under, r) == t_code) {
                verdict = Verdict::yes(*rooted_isomorphism(t_under, t_root, f_under, r), del);
                break;
              }
            }
            std::size_t i = 0;
            while (i < digit.size() && ++digit[i] == options_per_chain[i]->size()) digit[i++] = 0;
            if (i == digit.size()) break;
          }
        } while (!verdict.yes() && detail::next_combination_colex(subset, edges));
      }
      st.plans += work.plans;
      st.roots.push_back(work);
      if (options.trace != nullptr)
        *options.trace << "root=" << r << " subsets=" << work.subsets << " plans=" << work.plans
                       << " arborescences=" << work.arborescences << '\n';
    }
  }

  if (verdict.yes() && !certify_directed(d, target, verdict))
    throw std::logic_error("internal error: directed solver produced an uncertifiable arborescence");
  return verdict;
}

}  // namespace stip
