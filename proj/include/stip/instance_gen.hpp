#pragma once

// Seeded instance generation: random labelled trees and tree-plus-k-extras
// graphs, either planted (a known spanning tree isomorphic to the target) or
// with an independent target.

#include <algorithm>
#include <cstdint>
#include <queue>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "stip/graph.hpp"
#include "stip/kernelize.hpp"

namespace stip {

/// mt19937_64 with an explicit bounded draw; the std distributions are not
/// specified bit-exactly, so they would break cross-platform determinism.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("Rng::below: empty range");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do x = engine_();
    while (x >= limit);
    return x % bound;
  }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

  std::vector<VertexId> permutation(VertexId n) {
    std::vector<VertexId> p(static_cast<std::size_t>(n));
    for (VertexId i = 0; i < n; ++i) p[i] = i;
    shuffle(p);
    return p;
  }

 private:
  std::mt19937_64 engine_;
};

namespace detail {

inline UGraph tree_from(Rng& rng, VertexId n) {
  if (n < 2) throw InputError("tree generation needs n >= 2");
  std::vector<Edge> edges;
  if (n == 2) {
    edges.push_back({0, 1});
    return UGraph::simple(n, edges);
  }
  std::vector<VertexId> prufer(static_cast<std::size_t>(n - 2));
  for (auto& x : prufer) x = static_cast<VertexId>(rng.below(static_cast<std::uint64_t>(n)));
  std::vector<int> count(static_cast<std::size_t>(n), 0);
  for (auto x : prufer) ++count[x];
  std::priority_queue<VertexId, std::vector<VertexId>, std::greater<>> leaves;
  for (VertexId v = 0; v < n; ++v)
    if (count[v] == 0) leaves.push(v);
  for (auto x : prufer) {
    const auto leaf = leaves.top();
    leaves.pop();
    edges.push_back({leaf, x});
    if (--count[x] == 0) leaves.push(x);
  }
  const auto a = leaves.top();
  leaves.pop();
  edges.push_back({a, leaves.top()});
  return UGraph::simple(n, edges);
}

}  // namespace detail

/// Uniform labelled tree on n vertices by Prüfer decoding.
inline UGraph gen_tree(VertexId n, std::uint64_t seed) {
  Rng rng(seed);
  return detail::tree_from(rng, n);
}

enum class GenMode { PlantedYes, Random };

inline const char* to_string(GenMode m) { return m == GenMode::PlantedYes ? "planted-yes" : "random"; }

struct GenSpec {
  VertexId n = 2;
  long k = 0;
  std::uint64_t seed = 0;
  GenMode mode = GenMode::PlantedYes;
  bool directed = false;
};

enum class Truth { Yes, Unknown };

inline const char* to_string(Truth t) { return t == Truth::Yes ? "YES" : "UNKNOWN"; }

struct Instance {
  AnyGraph graph;
  AnyGraph target;
  Truth truth = Truth::Unknown;
  std::vector<EdgeId> planted_extras;  // ids in graph, ascending; empty in random mode
};

inline void validate(const GenSpec& spec) {
  if (spec.n < 2) throw InputError("n must be at least 2");
  if (spec.k < 0) throw InputError("k must be non-negative");
  const long n = spec.n;
  const long max_k = spec.directed ? n * (n - 1) - (n - 1) : n * (n - 1) / 2 - (n - 1);
  if (spec.k > max_k)
    throw InputError("k=" + std::to_string(spec.k) + " is infeasible for n=" + std::to_string(n) +
                     " (at most " + std::to_string(max_k) + ")");
}

namespace detail {

inline std::vector<Edge> relabel(const std::vector<Edge>& edges, const std::vector<VertexId>& perm) {
  std::vector<Edge> out;
  for (const auto& e : edges) out.push_back({perm[e.u], perm[e.v]});
  return out;
}

/// Random vertex pair not yet in `present`, uniform among the absent ones.
template <class Key, class Make>
Key draw_absent(Rng& rng, VertexId n, const std::set<Key>& present, Make make) {
  while (true) {
    const auto a = static_cast<VertexId>(rng.below(static_cast<std::uint64_t>(n)));
    const auto b = static_cast<VertexId>(rng.below(static_cast<std::uint64_t>(n)));
    if (a == b) continue;
    const Key key = make(a, b);
    if (!present.count(key)) return key;
  }
}

/// Tree edges plus k extra non-edges, shuffled. Returns the ids of the extras.
inline std::pair<UGraph, std::vector<EdgeId>> undirected_with_extras(Rng& rng, const UGraph& tree, long k) {
  const auto n = tree.n();
  std::set<std::pair<VertexId, VertexId>> present;
  auto key = [](VertexId a, VertexId b) { return std::pair{std::min(a, b), std::max(a, b)}; };
  std::vector<std::pair<Edge, bool>> all;
  for (const auto& e : tree.edges()) {
    present.insert(key(e.u, e.v));
    all.push_back({e, false});
  }
  for (long i = 0; i < k; ++i) {
    const auto p = draw_absent(rng, n, present, key);
    present.insert(p);
    all.push_back({Edge{p.first, p.second}, true});
  }
  rng.shuffle(all);
  std::vector<Edge> edges;
  std::vector<EdgeId> extras;
  for (std::size_t i = 0; i < all.size(); ++i) {
    edges.push_back(all[i].first);
    if (all[i].second) extras.push_back(static_cast<EdgeId>(i));
  }
  return {UGraph::simple(n, edges), extras};
}

/// Arcs of `tree` directed away from `root`.
inline std::vector<Arc> orient_from(const UGraph& tree, VertexId root) {
  std::vector<Arc> arcs;
  std::vector<char> seen(static_cast<std::size_t>(tree.n()), 0);
  std::vector<VertexId> queue{root};
  seen[root] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const auto v = queue[head];
    for (const auto& inc : tree.incidence(v)) {
      if (seen[inc.other]) continue;
      seen[inc.other] = 1;
      arcs.push_back({v, inc.other});
      queue.push_back(inc.other);
    }
  }
  return arcs;
}

inline std::pair<DiGraph, std::vector<EdgeId>> directed_with_extras(Rng& rng, VertexId n,
                                                                   const std::vector<Arc>& tree_arcs, long k) {
  std::set<std::pair<VertexId, VertexId>> present;
  auto key = [](VertexId a, VertexId b) { return std::pair{a, b}; };
  std::vector<std::pair<Arc, bool>> all;
  for (const auto& a : tree_arcs) {
    present.insert(key(a.tail, a.head));
    all.push_back({a, false});
  }
  for (long i = 0; i < k; ++i) {
    const auto p = draw_absent(rng, n, present, key);
    present.insert(p);
    all.push_back({Arc{p.first, p.second}, true});
  }
  rng.shuffle(all);
  std::vector<Arc> arcs;
  std::vector<EdgeId> extras;
  for (std::size_t i = 0; i < all.size(); ++i) {
    arcs.push_back(all[i].first);
    if (all[i].second) extras.push_back(static_cast<EdgeId>(i));
  }
  return {DiGraph::simple(n, arcs), extras};
}

}  // namespace detail

inline Instance gen_instance(const GenSpec& spec) {
  validate(spec);
  Rng rng(spec.seed);
  const auto n = spec.n;
  const auto base = detail::tree_from(rng, n);
  Instance out;

  if (!spec.directed) {
    auto [g, extras] = detail::undirected_with_extras(rng, base, spec.k);
    if (spec.mode == GenMode::PlantedYes) {
      const auto perm = rng.permutation(n);
      out.target = UGraph::simple(n, detail::relabel(base.edges(), perm));
      out.truth = Truth::Yes;
      out.planted_extras = std::move(extras);
    } else {
      out.target = detail::tree_from(rng, n);
    }
    out.graph = std::move(g);
    return out;
  }

  const auto root = static_cast<VertexId>(rng.below(static_cast<std::uint64_t>(n)));
  const auto tree_arcs = detail::orient_from(base, root);
  auto [d, extras] = detail::directed_with_extras(rng, n, tree_arcs, spec.k);
  if (spec.mode == GenMode::PlantedYes) {
    const auto perm = rng.permutation(n);
    std::vector<Arc> relabelled;
    for (const auto& a : tree_arcs) relabelled.push_back({perm[a.tail], perm[a.head]});
    out.target = DiGraph::simple(n, relabelled);
    out.truth = Truth::Yes;
    if (spec.k >= 2) {
      // every planted extra must survive trimming onto a kernel chain
      const auto kernel = make_contractible(d.underlying());
      std::vector<char> on_chain(static_cast<std::size_t>(d.m()), 0);
      for (const auto& c : kernel.chains)
        for (auto e : c.edges) on_chain[e] = 1;
      for (auto e : extras)
        if (!on_chain[e]) throw std::logic_error("generated redundant arc " + std::to_string(e) + " is off every chain");
    }
    out.planted_extras = std::move(extras);
  } else {
    const auto t = detail::tree_from(rng, n);
    const auto t_root = static_cast<VertexId>(rng.below(static_cast<std::uint64_t>(n)));
    out.target = DiGraph::simple(n, detail::orient_from(t, t_root));
  }
  out.graph = std::move(d);
  return out;
}

/// `#` lines describing how an instance was made.
inline std::string manifest(const GenSpec& spec, const Instance& inst) {
  std::ostringstream out;
  out << "# seed=" << spec.seed << '\n'
      << "# n=" << spec.n << " k=" << spec.k << " directed=" << (spec.directed ? 1 : 0) << '\n'
      << "# mode=" << to_string(spec.mode) << '\n'
      << "# truth=" << to_string(inst.truth) << '\n'
      << "# planted_extras=";
  for (std::size_t i = 0; i < inst.planted_extras.size(); ++i) out << (i ? " " : "") << inst.planted_extras[i];
  out << '\n';
  return out.str();
}

}  // namespace stip
