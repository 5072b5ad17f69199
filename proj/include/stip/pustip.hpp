#pragma once

// Undirected spanning tree isomorphism, parameterised by k = m - (n - 1).
//
// k = 0 and k = 1 are decided by direct tree isomorphism. For k >= 2 the graph
// is kernelised and every (graph root, anchor permutation) pair seeds a coupled
// depth-first embedding of the target tree. At each step the pendant trees of
// the current vertex are matched to target subtrees by canonical class (phase
// one); the remaining neighbours are then bound to the remaining target
// children (phase two), with anchors required to be reached in permutation
// order.

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "stip/graph.hpp"
#include "stip/kernelize.hpp"
#include "stip/target_tree.hpp"
#include "stip/tree_iso.hpp"

namespace stip {

/// Non-owning reference to a callable; cheap to pass down a deep recursion.
template <typename Sig>
class FunctionRef;

template <typename R, typename... Args>
class FunctionRef<R(Args...)> {
 public:
  template <typename F, typename = std::enable_if_t<!std::is_same_v<std::decay_t<F>, FunctionRef>>>
  FunctionRef(F&& f)  // NOLINT(google-explicit-constructor)
      : obj_(const_cast<void*>(static_cast<const void*>(&f))), call_([](void* o, Args... a) -> R {
          return (*static_cast<std::remove_reference_t<F>*>(o))(std::forward<Args>(a)...);
        }) {}

  R operator()(Args... a) const { return call_(obj_, std::forward<Args>(a)...); }

 private:
  void* obj_;
  R (*call_)(void*, Args...);
};

struct PustipOptions {
  /// Explore every binding of remaining neighbours to remaining children
  /// instead of only the one the fetched-anchor order prescribes.
  bool fallback = false;
  /// One line per (root, permutation) attempt.
  std::ostream* trace = nullptr;
};

/// Failure reasons counted per attempt.
struct FailureCounts {
  long phase1 = 0;      // pendant tree without a partner child
  long x_lt_y = 0;      // fewer free neighbours than children
  long pi_order = 0;    // an anchor reached out of permutation order
  long budget = 0;      // more than k non-tree edges
  long literal = 0;     // fetched anchors not consecutive in the permutation
  long fetch_none = 0;  // a neighbour leads to no anchor (literal mode)

  FailureCounts& operator+=(const FailureCounts& o) {
    phase1 += o.phase1;
    x_lt_y += o.x_lt_y;
    pi_order += o.pi_order;
    budget += o.budget;
    literal += o.literal;
    fetch_none += o.fetch_none;
    return *this;
  }
};

struct PustipStats {
  std::string route;  // "disconnected", "tree", "unicyclic" or "kernel"
  long k = 0;
  long attempts = 0;                // (root, permutation) pairs searched
  long max_permutations_per_root = 0;
  long branches = 0;                // phase-two bindings tried
  long fallback_branches = 0;       // bindings outside the prescribed order
  bool fallback_needed = false;     // the accepted embedding used one
  FailureCounts failures;
};

namespace detail {

inline std::vector<EdgeId> complement_edges(const UGraph& g, const std::vector<VertexId>& map_t_to_g,
                                            const UGraph& target) {
  std::map<std::pair<VertexId, VertexId>, EdgeId> lookup;
  for (EdgeId e = 0; e < g.m(); ++e) {
    const auto& ed = g.edge(e);
    lookup.emplace(std::pair{std::min(ed.u, ed.v), std::max(ed.u, ed.v)}, e);
  }
  std::vector<bool> kept(static_cast<std::size_t>(g.m()), false);
  for (const auto& te : target.edges()) {
    const auto a = map_t_to_g[te.u];
    const auto b = map_t_to_g[te.v];
    const auto it = lookup.find({std::min(a, b), std::max(a, b)});
    if (it == lookup.end()) throw std::logic_error("embedding maps a target edge onto a non-edge");
    kept[it->second] = true;
  }
  std::vector<EdgeId> removed;
  for (EdgeId e = 0; e < g.m(); ++e)
    if (!kept[e]) removed.push_back(e);
  return removed;
}

inline UGraph without_edges(const UGraph& g, const std::vector<EdgeId>& removed) {
  std::vector<bool> drop(static_cast<std::size_t>(g.m()), false);
  for (auto e : removed) drop.at(static_cast<std::size_t>(e)) = true;
  UGraph h(g.n());
  for (EdgeId e = 0; e < g.m(); ++e)
    if (!drop[e]) h.add_edge(g.edge(e).u, g.edge(e).v);
  return h;
}

}  // namespace detail

/// Checks a YES certificate against the problem definition: exactly k edges
/// removed, the rest a spanning tree, and the mapping an isomorphism from the
/// target onto it.
inline bool certify_undirected(const UGraph& g, const UGraph& target, const Verdict& verdict) {
  if (!verdict.yes() || !verdict.mapping || !verdict.removed) return false;
  if (g.n() != target.n() || !is_tree(target)) return false;
  const auto n = static_cast<std::size_t>(g.n());
  const auto& map = *verdict.mapping;
  const auto& removed = *verdict.removed;
  const long k = static_cast<long>(g.m()) - static_cast<long>(g.n()) + 1;
  if (map.size() != n || static_cast<long>(removed.size()) != k) return false;

  std::vector<bool> hit(n, false);
  for (auto v : map) {
    if (v < 0 || static_cast<std::size_t>(v) >= n || hit[v]) return false;
    hit[v] = true;
  }
  std::set<EdgeId> gone;
  for (auto e : removed) {
    if (e < 0 || e >= g.m() || !gone.insert(e).second) return false;
  }
  std::set<std::pair<VertexId, VertexId>> kept;
  for (EdgeId e = 0; e < g.m(); ++e) {
    if (gone.count(e)) continue;
    const auto& ed = g.edge(e);
    kept.emplace(std::min(ed.u, ed.v), std::max(ed.u, ed.v));
  }
  if (kept.size() != n - 1) return false;
  if (!is_connected(detail::without_edges(g, removed))) return false;
  std::set<std::pair<VertexId, VertexId>> image;
  for (const auto& te : target.edges()) {
    const auto a = map[te.u];
    const auto b = map[te.v];
    if (!kept.count({std::min(a, b), std::max(a, b)})) return false;
    image.emplace(std::min(a, b), std::max(a, b));
  }
  return image == kept;
}

inline bool certify_undirected(const UGraph& g, const TargetTree& t, const Verdict& verdict) {
  return certify_undirected(g, t.tree(), verdict);
}

/// Exactly one cycle: drop each cycle edge in turn and compare trees.
inline Verdict solve_unicyclic(const UGraph& g, const UGraph& target) {
  if (!is_connected(g) || redundant_size(g) != 1) throw InputError("solve_unicyclic needs a connected graph with k = 1");
  if (g.n() != target.n()) throw InputError("graph and target differ in vertex count");
  const auto core = peel_to_core(g);
  for (EdgeId e = 0; e < g.m(); ++e) {
    const auto& ed = g.edge(e);
    if (!core.in_core[ed.u] || !core.in_core[ed.v]) continue;
    const auto tree = detail::without_edges(g, {e});
    if (auto map = unrooted_isomorphism(target, tree)) return Verdict::yes(std::move(*map), {e});
  }
  return Verdict::no();
}

/// One embedding search over a fixed kernel and a fixed rooting of the target.
/// Reusable across (root, permutation) attempts.
class UndirectedSearch {
 public:
  UndirectedSearch(const UGraph& g, const Kernel& kernel, const TargetTree& t, bool fallback)
      : g_(g), kernel_(kernel), t_(t), fallback_(fallback), walker_(g, kernel) {
    if (g.n() != t.n()) throw InputError("graph and target differ in vertex count");
    const auto n = static_cast<std::size_t>(g.n());
    pendant_children_.assign(n, {});
    for (VertexId v = 0; v < g.n(); ++v)
      if (kernel.trim_parent[v] != kNoVertex) pendant_children_[kernel.trim_parent[v]].push_back(v);

    CodeInterner interner;
    t_class_ = interner.classes(t.tree(), t.root());
    // Pendant forests, bottom-up: a trimmed vertex's class depends only on
    // the trimmed vertices hanging below it.
    g_class_.assign(n, -1);
    std::vector<VertexId> top_down;
    for (VertexId v = 0; v < g.n(); ++v)
      if (kernel.in_core(v))
        for (auto c : pendant_children_[v]) top_down.push_back(c);
    for (std::size_t i = 0; i < top_down.size(); ++i)
      for (auto c : pendant_children_[top_down[i]]) top_down.push_back(c);
    for (auto it = top_down.rbegin(); it != top_down.rend(); ++it) {
      std::vector<int> kids;
      for (auto c : pendant_children_[*it]) kids.push_back(g_class_[c]);
      g_class_[*it] = interner.intern(std::move(kids));
    }

    tmap_.assign(n, kNoVertex);
    gmap_.assign(n, kNoVertex);
    matched_.assign(n, 0);
    pi_pos_.assign(n, -1);
  }

  /// Searches for an embedding with graph vertex `root` on the target root and
  /// anchors reached in the order `pi`.
  bool run(VertexId root, const std::vector<VertexId>& pi, long k) {
    reset();
    k_ = k;
    pi_ = pi;
    for (std::size_t i = 0; i < pi.size(); ++i) pi_pos_[pi[i]] = static_cast<int>(i);
    attempt_failures_ = {};
    if (!match(root, t_.root(), kNoVertex)) return false;
    offpath_ = 0;
    return search(root, t_.root(), [&] {
      used_fallback_ = offpath_ > 0;
      return true;
    });
  }

  /// Target vertex -> graph vertex, valid after a successful run().
  const std::vector<VertexId>& mapping() const { return tmap_; }
  const FailureCounts& attempt_failures() const { return attempt_failures_; }
  long branches() const { return branches_; }
  long fallback_branches() const { return fallback_branches_; }
  bool used_fallback() const { return used_fallback_; }

 private:
  struct TrailEntry {
    VertexId g_vertex;
    int non_tree;  // non-tree edges closed by matching this vertex
    bool anchor;
  };

  void reset() {
    while (!trail_.empty()) pop();
    pos_g_ = 0;
    non_tree_ = 0;
    for (auto a : pi_) pi_pos_[a] = -1;
    used_fallback_ = false;
  }

  void pop() {
    const auto e = trail_.back();
    trail_.pop_back();
    tmap_[gmap_[e.g_vertex]] = kNoVertex;
    gmap_[e.g_vertex] = kNoVertex;
    matched_[e.g_vertex] = 0;
    non_tree_ -= e.non_tree;
    if (e.anchor) --pos_g_;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) pop();
  }

  void assign(VertexId gv, VertexId tv, int non_tree, bool anchor) {
    trail_.push_back({gv, non_tree, anchor});
    tmap_[tv] = gv;
    gmap_[gv] = tv;
    matched_[gv] = 1;
    non_tree_ += non_tree;
    if (anchor) ++pos_g_;
  }

  /// Binds gv as the image of tv, hanging from gparent. Leaves state untouched
  /// on failure.
  bool match(VertexId gv, VertexId tv, VertexId gparent) {
    const bool anchor = kernel_.is_anchor[gv];
    if (anchor && (pos_g_ >= pi_.size() || pi_[pos_g_] != gv)) {
      ++attempt_failures_.pi_order;
      return false;
    }
    int closed = 0;
    for (const auto& inc : g_.incidence(gv))
      if (matched_[inc.other] && inc.other != gparent) ++closed;
    if (non_tree_ + closed > k_) {
      ++attempt_failures_.budget;
      return false;
    }
    assign(gv, tv, closed, anchor);
    return true;
  }

  /// Maps the pendant tree below gu onto the target subtree below tu.
  void bind_pendant(VertexId gu, VertexId tu) {
    std::vector<std::pair<VertexId, VertexId>> stack{{gu, tu}};
    while (!stack.empty()) {
      const auto [a, b] = stack.back();
      stack.pop_back();
      assign(a, b, 0, false);
      auto ga = pendant_children_[a];
      auto tb = t_.children(b);
      std::stable_sort(ga.begin(), ga.end(), [&](VertexId x, VertexId y) { return g_class_[x] < g_class_[y]; });
      std::stable_sort(tb.begin(), tb.end(), [&](VertexId x, VertexId y) { return t_class_[x] < t_class_[y]; });
      for (std::size_t i = 0; i < ga.size(); ++i) stack.emplace_back(ga[i], tb[i]);
    }
  }

  struct Candidate {
    int pos;  // position of the fetched anchor in pi, or kUnreached
    VertexId vertex;
  };
  static constexpr int kUnreached = std::numeric_limits<int>::max();

  bool search(VertexId rg, VertexId rt, FunctionRef<bool()> cont) {
    const auto mark = trail_.size();
    const auto& kids = t_.children(rt);
    std::vector<char> taken(kids.size(), 0);

    // Phase one: every pendant tree must land on a child subtree of equal
    // class. Equal-class children are interchangeable, so the first free one
    // in DFS order is as good as any.
    for (auto u : pendant_children_[rg]) {
      if (matched_[u]) continue;  // the root sits in this pendant tree
      std::size_t i = 0;
      while (i < kids.size() && (taken[i] || t_class_[kids[i]] != g_class_[u])) ++i;
      if (i == kids.size()) {
        ++attempt_failures_.phase1;
        undo(mark);
        return false;
      }
      taken[i] = 1;
      bind_pendant(u, kids[i]);
    }

    std::vector<VertexId> rest;
    for (std::size_t i = 0; i < kids.size(); ++i)
      if (!taken[i]) rest.push_back(kids[i]);

    // Phase two.
    std::vector<Candidate> cands;
    for (const auto& inc : g_.incidence(rg)) {
      const auto u = inc.other;
      if (matched_[u] || kernel_.trim_parent[u] == rg) continue;
      cands.push_back({kUnreached, u});
    }
    const auto x = cands.size();
    const auto y = rest.size();
    if (x < y) {
      ++attempt_failures_.x_lt_y;
      undo(mark);
      return false;
    }
    if (y == 0) {
      if (cont()) return true;
      undo(mark);
      return false;
    }

    bool any_unreached = false;
    for (auto& c : cands) {
      if (auto hit = walker_.walk(rg, c.vertex, &matched_)) {
        c.pos = pi_pos_[hit->anchor];
      } else {
        any_unreached = true;
      }
    }
    std::sort(cands.begin(), cands.end(),
              [](const Candidate& a, const Candidate& b) { return std::pair{a.pos, a.vertex} < std::pair{b.pos, b.vertex}; });

    // The prescribed binding: the first y neighbours by fetched anchor, whose
    // anchors must continue the permutation from the current position.
    // Neighbours that reach no anchor sort last; they lead into chain
    // segments closed off on both sides and carry no order constraint.
    bool literal_ok = true;
    for (std::size_t i = 0; i < y && literal_ok; ++i)
      literal_ok = cands[i].pos == kUnreached || cands[i].pos == static_cast<int>(pos_g_ + i);
    if (!fallback_ && !literal_ok) {
      ++(any_unreached ? attempt_failures_.fetch_none : attempt_failures_.literal);
      undo(mark);
      return false;
    }

    std::vector<std::size_t> chosen(y, 0);
    const std::function<bool(std::size_t)> bind_child = [&](std::size_t i) -> bool {
      if (i == y) return cont();
      const auto child = rest[i];
      const bool same_as_prev = i > 0 && t_class_[child] == t_class_[rest[i - 1]];
      for (std::size_t j = 0; j < cands.size(); ++j) {
        const auto u = cands[j].vertex;
        if (matched_[u]) continue;
        if (same_as_prev && j <= chosen[i - 1]) continue;
        const bool literal = literal_ok && j == i;
        if (!fallback_ && !literal) continue;
        const auto before = trail_.size();
        if (!match(u, child, rg)) continue;
        ++branches_;
        if (!literal) {
          ++fallback_branches_;
          ++offpath_;
        }
        chosen[i] = j;
        if (search(u, child, [&] { return bind_child(i + 1); })) return true;
        if (!literal) --offpath_;
        undo(before);
      }
      return false;
    };
    if (bind_child(0)) return true;
    undo(mark);
    return false;
  }

  const UGraph& g_;
  const Kernel& kernel_;
  const TargetTree& t_;
  bool fallback_;
  AnchorWalker walker_;

  std::vector<std::vector<VertexId>> pendant_children_;
  std::vector<int> t_class_;
  std::vector<int> g_class_;

  std::vector<VertexId> tmap_;
  std::vector<VertexId> gmap_;
  std::vector<char> matched_;
  std::vector<TrailEntry> trail_;
  std::vector<VertexId> pi_;
  std::vector<int> pi_pos_;
  std::size_t pos_g_ = 0;
  long non_tree_ = 0;
  long k_ = 0;
  long offpath_ = 0;
  bool used_fallback_ = false;
  long branches_ = 0;
  long fallback_branches_ = 0;
  FailureCounts attempt_failures_;
};

inline Verdict solve_pustip(const UGraph& g, const UGraph& target, const PustipOptions& options = {},
                            PustipStats* stats = nullptr) {
  PustipStats local;
  PustipStats& st = stats != nullptr ? *stats : local;
  st = {};
  if (g.n() != target.n()) throw InputError("graph has " + std::to_string(g.n()) + " vertices, target has " +
                                            std::to_string(target.n()));
  if (!is_tree(target)) throw InputError("target is not a tree");
  if (!g.is_simple()) throw InputError("input graph must be simple");
  if (!is_connected(g)) {
    st.route = "disconnected";
    return Verdict::no();
  }
  const long k = redundant_size(g);
  st.k = k;

  Verdict verdict;
  if (k == 0) {
    st.route = "tree";
    if (auto map = unrooted_isomorphism(target, g)) verdict = Verdict::yes(std::move(*map), {});
  } else if (k == 1) {
    st.route = "unicyclic";
    verdict = solve_unicyclic(g, target);
  } else {
    st.route = "kernel";
    const auto kernel = make_contractible(g);
    const auto& anchors = kernel.anchors();

    std::vector<VertexId> t_roots = tree_centers(target);
    if (t_roots.size() == 2 && rooted_code(target, t_roots[0]) == rooted_code(target, t_roots[1])) t_roots.pop_back();

    for (auto t_root : t_roots) {
      const TargetTree t(target, t_root);
      UndirectedSearch search(g, kernel, t, options.fallback);
      for (VertexId v = 0; v < g.n() && !verdict.yes(); ++v) {
        // Permutations of the anchors; an anchor root is necessarily first.
        std::vector<VertexId> fixed;
        std::vector<VertexId> free;
        for (auto a : anchors) (a == v ? fixed : free).push_back(a);
        long perms = 0;
        do {
          std::vector<VertexId> pi = fixed;
          pi.insert(pi.end(), free.begin(), free.end());
          ++perms;
          ++st.attempts;
          const bool ok = search.run(v, pi, k);
          st.failures += search.attempt_failures();
          if (options.trace != nullptr) {
            const auto& f = search.attempt_failures();
            auto& out = *options.trace;
            out << "attempt root=" << v << " t_root=" << t_root << " pi=";
            for (std::size_t i = 0; i < pi.size(); ++i) out << (i ? "," : "") << pi[i];
            out << " result=" << (ok ? "ok" : "fail") << " phase1=" << f.phase1 << " x<y=" << f.x_lt_y
                << " pi_order=" << f.pi_order << " budget=" << f.budget << " literal=" << f.literal
                << " fetch_none=" << f.fetch_none << '\n';
          }
          if (ok) {
            const auto& map = search.mapping();
            verdict = Verdict::yes(map, detail::complement_edges(g, map, target));
            st.fallback_needed = search.used_fallback();
            break;
          }
        } while (std::next_permutation(free.begin(), free.end()));
        st.max_permutations_per_root = std::max(st.max_permutations_per_root, perms);
      }
      st.branches += search.branches();
      st.fallback_branches += search.fallback_branches();
      if (verdict.yes()) break;
    }
  }

  if (verdict.yes() && !certify_undirected(g, target, verdict))
    throw std::logic_error("internal error: undirected solver produced an uncertifiable embedding");
  return verdict;
}

inline Verdict solve_pustip(const UGraph& g, const TargetTree& t, const PustipOptions& options = {},
                            PustipStats* stats = nullptr) {
  return solve_pustip(g, t.tree(), options, stats);
}

}  // namespace stip
