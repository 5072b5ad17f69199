#pragma once

// AHU canonical codes for rooted trees, centre-based canonical forms for
// unrooted trees, and the arborescence variants used by the directed solver.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stip/graph.hpp"

namespace stip {

/// Parenthesis encoding of a rooted tree. Equal codes iff rooted-isomorphic.
using RootedCode = std::string;

/// Order used everywhere codes are sorted: shorter first, then bytewise.
inline bool code_less(const std::string& a, const std::string& b) {
  return a.size() != b.size() ? a.size() < b.size() : a < b;
}

namespace detail {

inline void require_tree(const UGraph& t) {
  if (!is_tree(t)) throw InputError("input is not a tree");
}

/// Parent array and BFS order of a tree rooted at r.
struct Rooting {
  std::vector<VertexId> parent;
  std::vector<VertexId> order;  // BFS order from the root
};

inline Rooting root_tree(const UGraph& t, VertexId r) {
  t.check_vertex(r);
  Rooting out{std::vector<VertexId>(static_cast<std::size_t>(t.n()), kNoVertex), {}};
  std::vector<bool> seen(static_cast<std::size_t>(t.n()), false);
  out.order.reserve(static_cast<std::size_t>(t.n()));
  out.order.push_back(r);
  seen[r] = true;
  for (std::size_t head = 0; head < out.order.size(); ++head) {
    const auto v = out.order[head];
    for (const auto& inc : t.incidence(v)) {
      if (!seen[inc.other]) {
        seen[inc.other] = true;
        out.parent[inc.other] = v;
        out.order.push_back(inc.other);
      }
    }
  }
  return out;
}

}  // namespace detail

/// Codes of every rooted subtree of t hanging from r.
inline std::vector<RootedCode> subtree_codes(const UGraph& t, VertexId r) {
  detail::require_tree(t);
  const auto rooting = detail::root_tree(t, r);
  const auto n = static_cast<std::size_t>(t.n());
  std::vector<std::vector<VertexId>> kids(n);
  for (auto v : rooting.order)
    if (rooting.parent[v] != kNoVertex) kids[rooting.parent[v]].push_back(v);

  std::vector<RootedCode> code(n);
  for (auto it = rooting.order.rbegin(); it != rooting.order.rend(); ++it) {
    const auto v = *it;
    std::vector<const RootedCode*> parts;
    parts.reserve(kids[v].size());
    for (auto c : kids[v]) parts.push_back(&code[c]);
    std::sort(parts.begin(), parts.end(), [](auto* a, auto* b) { return code_less(*a, *b); });
    std::size_t len = 2;
    for (auto* p : parts) len += p->size();
    RootedCode s;
    s.reserve(len);
    s.push_back('(');
    for (auto* p : parts) s += *p;
    s.push_back(')');
    code[v] = std::move(s);
  }
  return code;
}

inline RootedCode rooted_code(const UGraph& t, VertexId r) { return subtree_codes(t, r)[static_cast<std::size_t>(r)]; }

inline bool rooted_iso(const UGraph& t1, VertexId r1, const UGraph& t2, VertexId r2) {
  if (t1.n() != t2.n()) {
    detail::require_tree(t1);
    detail::require_tree(t2);
    return false;
  }
  return rooted_code(t1, r1) == rooted_code(t2, r2);
}

/// One or two centres (vertices minimising eccentricity), ascending.
inline std::vector<VertexId> tree_centers(const UGraph& t) {
  detail::require_tree(t);
  const auto n = static_cast<std::size_t>(t.n());
  if (n == 1) return {0};
  std::vector<std::size_t> deg(n);
  std::vector<VertexId> layer;
  for (VertexId v = 0; v < t.n(); ++v) {
    deg[v] = t.degree(v);
    if (deg[v] <= 1) layer.push_back(v);
  }
  std::size_t remaining = n;
  while (remaining > 2) {
    remaining -= layer.size();
    std::vector<VertexId> next;
    for (auto v : layer) {
      for (const auto& inc : t.incidence(v))
        if (--deg[inc.other] == 1) next.push_back(inc.other);
    }
    layer = std::move(next);
  }
  std::sort(layer.begin(), layer.end());
  return layer;
}

/// Smallest centre-rooted code; a complete invariant for unrooted trees.
inline RootedCode unrooted_code(const UGraph& t) {
  const auto centers = tree_centers(t);
  RootedCode best = rooted_code(t, centers.front());
  if (centers.size() == 2) {
    auto other = rooted_code(t, centers.back());
    if (code_less(other, best)) best = std::move(other);
  }
  return best;
}

inline bool unrooted_iso(const UGraph& t1, const UGraph& t2) {
  detail::require_tree(t1);
  detail::require_tree(t2);
  if (t1.n() != t2.n()) return false;
  return unrooted_code(t1) == unrooted_code(t2);
}

// ---------------------------------------------------------------------------
// Integer classes. The solvers compare many subtrees against each other; an
// interner keyed on sorted child-class lists gives every rooted shape a small
// integer shared across all trees hashed through the same instance.

class CodeInterner {
 public:
  int intern(std::vector<int> child_classes) {
    std::sort(child_classes.begin(), child_classes.end());
    auto [it, inserted] = table_.try_emplace(std::move(child_classes), static_cast<int>(table_.size()));
    return it->second;
  }

  /// Classes of every subtree of t rooted at r.
  std::vector<int> classes(const UGraph& t, VertexId r) {
    detail::require_tree(t);
    const auto rooting = detail::root_tree(t, r);
    return classes_from(t, rooting.parent, rooting.order);
  }

  /// Same, for a forest given by parent pointers and a top-down order.
  std::vector<int> classes_from(const UGraph& t, const std::vector<VertexId>& parent,
                                const std::vector<VertexId>& top_down) {
    std::vector<int> cls(static_cast<std::size_t>(t.n()), -1);
    std::vector<std::vector<int>> pending(static_cast<std::size_t>(t.n()));
    for (auto it = top_down.rbegin(); it != top_down.rend(); ++it) {
      const auto v = *it;
      cls[v] = intern(std::move(pending[v]));
      if (parent[v] != kNoVertex) pending[parent[v]].push_back(cls[v]);
    }
    return cls;
  }

  std::size_t size() const { return table_.size(); }

 private:
  std::map<std::vector<int>, int> table_;
};

/// Explicit rooted isomorphism t1 -> t2 (indexed by t1 vertex), if one exists.
inline std::optional<std::vector<VertexId>> rooted_isomorphism(const UGraph& t1, VertexId r1, const UGraph& t2,
                                                               VertexId r2) {
  detail::require_tree(t1);
  detail::require_tree(t2);
  if (t1.n() != t2.n()) return std::nullopt;
  CodeInterner interner;
  const auto root1 = detail::root_tree(t1, r1);
  const auto root2 = detail::root_tree(t2, r2);
  const auto c1 = interner.classes_from(t1, root1.parent, root1.order);
  const auto c2 = interner.classes_from(t2, root2.parent, root2.order);
  if (c1[r1] != c2[r2]) return std::nullopt;

  auto children = [](const UGraph& t, const std::vector<VertexId>& parent, VertexId v,
                     const std::vector<int>& cls) {
    std::vector<VertexId> out;
    for (const auto& inc : t.incidence(v))
      if (parent[inc.other] == v) out.push_back(inc.other);
    std::stable_sort(out.begin(), out.end(), [&](VertexId a, VertexId b) { return cls[a] < cls[b]; });
    return out;
  };

  std::vector<VertexId> map(static_cast<std::size_t>(t1.n()), kNoVertex);
  std::vector<std::pair<VertexId, VertexId>> stack{{r1, r2}};
  while (!stack.empty()) {
    const auto [a, b] = stack.back();
    stack.pop_back();
    map[a] = b;
    const auto ka = children(t1, root1.parent, a, c1);
    const auto kb = children(t2, root2.parent, b, c2);
    for (std::size_t i = 0; i < ka.size(); ++i) stack.emplace_back(ka[i], kb[i]);
  }
  return map;
}

inline std::optional<std::vector<VertexId>> unrooted_isomorphism(const UGraph& t1, const UGraph& t2) {
  detail::require_tree(t1);
  detail::require_tree(t2);
  if (t1.n() != t2.n()) return std::nullopt;
  const auto c1 = tree_centers(t1);
  const auto c2 = tree_centers(t2);
  if (c1.size() != c2.size()) return std::nullopt;
  for (auto r2 : c2)
    if (auto map = rooted_isomorphism(t1, c1.front(), t2, r2)) return map;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Arborescences

/// The unique in-degree-0 vertex of an out-arborescence. Throws when d is not
/// one.
inline VertexId arborescence_root(const DiGraph& d) {
  if (!is_tree(d.underlying())) throw InputError("not an arborescence: underlying graph is not a tree");
  VertexId root = kNoVertex;
  for (VertexId v = 0; v < d.n(); ++v) {
    const auto indeg = d.in(v).size();
    if (indeg > 1) throw InputError("not an arborescence: vertex " + std::to_string(v) + " has in-degree > 1");
    if (indeg == 0) {
      if (root != kNoVertex) throw InputError("not an arborescence: several in-degree-0 vertices");
      root = v;
    }
  }
  if (root == kNoVertex) throw InputError("not an arborescence: no in-degree-0 vertex");
  return root;
}

inline bool is_arborescence(const DiGraph& d) {
  try {
    arborescence_root(d);
    return true;
  } catch (const InputError&) {
    return false;
  }
}

/// Arc directions of an out-arborescence follow from its root, so rooted
/// isomorphism of the underlying trees decides the directed question.
inline bool arborescence_iso(const DiGraph& d1, const DiGraph& d2) {
  const auto r1 = arborescence_root(d1);
  const auto r2 = arborescence_root(d2);
  return rooted_iso(d1.underlying(), r1, d2.underlying(), r2);
}

inline std::optional<std::vector<VertexId>> arborescence_isomorphism(const DiGraph& d1, const DiGraph& d2) {
  const auto r1 = arborescence_root(d1);
  const auto r2 = arborescence_root(d2);
  return rooted_isomorphism(d1.underlying(), r1, d2.underlying(), r2);
}

}  // namespace stip
