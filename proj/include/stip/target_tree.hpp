#pragma once

#include <algorithm>
#include <vector>

#include "stip/graph.hpp"
#include "stip/tree_iso.hpp"

namespace stip {

/// A rooted target tree with its deterministic DFS preorder. Children are
/// visited in ascending (subtree code, vertex id) order, so isomorphic sibling
/// subtrees sit next to each other in the order.
class TargetTree {
 public:
  TargetTree(UGraph tree, VertexId root) : tree_(std::move(tree)), root_(root) {
    detail::require_tree(tree_);
    tree_.check_vertex(root_);
    const auto n = static_cast<std::size_t>(tree_.n());
    const auto codes = subtree_codes(tree_, root_);
    const auto rooting = detail::root_tree(tree_, root_);
    parent_ = rooting.parent;
    children_.assign(n, {});
    for (auto v : rooting.order)
      if (parent_[v] != kNoVertex) children_[parent_[v]].push_back(v);
    for (auto& kids : children_) {
      std::sort(kids.begin(), kids.end(), [&](VertexId a, VertexId b) {
        if (codes[a] != codes[b]) return code_less(codes[a], codes[b]);
        return a < b;
      });
    }

    order_.reserve(n);
    position_.assign(n, -1);
    std::vector<VertexId> stack{root_};
    while (!stack.empty()) {
      const auto v = stack.back();
      stack.pop_back();
      position_[v] = static_cast<int>(order_.size());
      order_.push_back(v);
      for (auto it = children_[v].rbegin(); it != children_[v].rend(); ++it) stack.push_back(*it);
    }

    subtree_size_.assign(n, 1);
    for (auto it = order_.rbegin(); it != order_.rend(); ++it)
      if (parent_[*it] != kNoVertex) subtree_size_[parent_[*it]] += subtree_size_[*it];
  }

  const UGraph& tree() const { return tree_; }
  VertexId root() const { return root_; }
  VertexId n() const { return tree_.n(); }
  const std::vector<VertexId>& order() const { return order_; }
  int position(VertexId v) const { return position_.at(static_cast<std::size_t>(v)); }
  VertexId parent(VertexId v) const { return parent_.at(static_cast<std::size_t>(v)); }
  const std::vector<VertexId>& children(VertexId v) const { return children_.at(static_cast<std::size_t>(v)); }
  int subtree_size(VertexId v) const { return subtree_size_.at(static_cast<std::size_t>(v)); }

 private:
  UGraph tree_;
  VertexId root_;
  std::vector<VertexId> parent_;
  std::vector<std::vector<VertexId>> children_;
  std::vector<VertexId> order_;
  std::vector<int> position_;
  std::vector<int> subtree_size_;
};

inline std::vector<VertexId> dfs_order(const TargetTree& t) { return t.order(); }

enum class Answer { No, Yes };

/// Solver output. A YES carries the vertex map (indexed by target vertex) and
/// the removed edge or arc ids of the input graph.
struct Verdict {
  Answer answer = Answer::No;
  std::optional<std::vector<VertexId>> mapping;
  std::optional<std::vector<EdgeId>> removed;

  bool yes() const { return answer == Answer::Yes; }
  static Verdict no() { return {}; }
  static Verdict yes(std::vector<VertexId> mapping, std::vector<EdgeId> removed) {
    std::sort(removed.begin(), removed.end());
    return {Answer::Yes, std::move(mapping), std::move(removed)};
  }
};

inline const char* to_string(Answer a) { return a == Answer::Yes ? "YES" : "NO"; }

}  // namespace stip
