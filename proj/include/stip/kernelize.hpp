#pragma once

// Leaf trimming and path contraction down to the graph kernel. The kernel is a
// multigraph: contracting a path between two already adjacent vertices adds a
// parallel edge, and closing a cycle leaves a self-loop, so |E| - |V| is the
// same before and after every step.

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "stip/graph.hpp"

namespace stip {

/// Original path (u, v1, ..., vm, w) behind one kernel edge. edges[i] joins
/// vertices[i] and vertices[i + 1].
struct AnchorChain {
  std::vector<VertexId> vertices;
  std::vector<EdgeId> edges;

  VertexId front() const { return vertices.front(); }
  VertexId back() const { return vertices.back(); }
  std::size_t interior_size() const { return vertices.size() - 2; }

  AnchorChain reversed() const {
    return {std::vector<VertexId>(vertices.rbegin(), vertices.rend()),
            std::vector<EdgeId>(edges.rbegin(), edges.rend())};
  }
};

struct Kernel {
  struct ChainSlot {
    EdgeId chain = kNoEdge;  // kernel edge whose chain has this vertex inside
    int index = -1;          // position in that chain's vertex list
  };

  UGraph g_prime;                    // kernel multigraph, dense ids
  std::vector<VertexId> delta;       // kernel vertex -> original vertex, ascending
  std::vector<AnchorChain> chains;   // indexed by kernel edge id
  std::vector<bool> is_anchor;       // over original vertices
  std::vector<VertexId> trim_parent; // trimmed vertex -> neighbour it hung from
  std::vector<ChainSlot> chain_slot; // chain-interior vertices only
  long k = 0;
  std::vector<long> audit;           // |E| - |V| after each step, when requested

  const std::vector<VertexId>& anchors() const { return delta; }

  VertexId kernel_vertex(VertexId original) const {
    const auto it = std::lower_bound(delta.begin(), delta.end(), original);
    return it != delta.end() && *it == original ? static_cast<VertexId>(it - delta.begin()) : kNoVertex;
  }

  bool in_core(VertexId original) const { return trim_parent[original] == kNoVertex; }
};

/// Reduces a connected graph with k >= 2 to its kernel. Vertices are taken in
/// ascending id order, degree-1 vertices before degree-2 vertices.
inline Kernel make_contractible(const UGraph& g, bool record_audit = false) {
  if (!is_connected(g)) throw InputError("kernelization needs a connected graph");
  const long k = static_cast<long>(g.m()) - static_cast<long>(g.n()) + 1;
  if (k < 2) throw InputError("kernelization needs k >= 2 (got k=" + std::to_string(k) + ")");

  const auto n = static_cast<std::size_t>(g.n());
  struct WorkEdge {
    VertexId a, b;
    bool alive;
    AnchorChain chain;
  };
  std::vector<WorkEdge> work;
  work.reserve(static_cast<std::size_t>(g.m()) * 2);
  std::vector<std::vector<EdgeId>> inc(n);
  std::vector<std::size_t> deg(n, 0);
  std::vector<bool> alive(n, true);
  std::set<VertexId> deg1, deg2;

  auto add_work_edge = [&](VertexId a, VertexId b, AnchorChain chain) {
    const auto id = static_cast<EdgeId>(work.size());
    work.push_back({a, b, true, std::move(chain)});
    inc[a].push_back(id);
    inc[b].push_back(id);
    return id;
  };
  auto reclassify = [&](VertexId v, std::size_t new_deg) {
    if (deg[v] == 1) deg1.erase(v);
    if (deg[v] == 2) deg2.erase(v);
    deg[v] = new_deg;
    if (!alive[v]) return;
    if (new_deg == 1) deg1.insert(v);
    if (new_deg == 2) deg2.insert(v);
  };
  // Alive incidences of v, a self-loop listed twice.
  auto live_incidences = [&](VertexId v) {
    std::vector<EdgeId> out;
    for (auto e : inc[v])
      if (work[e].alive) out.push_back(e);
    return out;
  };

  for (EdgeId e = 0; e < g.m(); ++e) {
    const auto& ed = g.edge(e);
    add_work_edge(ed.u, ed.v, AnchorChain{{ed.u, ed.v}, {e}});
  }
  for (VertexId v = 0; v < g.n(); ++v) reclassify(v, g.degree(v));

  Kernel out;
  out.k = k;
  out.trim_parent.assign(n, kNoVertex);
  long live_vertices = g.n();
  long live_edges = g.m();
  auto note = [&] {
    if (record_audit) out.audit.push_back(live_edges - live_vertices);
  };
  note();

  auto kill_vertex = [&](VertexId v) {
    reclassify(v, 0);
    alive[v] = false;
    --live_vertices;
  };

  while (!deg1.empty() || !deg2.empty()) {
    if (!deg1.empty()) {
      const auto v = *deg1.begin();
      const auto e = live_incidences(v).front();
      const auto u = work[e].a == v ? work[e].b : work[e].a;
      work[e].alive = false;
      --live_edges;
      kill_vertex(v);
      out.trim_parent[v] = u;
      reclassify(u, deg[u] - 1);
    } else {
      const auto v = *deg2.begin();
      const auto live = live_incidences(v);
      if (live[0] == live[1]) {
        // v carries nothing but a loop. With k >= 2 the graph still holds
        // another cycle, so v cannot be the last vertex.
        if (live_vertices == 1) break;
        work[live[0]].alive = false;
        --live_edges;
        kill_vertex(v);
      } else {
        auto toward = work[live[0]].chain;  // oriented to end at v
        if (toward.back() != v) toward = toward.reversed();
        auto away = work[live[1]].chain;  // oriented to start at v
        if (away.front() != v) away = away.reversed();
        const auto u = toward.front();
        const auto w = away.back();
        AnchorChain merged = std::move(toward);
        merged.vertices.insert(merged.vertices.end(), away.vertices.begin() + 1, away.vertices.end());
        merged.edges.insert(merged.edges.end(), away.edges.begin(), away.edges.end());
        work[live[0]].alive = false;
        work[live[1]].alive = false;
        kill_vertex(v);
        add_work_edge(u, w, std::move(merged));
        --live_edges;  // two removed, one added
      }
    }
    note();
  }

  for (VertexId v = 0; v < g.n(); ++v)
    if (alive[v]) out.delta.push_back(v);
  if (out.delta.empty()) throw std::logic_error("kernel is empty although k >= 2");

  out.is_anchor.assign(n, false);
  for (auto v : out.delta) out.is_anchor[v] = true;
  out.g_prime = UGraph(static_cast<VertexId>(out.delta.size()));
  out.chain_slot.assign(n, {});
  for (auto& we : work) {
    if (!we.alive) continue;
    const auto id = out.g_prime.add_edge(out.kernel_vertex(we.chain.front()), out.kernel_vertex(we.chain.back()));
    for (std::size_t i = 1; i + 1 < we.chain.vertices.size(); ++i)
      out.chain_slot[we.chain.vertices[i]] = {id, static_cast<int>(i)};
    out.chains.push_back(std::move(we.chain));
  }
  return out;
}

inline const AnchorChain& chain_of(const Kernel& kernel, EdgeId e_prime) {
  if (e_prime < 0 || static_cast<std::size_t>(e_prime) >= kernel.chains.size())
    throw InputError("unknown kernel edge " + std::to_string(e_prime));
  return kernel.chains[static_cast<std::size_t>(e_prime)];
}

struct AnchorHit {
  VertexId anchor = kNoVertex;
  int hops = 0;  // u itself is hop 1
};

/// First anchor met when walking from u away from v: breadth-first in G - {v},
/// never entering a vertex flagged in `blocked`. Pendant trees hold no
/// anchors, so the walk only climbs out of them. Scratch space is reused
/// across calls.
class AnchorWalker {
 public:
  AnchorWalker(const UGraph& g, const Kernel& kernel)
      : g_(g), kernel_(kernel), dist_(static_cast<std::size_t>(g.n()), 0), stamp_(static_cast<std::size_t>(g.n()), 0) {}

  std::optional<AnchorHit> walk(VertexId v, VertexId u, const std::vector<char>* blocked = nullptr) {
    auto is_blocked = [&](VertexId x) { return x == v || (blocked != nullptr && (*blocked)[x] != 0); };
    if (is_blocked(u)) return std::nullopt;
    if (kernel_.is_anchor[u]) return AnchorHit{u, 1};

    ++epoch_;
    queue_.clear();
    queue_.push_back(u);
    stamp_[u] = epoch_;
    dist_[u] = 1;
    for (std::size_t head = 0; head < queue_.size(); ++head) {
      const auto x = queue_[head];
      for (const auto& inc : g_.incidence(x)) {
        const auto y = inc.other;
        if (stamp_[y] == epoch_ || is_blocked(y)) continue;
        if (kernel_.trim_parent[y] == x) continue;  // descending into a pendant tree
        stamp_[y] = epoch_;
        dist_[y] = dist_[x] + 1;
        if (kernel_.is_anchor[y]) return AnchorHit{y, dist_[y]};
        queue_.push_back(y);
      }
    }
    return std::nullopt;
  }

 private:
  const UGraph& g_;
  const Kernel& kernel_;
  std::vector<int> dist_;
  std::vector<unsigned> stamp_;
  unsigned epoch_ = 0;
  std::vector<VertexId> queue_;
};

inline std::optional<AnchorHit> first_anchor_from(const UGraph& g, const Kernel& kernel, VertexId v, VertexId u,
                                                  const std::vector<char>* blocked = nullptr) {
  if (!g.has_edge(v, u)) throw InputError("first_anchor_from: u is not a neighbour of v");
  AnchorWalker walker(g, kernel);
  return walker.walk(v, u, blocked);
}

}  // namespace stip
