#pragma once

// Core graph model: undirected multigraphs with stable edge ids, digraphs with
// stable arc ids, the plain-text edge-list format, and the traversal helpers
// every solver builds on.

#include <algorithm>
#include <cassert>
#include <cctype>
#include <cstdint>
#include <istream>
#include <optional>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace stip {

using VertexId = std::int32_t;
using EdgeId = std::int32_t;

inline constexpr VertexId kNoVertex = -1;
inline constexpr EdgeId kNoEdge = -1;

/// Raised for malformed user input (files, mismatched sizes, unsupported targets).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public InputError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct Edge {
  VertexId u = kNoVertex;
  VertexId v = kNoVertex;
  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Incidence {
  EdgeId edge = kNoEdge;
  VertexId other = kNoVertex;
};

/// Undirected multigraph. A self-loop appears twice in its vertex's incidence
/// list so that degree() counts it twice.
class UGraph {
 public:
  UGraph() = default;
  explicit UGraph(VertexId n) : incidence_(static_cast<std::size_t>(check_count(n))) {}

  /// Input-facing constructor: rejects self-loops and parallel edges.
  static UGraph simple(VertexId n, const std::vector<Edge>& edges) {
    UGraph g(n);
    std::set<std::pair<VertexId, VertexId>> seen;
    for (const auto& e : edges) {
      g.check_vertex(e.u);
      g.check_vertex(e.v);
      if (e.u == e.v) throw InputError("self-loop at vertex " + std::to_string(e.u));
      if (!seen.emplace(std::min(e.u, e.v), std::max(e.u, e.v)).second)
        throw InputError("duplicate edge " + std::to_string(e.u) + " " + std::to_string(e.v));
      g.add_edge(e.u, e.v);
    }
    return g;
  }

  /// Kernel-internal constructor: parallel edges and self-loops allowed.
  static UGraph multigraph(VertexId n, const std::vector<Edge>& edges) {
    UGraph g(n);
    for (const auto& e : edges) g.add_edge(e.u, e.v);
    return g;
  }

  EdgeId add_edge(VertexId u, VertexId v) {
    check_vertex(u);
    check_vertex(v);
    const auto id = static_cast<EdgeId>(edges_.size());
    edges_.push_back({u, v});
    incidence_[u].push_back({id, v});
    incidence_[v].push_back({id, u});
    return id;
  }

  VertexId n() const { return static_cast<VertexId>(incidence_.size()); }
  EdgeId m() const { return static_cast<EdgeId>(edges_.size()); }
  const Edge& edge(EdgeId e) const { return edges_.at(static_cast<std::size_t>(e)); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Incidence>& incidence(VertexId v) const { return incidence_.at(static_cast<std::size_t>(v)); }
  std::size_t degree(VertexId v) const { return incidence(v).size(); }

  bool has_edge(VertexId u, VertexId v) const {
    const auto& inc = degree(u) <= degree(v) ? incidence(u) : incidence(v);
    const VertexId target = degree(u) <= degree(v) ? v : u;
    return std::any_of(inc.begin(), inc.end(), [&](const Incidence& i) { return i.other == target; });
  }

  bool is_simple() const {
    std::set<std::pair<VertexId, VertexId>> seen;
    for (const auto& e : edges_) {
      if (e.u == e.v) return false;
      if (!seen.emplace(std::min(e.u, e.v), std::max(e.u, e.v)).second) return false;
    }
    return true;
  }

  /// Handshaking: sum of degrees equals twice the edge count.
  bool handshake_holds() const {
    std::size_t total = 0;
    for (const auto& inc : incidence_) total += inc.size();
    return total == 2 * edges_.size();
  }

  void check_vertex(VertexId v) const {
    if (v < 0 || v >= n()) throw InputError("vertex id " + std::to_string(v) + " out of range");
  }

 private:
  static VertexId check_count(VertexId n) {
    if (n < 0) throw InputError("negative vertex count");
    return n;
  }

  std::vector<Edge> edges_;
  std::vector<std::vector<Incidence>> incidence_;
};

struct Arc {
  VertexId tail = kNoVertex;
  VertexId head = kNoVertex;
  friend bool operator==(const Arc&, const Arc&) = default;
};

/// Directed graph. Parallel arcs with the same (tail, head) are rejected; an
/// antiparallel pair is allowed.
class DiGraph {
 public:
  DiGraph() = default;
  explicit DiGraph(VertexId n)
      : out_(static_cast<std::size_t>(n < 0 ? throw InputError("negative vertex count") : n)),
        in_(static_cast<std::size_t>(n)) {}

  static DiGraph simple(VertexId n, const std::vector<Arc>& arcs) {
    DiGraph d(n);
    std::set<std::pair<VertexId, VertexId>> seen;
    for (const auto& a : arcs) {
      d.check_vertex(a.tail);
      d.check_vertex(a.head);
      if (a.tail == a.head) throw InputError("self-loop at vertex " + std::to_string(a.tail));
      if (!seen.emplace(a.tail, a.head).second)
        throw InputError("duplicate arc " + std::to_string(a.tail) + " " + std::to_string(a.head));
      d.add_arc(a.tail, a.head);
    }
    return d;
  }

  EdgeId add_arc(VertexId tail, VertexId head) {
    check_vertex(tail);
    check_vertex(head);
    const auto id = static_cast<EdgeId>(arcs_.size());
    arcs_.push_back({tail, head});
    out_[tail].push_back({id, head});
    in_[head].push_back({id, tail});
    return id;
  }

  VertexId n() const { return static_cast<VertexId>(out_.size()); }
  EdgeId m() const { return static_cast<EdgeId>(arcs_.size()); }
  const Arc& arc(EdgeId a) const { return arcs_.at(static_cast<std::size_t>(a)); }
  const std::vector<Arc>& arcs() const { return arcs_; }
  const std::vector<Incidence>& out(VertexId v) const { return out_.at(static_cast<std::size_t>(v)); }
  const std::vector<Incidence>& in(VertexId v) const { return in_.at(static_cast<std::size_t>(v)); }

  /// One undirected edge per arc, same ids. An antiparallel pair becomes two
  /// parallel edges.
  UGraph underlying() const {
    UGraph g(n());
    for (const auto& a : arcs_) g.add_edge(a.tail, a.head);
    return g;
  }

  /// Sub-digraph on the same vertices without the listed arcs. Surviving arcs
  /// are renumbered densely in their original order.
  DiGraph without(const std::vector<EdgeId>& removed) const {
    std::vector<bool> drop(arcs_.size(), false);
    for (auto a : removed) drop.at(static_cast<std::size_t>(a)) = true;
    DiGraph f(n());
    for (std::size_t i = 0; i < arcs_.size(); ++i)
      if (!drop[i]) f.add_arc(arcs_[i].tail, arcs_[i].head);
    return f;
  }

  void check_vertex(VertexId v) const {
    if (v < 0 || v >= n()) throw InputError("vertex id " + std::to_string(v) + " out of range");
  }

 private:
  std::vector<Arc> arcs_;
  std::vector<std::vector<Incidence>> out_;
  std::vector<std::vector<Incidence>> in_;
};

// ---------------------------------------------------------------------------
// Text format
//
//   n m U|D
//   u v        (m lines, 0-based ids, edge/arc id = line order)
//
// '#' starts a comment that runs to end of line.

namespace detail {

inline std::string strip_comment(const std::string& line) {
  const auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

inline bool blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c) != 0; });
}

inline long long read_int(std::istringstream& in, std::size_t line, const char* what) {
  std::string tok;
  if (!(in >> tok)) throw ParseError(line, std::string("missing ") + what);
  std::size_t used = 0;
  long long value = 0;
  try {
    value = std::stoll(tok, &used);
  } catch (const std::exception&) {
    throw ParseError(line, std::string("malformed ") + what + " '" + tok + "'");
  }
  if (used != tok.size()) throw ParseError(line, std::string("malformed ") + what + " '" + tok + "'");
  return value;
}

}  // namespace detail

using AnyGraph = std::variant<UGraph, DiGraph>;

inline AnyGraph parse_graph(std::istream& in) {
  std::string raw;
  std::size_t line_no = 0;
  bool have_header = false;
  long long n = 0, m = 0;
  bool directed = false;
  std::vector<std::pair<long long, long long>> pairs;
  std::vector<std::size_t> pair_lines;

  while (std::getline(in, raw)) {
    ++line_no;
    const auto body = detail::strip_comment(raw);
    if (detail::blank(body)) continue;
    std::istringstream fields(body);
    if (!have_header) {
      n = detail::read_int(fields, line_no, "vertex count");
      m = detail::read_int(fields, line_no, "edge count");
      std::string flag;
      if (!(fields >> flag) || (flag != "U" && flag != "D"))
        throw ParseError(line_no, "header must be 'n m U' or 'n m D'");
      directed = flag == "D";
      if (n < 1) throw ParseError(line_no, "vertex count must be positive");
      if (m < 0) throw ParseError(line_no, "edge count must be non-negative");
      have_header = true;
    } else {
      const auto u = detail::read_int(fields, line_no, "endpoint");
      const auto v = detail::read_int(fields, line_no, "endpoint");
      std::string extra;
      if (fields >> extra) throw ParseError(line_no, "trailing token '" + extra + "'");
      if (u < 0 || v < 0 || u >= n || v >= n) throw ParseError(line_no, "vertex id out of range");
      if (static_cast<long long>(pairs.size()) >= m)
        throw ParseError(line_no, "more edge lines than declared m=" + std::to_string(m));
      pairs.emplace_back(u, v);
      pair_lines.push_back(line_no);
    }
  }
  if (!have_header) throw ParseError(line_no, "missing header");
  if (static_cast<long long>(pairs.size()) != m)
    throw ParseError(line_no, "declared m=" + std::to_string(m) + " but found " + std::to_string(pairs.size()) +
                                  " edge lines");

  std::set<std::pair<long long, long long>> seen;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto [u, v] = pairs[i];
    if (u == v) throw ParseError(pair_lines[i], "self-loop in input");
    const auto key = directed ? std::pair{u, v} : std::pair{std::min(u, v), std::max(u, v)};
    if (!seen.insert(key).second) throw ParseError(pair_lines[i], "duplicate edge in input");
  }

  if (directed) {
    DiGraph d(static_cast<VertexId>(n));
    for (const auto& [u, v] : pairs) d.add_arc(static_cast<VertexId>(u), static_cast<VertexId>(v));
    return d;
  }
  UGraph g(static_cast<VertexId>(n));
  for (const auto& [u, v] : pairs) g.add_edge(static_cast<VertexId>(u), static_cast<VertexId>(v));
  return g;
}

inline AnyGraph parse_graph(const std::string& text) {
  std::istringstream in(text);
  return parse_graph(in);
}

inline UGraph parse_ugraph(const std::string& text) {
  auto any = parse_graph(text);
  if (!std::holds_alternative<UGraph>(any)) throw InputError("expected an undirected graph (U)");
  return std::get<UGraph>(std::move(any));
}

inline DiGraph parse_digraph(const std::string& text) {
  auto any = parse_graph(text);
  if (!std::holds_alternative<DiGraph>(any)) throw InputError("expected a directed graph (D)");
  return std::get<DiGraph>(std::move(any));
}

inline std::string serialize(const UGraph& g) {
  std::ostringstream out;
  out << "# n=" << g.n() << " m=" << g.m() << " directed=0 k=" << (g.m() - g.n() + 1) << '\n';
  out << g.n() << ' ' << g.m() << " U\n";
  for (const auto& e : g.edges()) out << e.u << ' ' << e.v << '\n';
  return out.str();
}

inline std::string serialize(const DiGraph& d) {
  std::ostringstream out;
  out << "# n=" << d.n() << " m=" << d.m() << " directed=1 k=" << (d.m() - d.n() + 1) << '\n';
  out << d.n() << ' ' << d.m() << " D\n";
  for (const auto& a : d.arcs()) out << a.tail << ' ' << a.head << '\n';
  return out.str();
}

// ---------------------------------------------------------------------------
// Traversal

inline bool is_connected(const UGraph& g) {
  if (g.n() == 0) return true;
  std::vector<bool> seen(static_cast<std::size_t>(g.n()), false);
  std::vector<VertexId> stack{0};
  seen[0] = true;
  VertexId count = 1;
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    for (const auto& inc : g.incidence(v)) {
      if (!seen[inc.other]) {
        seen[inc.other] = true;
        ++count;
        stack.push_back(inc.other);
      }
    }
  }
  return count == g.n();
}

inline bool is_tree(const UGraph& g) { return g.m() == g.n() - 1 && is_connected(g); }

/// k = m - (n - 1). Throws for a disconnected graph; solvers answer NO before
/// getting here.
inline long redundant_size(const UGraph& g) {
  if (!is_connected(g)) throw InputError("redundant set size is undefined for a disconnected graph");
  return static_cast<long>(g.m()) - (static_cast<long>(g.n()) - 1);
}

inline long redundant_size(const DiGraph& d) { return redundant_size(d.underlying()); }

/// True iff every vertex is reachable from r along arcs.
inline bool reachable_all(const DiGraph& d, VertexId r) {
  d.check_vertex(r);
  std::vector<bool> seen(static_cast<std::size_t>(d.n()), false);
  std::vector<VertexId> stack{r};
  seen[r] = true;
  VertexId count = 1;
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    for (const auto& inc : d.out(v)) {
      if (!seen[inc.other]) {
        seen[inc.other] = true;
        ++count;
        stack.push_back(inc.other);
      }
    }
  }
  return count == d.n();
}

struct NeighborClasses {
  std::vector<VertexId> tree_like;
  std::vector<VertexId> non_tree_like;
};

/// Splits N(v) by whether u's component in G - {v} is a tree meeting N(v)
/// only at u.
inline NeighborClasses classify_neighbors(const UGraph& g, VertexId v) {
  g.check_vertex(v);
  const auto n = static_cast<std::size_t>(g.n());
  std::vector<int> comp(n, -1);
  std::vector<bool> is_neighbor(n, false);
  std::vector<int> edges_to_v(n, 0);
  for (const auto& inc : g.incidence(v)) {
    if (inc.other != v) {
      is_neighbor[inc.other] = true;
      ++edges_to_v[inc.other];
    }
  }

  struct Stats {
    long vertices = 0;
    long edge_ends = 0;
    long edges_to_v = 0;
  };
  std::vector<Stats> stats;
  for (const auto& start : g.incidence(v)) {
    const auto s = start.other;
    if (s == v || comp[s] != -1) continue;
    const int id = static_cast<int>(stats.size());
    stats.push_back({});
    std::vector<VertexId> stack{s};
    comp[s] = id;
    while (!stack.empty()) {
      const auto x = stack.back();
      stack.pop_back();
      auto& st = stats[id];
      ++st.vertices;
      st.edges_to_v += edges_to_v[x];
      for (const auto& inc : g.incidence(x)) {
        if (inc.other == v) continue;
        ++st.edge_ends;
        if (comp[inc.other] == -1) {
          comp[inc.other] = id;
          stack.push_back(inc.other);
        }
      }
    }
  }

  NeighborClasses out;
  std::vector<bool> listed(n, false);
  for (const auto& inc : g.incidence(v)) {
    const auto u = inc.other;
    if (u == v || listed[u]) continue;
    listed[u] = true;
    const auto& st = stats[comp[u]];
    const bool tree = st.edge_ends / 2 == st.vertices - 1;
    (tree && st.edges_to_v == 1 ? out.tree_like : out.non_tree_like).push_back(u);
  }
  std::sort(out.tree_like.begin(), out.tree_like.end());
  std::sort(out.non_tree_like.begin(), out.non_tree_like.end());
  return out;
}

/// Vertices of the 2-core and, for everything outside it, the neighbour it was
/// peeled towards. Requires a connected graph with at least one cycle for the
/// core to be nonempty.
struct CorePeel {
  std::vector<bool> in_core;
  std::vector<VertexId> parent;  // kNoVertex for core vertices
};

inline CorePeel peel_to_core(const UGraph& g) {
  const auto n = static_cast<std::size_t>(g.n());
  CorePeel out{std::vector<bool>(n, true), std::vector<VertexId>(n, kNoVertex)};
  std::vector<std::size_t> deg(n);
  std::queue<VertexId> leaves;
  for (VertexId v = 0; v < g.n(); ++v) {
    deg[v] = g.degree(v);
    if (deg[v] <= 1) leaves.push(v);
  }
  while (!leaves.empty()) {
    const auto v = leaves.front();
    leaves.pop();
    if (!out.in_core[v]) continue;
    out.in_core[v] = false;
    for (const auto& inc : g.incidence(v)) {
      const auto u = inc.other;
      if (!out.in_core[u]) continue;
      out.parent[v] = u;
      if (--deg[u] == 1) leaves.push(u);
    }
  }
  return out;
}

}  // namespace stip
