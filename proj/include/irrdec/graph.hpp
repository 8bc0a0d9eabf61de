#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace irrdec {

using Vertex = int;
using EdgeId = int;

struct GraphError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Edge {
  Vertex u;
  Vertex v;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct Incidence {
  Vertex neighbour;
  EdgeId edge;
};

// Simple undirected graph on vertices 0..n-1. Immutable after construction.
// Edges are stored canonically (u < v) in sorted order; an edge's id is its
// index in that order.
class Graph {
public:
  Graph() = default;

  Graph(int n, std::vector<Edge> edges) : n_(n) {
    if (n < 0) throw GraphError("negative vertex count");
    for (auto& e : edges) {
      if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n)
        throw GraphError("edge endpoint out of range: " + std::to_string(e.u) + " " +
                         std::to_string(e.v));
      if (e.u == e.v) throw GraphError("self-loop at vertex " + std::to_string(e.u));
      if (e.u > e.v) std::swap(e.u, e.v);
    }
    std::sort(edges.begin(), edges.end());
    for (std::size_t i = 1; i < edges.size(); ++i)
      if (edges[i] == edges[i - 1])
        throw GraphError("duplicate edge " + std::to_string(edges[i].u) + " " +
                         std::to_string(edges[i].v));
    edges_ = std::move(edges);
    adj_.assign(static_cast<std::size_t>(n), {});
    for (EdgeId id = 0; id < static_cast<EdgeId>(edges_.size()); ++id) {
      adj_[edges_[id].u].push_back({edges_[id].v, id});
      adj_[edges_[id].v].push_back({edges_[id].u, id});
    }
    for (auto& list : adj_)
      std::sort(list.begin(), list.end(),
                [](const Incidence& a, const Incidence& b) { return a.neighbour < b.neighbour; });
  }

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeId id) const { return edges_.at(static_cast<std::size_t>(id)); }

  const std::vector<Incidence>& incident(Vertex v) const {
    check_vertex(v);
    return adj_[static_cast<std::size_t>(v)];
  }

  int degree(Vertex v) const { return static_cast<int>(incident(v).size()); }

  int min_degree() const {
    int best = 0;
    for (Vertex v = 0; v < n_; ++v) best = v == 0 ? degree(v) : std::min(best, degree(v));
    return best;
  }

  int max_degree() const {
    int best = 0;
    for (Vertex v = 0; v < n_; ++v) best = std::max(best, degree(v));
    return best;
  }

  // Edge id of uv, or -1 when u and v are not adjacent.
  EdgeId find_edge(Vertex u, Vertex v) const {
    const auto& list = incident(u);
    check_vertex(v);
    auto it = std::lower_bound(list.begin(), list.end(), v,
                               [](const Incidence& a, Vertex x) { return a.neighbour < x; });
    return it != list.end() && it->neighbour == v ? it->edge : -1;
  }

  bool adjacent(Vertex u, Vertex v) const { return find_edge(u, v) >= 0; }

  std::vector<int> degrees() const {
    std::vector<int> d(static_cast<std::size_t>(n_));
    for (Vertex v = 0; v < n_; ++v) d[v] = degree(v);
    return d;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

private:
  void check_vertex(Vertex v) const {
    if (v < 0 || v >= n_) throw GraphError("unknown vertex id " + std::to_string(v));
  }

  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Incidence>> adj_;
};

inline int degree(const Graph& g, Vertex v) { return g.degree(v); }

// A spanning subgraph given by membership over the host's edge ids.
using EdgeMask = std::vector<char>;

inline EdgeMask full_mask(const Graph& g) { return EdgeMask(g.edges().size(), 1); }
inline EdgeMask empty_mask(const Graph& g) { return EdgeMask(g.edges().size(), 0); }

inline std::vector<int> masked_degrees(const Graph& g, const EdgeMask& mask) {
  std::vector<int> d(static_cast<std::size_t>(g.vertex_count()), 0);
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (mask[e]) {
      ++d[g.edge(e).u];
      ++d[g.edge(e).v];
    }
  return d;
}

inline int mask_size(const EdgeMask& mask) {
  return static_cast<int>(std::count(mask.begin(), mask.end(), 1));
}

inline Graph subgraph(const Graph& g, const EdgeMask& mask) {
  std::vector<Edge> kept;
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (mask[e]) kept.push_back(g.edge(e));
  return Graph(g.vertex_count(), std::move(kept));
}

// Mask of the edges of h inside g. Throws when h is not a subgraph of g.
inline EdgeMask mask_of(const Graph& g, const Graph& h) {
  if (h.vertex_count() != g.vertex_count())
    throw GraphError("subgraph has a different vertex set");
  EdgeMask mask = empty_mask(g);
  for (const auto& e : h.edges()) {
    EdgeId id = g.find_edge(e.u, e.v);
    if (id < 0)
      throw GraphError("edge " + std::to_string(e.u) + " " + std::to_string(e.v) +
                       " is not in the host graph");
    mask[id] = 1;
  }
  return mask;
}

inline bool is_locally_irregular(const Graph& g) {
  for (const auto& e : g.edges())
    if (g.degree(e.u) == g.degree(e.v)) return false;
  return true;
}

// Edges of the masked subgraph whose endpoints have equal degree in it.
inline std::vector<EdgeId> irregularity_conflicts(const Graph& g, const EdgeMask& mask) {
  auto d = masked_degrees(g, mask);
  std::vector<EdgeId> bad;
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (mask[e] && d[g.edge(e).u] == d[g.edge(e).v]) bad.push_back(e);
  return bad;
}

inline bool is_locally_irregular(const Graph& g, const EdgeMask& mask) {
  return irregularity_conflicts(g, mask).empty();
}

// Edge colouring with classes 1..k of a host graph that must outlive it.
// Colour 0 marks an uncoloured edge.
class Decomposition {
public:
  Decomposition(const Graph& host, int k, std::vector<int> colour)
      : host_(&host), k_(k), colour_(std::move(colour)) {}

  const Graph& graph() const { return *host_; }
  int k() const { return k_; }
  const std::vector<int>& colours() const { return colour_; }
  int colour(EdgeId e) const { return colour_.at(static_cast<std::size_t>(e)); }

  EdgeMask class_mask(int c) const {
    EdgeMask m(colour_.size(), 0);
    for (std::size_t e = 0; e < colour_.size(); ++e) m[e] = colour_[e] == c;
    return m;
  }

  // Throws GraphError on a colour outside [1, k] or an uncoloured edge.
  void validate() const {
    if (colour_.size() != host_->edges().size())
      throw GraphError("colouring does not cover the edge set");
    for (std::size_t e = 0; e < colour_.size(); ++e) {
      if (colour_[e] == 0) throw GraphError("uncoloured edge " + std::to_string(e));
      if (colour_[e] < 1 || colour_[e] > k_)
        throw GraphError("colour " + std::to_string(colour_[e]) + " outside [1, " +
                         std::to_string(k_) + "]");
    }
  }

private:
  const Graph* host_;
  int k_;
  std::vector<int> colour_;
};

inline bool is_locally_irregular_decomposition(const Decomposition& d) {
  d.validate();
  for (int c = 1; c <= d.k(); ++c)
    if (!is_locally_irregular(d.graph(), d.class_mask(c))) return false;
  return true;
}

// Connected components as sorted vertex lists, ordered by least vertex.
inline std::vector<std::vector<Vertex>> connected_components(const Graph& g) {
  std::vector<int> comp(static_cast<std::size_t>(g.vertex_count()), -1);
  std::vector<std::vector<Vertex>> out;
  for (Vertex s = 0; s < g.vertex_count(); ++s) {
    if (comp[s] >= 0) continue;
    std::vector<Vertex> members{s};
    comp[s] = static_cast<int>(out.size());
    for (std::size_t i = 0; i < members.size(); ++i)
      for (const auto& inc : g.incident(members[i]))
        if (comp[inc.neighbour] < 0) {
          comp[inc.neighbour] = comp[s];
          members.push_back(inc.neighbour);
        }
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

inline bool is_connected(const Graph& g) { return connected_components(g).size() <= 1; }

// Subgraph induced by a vertex subset, relabelled 0..|vs|-1 in the given order.
inline Graph induced_subgraph(const Graph& g, const std::vector<Vertex>& vs) {
  std::vector<int> pos(static_cast<std::size_t>(g.vertex_count()), -1);
  for (std::size_t i = 0; i < vs.size(); ++i) pos[vs[i]] = static_cast<int>(i);
  std::vector<Edge> kept;
  for (const auto& e : g.edges())
    if (pos[e.u] >= 0 && pos[e.v] >= 0) kept.push_back({pos[e.u], pos[e.v]});
  return Graph(static_cast<int>(vs.size()), std::move(kept));
}

}  // namespace irrdec
