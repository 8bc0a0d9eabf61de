#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "graph.hpp"
#include "random.hpp"

namespace irrdec {

// Path and cycle lengths count edges.
inline Graph path_graph(int m) {
  if (m < 0) throw GraphError("path length must be nonnegative");
  std::vector<Edge> e;
  for (int i = 0; i < m; ++i) e.push_back({i, i + 1});
  return Graph(m + 1, std::move(e));
}

inline Graph cycle_graph(int m) {
  if (m < 3) throw GraphError("cycle length must be at least 3");
  std::vector<Edge> e;
  for (int i = 0; i < m; ++i) e.push_back({i, (i + 1) % m});
  return Graph(m, std::move(e));
}

inline Graph complete_graph(int n) {
  if (n < 0) throw GraphError("vertex count must be nonnegative");
  std::vector<Edge> e;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) e.push_back({u, v});
  return Graph(n, std::move(e));
}

inline Graph complete_bipartite_graph(int a, int b) {
  if (a < 0 || b < 0) throw GraphError("part sizes must be nonnegative");
  std::vector<Edge> e;
  for (int u = 0; u < a; ++u)
    for (int v = 0; v < b; ++v) e.push_back({u, a + v});
  return Graph(a + b, std::move(e));
}

inline Graph star_graph(int leaves) { return complete_bipartite_graph(1, leaves); }

// Uniform-ish d-regular graph: random pairing of points that only accepts
// pairs keeping the graph simple, restarting when it gets stuck.
inline Graph random_regular_graph(int n, int d, std::uint64_t seed) {
  if (n < 0 || d < 0 || d >= std::max(n, 1) || (static_cast<long long>(n) * d) % 2 != 0)
    throw GraphError("random_regular needs 0 <= d < n and n*d even");
  Rng rng(seed);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::vector<int> points;
    for (int v = 0; v < n; ++v)
      for (int i = 0; i < d; ++i) points.push_back(v);
    std::vector<std::vector<char>> adj(static_cast<std::size_t>(n),
                                       std::vector<char>(static_cast<std::size_t>(n), 0));
    std::vector<Edge> edges;
    bool stuck = false;
    while (!points.empty() && !stuck) {
      bool placed = false;
      for (int tries = 0; tries < 100 && !placed; ++tries) {
        auto i = uniform_below(rng, points.size());
        auto j = uniform_below(rng, points.size());
        int u = points[i], v = points[j];
        if (i == j || u == v || adj[u][v]) continue;
        adj[u][v] = adj[v][u] = 1;
        edges.push_back({u, v});
        if (i < j) std::swap(i, j);
        points[i] = points.back();
        points.pop_back();
        points[j] = points.back();
        points.pop_back();
        placed = true;
      }
      if (!placed) {
        // Exhaustive check before declaring the attempt dead.
        stuck = true;
        for (std::size_t i = 0; i < points.size() && stuck; ++i)
          for (std::size_t j = i + 1; j < points.size(); ++j)
            if (points[i] != points[j] && !adj[points[i]][points[j]]) {
              stuck = false;
              break;
            }
      }
    }
    if (!stuck) return Graph(n, std::move(edges));
  }
  throw GraphError("random_regular failed to produce a simple graph");
}

inline Graph gnp_graph(int n, double p, std::uint64_t seed) {
  if (n < 0 || !(p >= 0.0 && p <= 1.0)) throw GraphError("gnp needs n >= 0 and p in [0,1]");
  Rng rng(seed);
  std::vector<Edge> e;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (uniform_unit(rng) < p) e.push_back({u, v});
  return Graph(n, std::move(e));
}

// An edge uv with two hanging paths of (even) length `len` at each end.
inline Graph spider_graph(int len) {
  if (len < 2 || len % 2 != 0) throw GraphError("spider leg length must be even and >= 2");
  std::vector<Edge> e{{0, 1}};
  int next = 2;
  for (int root : {0, 0, 1, 1}) {
    int prev = root;
    for (int i = 0; i < len; ++i) {
      e.push_back({prev, next});
      prev = next++;
    }
  }
  return Graph(next, std::move(e));
}

// One append step of the degree-3 exception family: at `attach` (a degree-2
// vertex on a triangle) hang a path of `length` edges; with `glue_triangle`
// the path has odd length and a new triangle is glued to its far end.
struct TStep {
  Vertex attach = 0;
  int length = 2;
  bool glue_triangle = false;
};

namespace detail {

struct AdjBuilder {
  std::vector<std::vector<Vertex>> adj;

  Vertex add_vertex() {
    adj.emplace_back();
    return static_cast<Vertex>(adj.size() - 1);
  }
  void add_edge(Vertex u, Vertex v) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  bool has_edge(Vertex u, Vertex v) const {
    return std::find(adj[u].begin(), adj[u].end(), v) != adj[u].end();
  }
  bool on_triangle(Vertex a) const {
    for (std::size_t i = 0; i < adj[a].size(); ++i)
      for (std::size_t j = i + 1; j < adj[a].size(); ++j)
        if (has_edge(adj[a][i], adj[a][j])) return true;
    return false;
  }
  Graph build() const {
    std::vector<Edge> e;
    for (Vertex u = 0; u < static_cast<Vertex>(adj.size()); ++u)
      for (Vertex v : adj[u])
        if (u < v) e.push_back({u, v});
    return Graph(static_cast<int>(adj.size()), std::move(e));
  }
};

}  // namespace detail

// Legality of one step against the graph built so far; empty string if legal.
inline std::string t_step_error(const Graph& g, const TStep& s) {
  if (s.attach < 0 || s.attach >= g.vertex_count()) return "attach vertex does not exist";
  if (g.degree(s.attach) != 2) return "attach vertex must have degree 2";
  const auto& inc = g.incident(s.attach);
  if (!g.adjacent(inc[0].neighbour, inc[1].neighbour)) return "attach vertex is not on a triangle";
  if (s.glue_triangle) {
    if (s.length < 1 || s.length % 2 == 0) return "path before a glued triangle must have odd length";
  } else if (s.length < 2 || s.length % 2 != 0) {
    return "hanging path must have even length >= 2";
  }
  return {};
}

inline Graph t_family_graph(const std::vector<TStep>& script) {
  detail::AdjBuilder b;
  for (int i = 0; i < 3; ++i) b.add_vertex();
  b.add_edge(0, 1);
  b.add_edge(1, 2);
  b.add_edge(0, 2);
  for (std::size_t i = 0; i < script.size(); ++i) {
    const auto& s = script[i];
    if (auto err = t_step_error(b.build(), s); !err.empty())
      throw GraphError("illegal construction step " + std::to_string(i) + ": " + err);
    Vertex prev = s.attach;
    for (int j = 0; j < s.length; ++j) {
      Vertex x = b.add_vertex();
      b.add_edge(prev, x);
      prev = x;
    }
    if (s.glue_triangle) {
      Vertex y = b.add_vertex(), z = b.add_vertex();
      b.add_edge(prev, y);
      b.add_edge(prev, z);
      b.add_edge(y, z);
    }
  }
  return b.build();
}

}  // namespace irrdec
