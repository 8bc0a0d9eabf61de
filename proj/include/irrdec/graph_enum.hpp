#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "generators.hpp"
#include "graph.hpp"

namespace irrdec {

// Isomorphism-invariant code: the least upper-triangle adjacency string over all
// orderings that respect the colour-refined vertex partition.
inline std::string canonical_code(const Graph& g) {
  const int n = g.vertex_count();
  std::vector<std::vector<char>> adj(static_cast<std::size_t>(n), std::vector<char>(static_cast<std::size_t>(n), 0));
  for (const auto& e : g.edges()) adj[e.u][e.v] = adj[e.v][e.u] = 1;

  std::vector<int> colour(static_cast<std::size_t>(n));
  for (Vertex v = 0; v < n; ++v) colour[v] = g.degree(v);
  for (;;) {
    std::vector<std::pair<int, std::vector<int>>> sig(static_cast<std::size_t>(n));
    for (Vertex v = 0; v < n; ++v) {
      sig[v].first = colour[v];
      for (const auto& inc : g.incident(v)) sig[v].second.push_back(colour[inc.neighbour]);
      std::sort(sig[v].second.begin(), sig[v].second.end());
    }
    auto sorted = sig;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<int> next(static_cast<std::size_t>(n));
    for (Vertex v = 0; v < n; ++v)
      next[v] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), sig[v]) - sorted.begin());
    const int before = static_cast<int>(std::set<int>(colour.begin(), colour.end()).size());
    const bool same_count = static_cast<int>(sorted.size()) == before;
    colour = next;
    if (same_count) break;
  }

  std::map<int, std::vector<Vertex>> cells;
  for (Vertex v = 0; v < n; ++v) cells[colour[v]].push_back(v);
  std::vector<std::vector<Vertex>> cell_list;
  for (auto& [c, vs] : cells) cell_list.push_back(vs);

  std::string best;
  std::vector<Vertex> order;
  auto code_of = [&]() {
    std::string s;
    s.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) s.push_back(adj[order[i]][order[j]] ? '1' : '0');
    return s;
  };
  // odometer over the permutations of every cell
  for (auto& c : cell_list) std::sort(c.begin(), c.end());
  for (;;) {
    order.clear();
    for (const auto& c : cell_list) order.insert(order.end(), c.begin(), c.end());
    auto s = code_of();
    if (best.empty() || s < best) best = std::move(s);
    std::size_t i = 0;
    while (i < cell_list.size() && !std::next_permutation(cell_list[i].begin(), cell_list[i].end())) ++i;
    if (i == cell_list.size()) break;
  }
  return std::to_string(n) + ":" + best;
}

inline bool isomorphic(const Graph& a, const Graph& b) {
  return a.vertex_count() == b.vertex_count() && a.edge_count() == b.edge_count() &&
         canonical_code(a) == canonical_code(b);
}

inline Graph graph_from_code(const std::string& code) {
  const auto colon = code.find(':');
  const int n = std::stoi(code.substr(0, colon));
  std::vector<Edge> edges;
  std::size_t p = colon + 1;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (code[p++] == '1') edges.push_back({i, j});
  return Graph(n, std::move(edges));
}

// All connected graphs on exactly n vertices up to isomorphism. Each is grown
// from a connected graph on n-1 vertices by a new vertex with a non-empty
// neighbourhood (removing a non-cut vertex reverses this).
inline std::vector<Graph> connected_graphs(int n) {
  if (n < 1 || n > 10) throw std::invalid_argument("connected_graphs supports 1 <= n <= 10");
  std::set<std::string> level{canonical_code(Graph(1, {}))};
  for (int m = 2; m <= n; ++m) {
    std::set<std::string> next;
    for (const auto& code : level) {
      Graph base = graph_from_code(code);
      for (std::uint32_t nb = 1; nb < (1u << (m - 1)); ++nb) {
        auto edges = base.edges();
        for (int v = 0; v < m - 1; ++v)
          if (nb >> v & 1) edges.push_back({v, m - 1});
        next.insert(canonical_code(Graph(m, std::move(edges))));
      }
    }
    level = std::move(next);
  }
  std::vector<Graph> out;
  for (const auto& code : level) out.push_back(graph_from_code(code));
  return out;
}

struct TFamilyMember {
  std::vector<TStep> script;
  Graph graph;
};

// Members of the exception family with at most max_edges edges, one per
// isomorphism class, including the bare triangle.
inline std::vector<TFamilyMember> t_family_members(int max_edges) {
  std::vector<TFamilyMember> out;
  if (max_edges < 3) return out;
  std::set<std::string> seen;
  std::vector<std::vector<TStep>> frontier{{}};
  seen.insert(canonical_code(t_family_graph({})));
  out.push_back({{}, t_family_graph({})});
  while (!frontier.empty()) {
    std::vector<std::vector<TStep>> next;
    for (const auto& script : frontier) {
      const Graph g = t_family_graph(script);
      const int room = max_edges - g.edge_count();
      for (Vertex a = 0; a < g.vertex_count(); ++a) {
        std::vector<TStep> steps;
        for (int len = 2; len <= room; len += 2) steps.push_back({a, len, false});
        for (int len = 1; len + 3 <= room; len += 2) steps.push_back({a, len, true});
        for (const auto& s : steps) {
          if (!t_step_error(g, s).empty()) continue;
          auto ext = script;
          ext.push_back(s);
          Graph h = t_family_graph(ext);
          if (seen.insert(canonical_code(h)).second) {
            out.push_back({ext, h});
            next.push_back(std::move(ext));
          }
        }
      }
    }
    frontier = std::move(next);
  }
  return out;
}

}  // namespace irrdec
