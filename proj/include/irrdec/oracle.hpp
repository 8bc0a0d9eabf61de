#pragma once

#include <cstdlib>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "exception_family.hpp"
#include "generators.hpp"
#include "graph.hpp"
#include "graph_enum.hpp"

namespace irrdec {

struct OracleLimitError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline int oracle_edge_limit() {
  if (const char* s = std::getenv("IRRDEC_EDGE_LIMIT")) {
    char* end = nullptr;
    long v = std::strtol(s, &end, 10);
    if (end != s && *end == '\0' && v > 0) return static_cast<int>(v);
  }
  return 22;
}

struct OracleResult {
  std::optional<int> feasible_k;
  std::optional<Decomposition> witness;
  bool exhausted = true;  // every k below feasible_k (or up to k_max) was refuted
  long long nodes_explored = 0;
};

namespace detail {

class IrregularColouringSearch {
 public:
  IrregularColouringSearch(const Graph& g, int k, long long node_limit) : g_(g), k_(k), node_limit_(node_limit) {
    const int n = g.vertex_count();
    // BFS order so that vertices are closed soon after they are first touched
    std::vector<int> pos(static_cast<std::size_t>(n), -1);
    int next = 0;
    for (Vertex s = 0; s < n; ++s) {
      if (pos[s] >= 0) continue;
      std::vector<Vertex> queue{s};
      pos[s] = next++;
      for (std::size_t i = 0; i < queue.size(); ++i)
        for (const auto& inc : g.incident(queue[i]))
          if (pos[inc.neighbour] < 0) {
            pos[inc.neighbour] = next++;
            queue.push_back(inc.neighbour);
          }
    }
    for (EdgeId e = 0; e < g.edge_count(); ++e) order_.push_back(e);
    std::sort(order_.begin(), order_.end(), [&](EdgeId a, EdgeId b) {
      auto key = [&](EdgeId e) {
        int pu = pos[g.edge(e).u], pv = pos[g.edge(e).v];
        return std::make_pair(std::max(pu, pv), std::min(pu, pv));
      };
      return key(a) < key(b);
    });
    colour_.assign(g.edges().size(), 0);
    remaining_ = g.degrees();
    deg_.assign(static_cast<std::size_t>(k + 1), std::vector<int>(static_cast<std::size_t>(n), 0));
  }

  // 1: found, 0: refuted, -1: node limit hit
  int run() {
    const int r = dfs(0, 0);
    return r;
  }
  const std::vector<int>& colours() const { return colour_; }
  long long nodes() const { return nodes_; }

 private:
  bool closed_ok(Vertex x) const {
    for (const auto& inc : g_.incident(x)) {
      const Vertex y = inc.neighbour;
      if (remaining_[y] != 0) continue;
      const int c = colour_[inc.edge];
      if (deg_[c][x] == deg_[c][y]) return false;
    }
    return true;
  }

  int dfs(std::size_t i, int used) {
    if (i == order_.size()) return 1;
    const EdgeId e = order_[i];
    const Vertex u = g_.edge(e).u, v = g_.edge(e).v;
    const int top = std::min(k_, used + 1);
    for (int c = 1; c <= top; ++c) {
      if (node_limit_ > 0 && nodes_ >= node_limit_) return -1;
      ++nodes_;
      colour_[e] = c;
      ++deg_[c][u];
      ++deg_[c][v];
      --remaining_[u];
      --remaining_[v];
      bool ok = (remaining_[u] != 0 || closed_ok(u)) && (remaining_[v] != 0 || closed_ok(v));
      int r = ok ? dfs(i + 1, std::max(used, c)) : 0;
      if (r == 1) return 1;
      ++remaining_[u];
      ++remaining_[v];
      --deg_[c][u];
      --deg_[c][v];
      colour_[e] = 0;
      if (r < 0) return -1;
    }
    return 0;
  }

  const Graph& g_;
  int k_;
  long long node_limit_;
  long long nodes_ = 0;
  std::vector<EdgeId> order_;
  std::vector<int> colour_;
  std::vector<int> remaining_;
  std::vector<std::vector<int>> deg_;
};

}  // namespace detail

// Least k <= k_max admitting a locally irregular k-edge colouring (empty
// classes allowed). node_limit = 0 searches without a cap.
inline OracleResult min_parts(const Graph& g, int k_max, long long node_limit = 0) {
  if (k_max < 1) throw std::invalid_argument("k_max must be at least 1");
  const int limit = oracle_edge_limit();
  if (g.edge_count() > limit)
    throw OracleLimitError("graph has " + std::to_string(g.edge_count()) + " edges; oracle limit is " +
                           std::to_string(limit));
  OracleResult res;
  if (is_locally_irregular(g)) {
    res.feasible_k = 1;
    res.witness = Decomposition(g, 1, std::vector<int>(g.edges().size(), 1));
    return res;
  }
  for (int k = 2; k <= k_max; ++k) {
    detail::IrregularColouringSearch s(g, k, node_limit > 0 ? node_limit - res.nodes_explored : 0);
    const int r = s.run();
    res.nodes_explored += s.nodes();
    if (r < 0) {
      res.exhausted = false;
      return res;
    }
    if (r == 1) {
      Decomposition d(g, k, s.colours());
      if (!is_locally_irregular_decomposition(d)) throw std::logic_error("oracle produced an invalid witness");
      res.feasible_k = k;
      res.witness = std::move(d);
      return res;
    }
  }
  return res;
}

struct ExceptionSweepReport {
  int exceptions_checked = 0;
  int others_checked = 0;
  int skipped_over_limit = 0;
  std::map<int, int> k_histogram;  // feasible_k over non-exception graphs
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

// Odd paths, odd cycles and family members with at most max_edges edges must be
// infeasible for every k <= |E|; on the connected graphs with at most
// max_vertices vertices, infeasibility must coincide with recognize_exception.
inline ExceptionSweepReport exceptions_never_decompose(int max_edges, int max_vertices = 8) {
  ExceptionSweepReport rep;
  auto expect_infeasible = [&](const Graph& g, const std::string& name) {
    ++rep.exceptions_checked;
    auto r = min_parts(g, std::max(1, g.edge_count()));
    if (r.feasible_k) rep.failures.push_back(name + " decomposes into " + std::to_string(*r.feasible_k) + " parts");
  };
  for (int m = 1; m <= max_edges; m += 2) expect_infeasible(path_graph(m), "path(" + std::to_string(m) + ")");
  for (int m = 3; m <= max_edges; m += 2) expect_infeasible(cycle_graph(m), "cycle(" + std::to_string(m) + ")");
  for (const auto& t : t_family_members(max_edges))
    expect_infeasible(t.graph, "T-member " + canonical_code(t.graph));

  const int limit = oracle_edge_limit();
  for (int n = 2; n <= max_vertices; ++n) {
    for (const auto& g : connected_graphs(n)) {
      if (g.edge_count() > limit) {
        ++rep.skipped_over_limit;
        continue;
      }
      const bool exc = recognize_exception(g) != ExceptionClass::None;
      auto r = min_parts(g, g.edge_count());
      if (exc && r.feasible_k) rep.failures.push_back("exception decomposes: " + canonical_code(g));
      if (!exc) {
        ++rep.others_checked;
        if (!r.feasible_k)
          rep.failures.push_back("non-exception graph is infeasible: " + canonical_code(g));
        else
          ++rep.k_histogram[*r.feasible_k];
      }
    }
  }
  return rep;
}

}  // namespace irrdec
