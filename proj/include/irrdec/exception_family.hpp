#pragma once

#include <string>
#include <unordered_set>
#include <vector>

#include "graph.hpp"

namespace irrdec {

// Connected graphs that admit no locally irregular decomposition at all.
enum class ExceptionClass { None, OddPath, OddCycle, TFamily };

inline const char* to_string(ExceptionClass c) {
  switch (c) {
    case ExceptionClass::OddPath: return "OddPath";
    case ExceptionClass::OddCycle: return "OddCycle";
    case ExceptionClass::TFamily: return "TFamily";
    default: return "None";
  }
}

namespace detail {

// Decides membership in the triangle-built degree-3 family by peeling pendant
// pieces (an even hanging path, or an odd path capped by a triangle) until a
// bare triangle is left. Failed vertex subsets are memoized.
class TFamilyPeeler {
public:
  explicit TFamilyPeeler(const Graph& g) : g_(g) {}

  bool run() {
    std::string alive(static_cast<std::size_t>(g_.vertex_count()), 1);
    return peel(alive);
  }

private:
  int deg(const std::string& alive, Vertex v) const {
    int d = 0;
    for (const auto& inc : g_.incident(v)) d += alive[inc.neighbour];
    return d;
  }

  std::vector<Vertex> live_neighbours(const std::string& alive, Vertex v) const {
    std::vector<Vertex> out;
    for (const auto& inc : g_.incident(v))
      if (alive[inc.neighbour]) out.push_back(inc.neighbour);
    return out;
  }

  bool on_triangle(const std::string& alive, Vertex v) const {
    auto nb = live_neighbours(alive, v);
    for (std::size_t i = 0; i < nb.size(); ++i)
      for (std::size_t j = i + 1; j < nb.size(); ++j)
        if (g_.adjacent(nb[i], nb[j])) return true;
    return false;
  }

  bool is_bare_triangle(const std::string& alive) const {
    std::vector<Vertex> vs;
    for (Vertex v = 0; v < g_.vertex_count(); ++v)
      if (alive[v]) vs.push_back(v);
    return vs.size() == 3 && g_.adjacent(vs[0], vs[1]) && g_.adjacent(vs[1], vs[2]) &&
           g_.adjacent(vs[0], vs[2]);
  }

  // Walks from `from` into `cur` along live degree-2 vertices. Returns the
  // first vertex that is not of degree 2 and collects the degree-2 ones.
  Vertex walk(const std::string& alive, Vertex from, Vertex cur, std::vector<Vertex>& passed) const {
    while (deg(alive, cur) == 2) {
      if (passed.size() > static_cast<std::size_t>(g_.vertex_count())) return -1;
      passed.push_back(cur);
      auto nb = live_neighbours(alive, cur);
      Vertex next = nb[0] == from ? nb[1] : nb[0];
      from = cur;
      cur = next;
    }
    return cur;
  }

  bool try_remove(std::string alive, const std::vector<Vertex>& removed, Vertex anchor) {
    for (Vertex x : removed) alive[x] = 0;
    if (deg(alive, anchor) != 2 || !on_triangle(alive, anchor)) return false;
    return peel(alive);
  }

  bool peel(const std::string& alive) {
    if (is_bare_triangle(alive)) return true;
    if (failed_.count(alive)) return false;
    for (Vertex v = 0; v < g_.vertex_count(); ++v) {
      if (!alive[v]) continue;
      const int d = deg(alive, v);
      if (d == 1) {
        std::vector<Vertex> removed{v};
        Vertex w = walk(alive, v, live_neighbours(alive, v)[0], removed);
        if (w >= 0 && deg(alive, w) == 3 && removed.size() % 2 == 0 && try_remove(alive, removed, w))
          return true;
      } else if (d == 3) {
        auto nb = live_neighbours(alive, v);
        for (int skip = 0; skip < 3; ++skip) {
          Vertex y = nb[(skip + 1) % 3], z = nb[(skip + 2) % 3], p = nb[skip];
          if (!g_.adjacent(y, z) || deg(alive, y) != 2 || deg(alive, z) != 2) continue;
          std::vector<Vertex> removed{v};
          Vertex w = walk(alive, v, p, removed);
          // removed holds the capped vertex plus the path's inner vertices,
          // so the path length is removed.size().
          if (w < 0 || deg(alive, w) != 3 || removed.size() % 2 == 0) continue;
          removed.push_back(y);
          removed.push_back(z);
          if (try_remove(alive, removed, w)) return true;
        }
      }
    }
    failed_.insert(alive);
    return false;
  }

  const Graph& g_;
  std::unordered_set<std::string> failed_;
};

}  // namespace detail

inline bool in_t_family(const Graph& g) {
  if (!is_connected(g) || g.max_degree() > 3 || g.vertex_count() < 3) return false;
  return detail::TFamilyPeeler(g).run();
}

// Classifies a connected graph. A bare triangle is reported as an odd cycle.
inline ExceptionClass recognize_exception(const Graph& g) {
  if (!is_connected(g)) throw GraphError("recognize_exception needs a connected graph");
  const int n = g.vertex_count(), m = g.edge_count();
  if (n == 0) return ExceptionClass::None;
  if (g.max_degree() <= 2) {
    if (m == n - 1) return m % 2 == 1 ? ExceptionClass::OddPath : ExceptionClass::None;
    return m % 2 == 1 ? ExceptionClass::OddCycle : ExceptionClass::None;
  }
  if (g.max_degree() == 3 && in_t_family(g)) return ExceptionClass::TFamily;
  return ExceptionClass::None;
}

}  // namespace irrdec
