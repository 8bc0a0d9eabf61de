#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "graph.hpp"
#include "random.hpp"

namespace irrdec {

struct PreconditionError : std::invalid_argument {
  PreconditionError(const std::string& what, std::vector<Vertex> vs)
      : std::invalid_argument(what), vertices(std::move(vs)) {}
  std::vector<Vertex> vertices;
};

inline std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

// Allowed degree set per vertex, kept sorted and deduplicated.
struct DegreeTargetSpec {
  std::vector<std::vector<int>> allowed;

  static DegreeTargetSpec explicit_sets(std::vector<std::vector<int>> sets) {
    for (auto& s : sets) {
      std::sort(s.begin(), s.end());
      s.erase(std::unique(s.begin(), s.end()), s.end());
    }
    return {std::move(sets)};
  }

  // {a-, a- + 1, a+, a+ + 1} with a- in [d/3 - 1, d/2] and a+ in [d/2 - 1, 2d/3];
  // values above d(v) are dropped.
  static DegreeTargetSpec from_pairs(const Graph& g, const std::vector<std::pair<int, int>>& pairs) {
    if (pairs.size() != static_cast<std::size_t>(g.vertex_count()))
      throw std::invalid_argument("one (a-, a+) pair per vertex is required");
    std::vector<Vertex> bad;
    std::vector<std::vector<int>> sets;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
      const int d = g.degree(v);
      auto [lo, hi] = pairs[v];
      if (3 * lo < d - 3 || 2 * lo > d || 2 * hi < d - 2 || 3 * hi > 2 * d) bad.push_back(v);
      std::vector<int> s;
      for (int x : {lo, lo + 1, hi, hi + 1})
        if (x >= 0 && x <= d) s.push_back(x);
      sets.push_back(std::move(s));
    }
    if (!bad.empty()) throw PreconditionError("(a-, a+) outside the degree windows", bad);
    return explicit_sets(std::move(sets));
  }

  void validate(const Graph& g) const {
    if (allowed.size() != static_cast<std::size_t>(g.vertex_count()))
      throw std::invalid_argument("degree spec size does not match the graph");
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
      const auto& s = allowed[v];
      if (s.empty()) throw std::invalid_argument("empty allowed set at vertex " + std::to_string(v));
      if (s.front() < 0 || s.back() > g.degree(v))
        throw std::invalid_argument("allowed set outside [0, d(v)] at vertex " + std::to_string(v));
    }
  }
};

// Target residues t(v) modulo lambda(v); the subgraph degree must be t or t+1
// modulo lambda and lie in [d/3, 2d/3].
struct ModularTargetSpec {
  std::vector<std::int64_t> t;
  std::vector<std::int64_t> lambda;

  void validate(const Graph& g) const {
    if (t.size() != static_cast<std::size_t>(g.vertex_count()) || lambda.size() != t.size())
      throw std::invalid_argument("modular spec size does not match the graph");
    std::vector<Vertex> bad;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
      if (lambda[v] < 1) throw std::invalid_argument("lambda must be positive");
      if (6 * lambda[v] > g.degree(v)) bad.push_back(v);
    }
    if (!bad.empty()) throw PreconditionError("6 lambda(v) <= d(v) fails", bad);
  }

  bool residue_ok(Vertex v, std::int64_t x) const {
    std::int64_t r = mod_floor(x - t[v], lambda[v]);
    return r == 0 || r == 1 % lambda[v];
  }
};

// Least element of {floor(d/3)+1..floor(d/2)} and of {floor(d/2)..floor(2d/3)-1}
// congruent to t(v) modulo lambda(v).
inline std::vector<std::pair<int, int>> choose_window_targets(const Graph& g, const ModularTargetSpec& spec) {
  spec.validate(g);
  std::vector<std::pair<int, int>> out;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    const int d = g.degree(v);
    auto least = [&](int lo, int hi) {
      for (int x = lo; x <= hi; ++x)
        if (mod_floor(x - spec.t[v], spec.lambda[v]) == 0) return x;
      throw std::logic_error("window misses a residue class");
    };
    out.emplace_back(least(d / 3 + 1, d / 2), least(d / 2, 2 * d / 3 - 1));
  }
  return out;
}

inline int distance_to_set(int x, const std::vector<int>& s) {
  auto it = std::lower_bound(s.begin(), s.end(), x);
  int best = it != s.end() ? *it - x : 1 << 30;
  if (it != s.begin()) best = std::min(best, x - *std::prev(it));
  return best;
}

enum class SolverMode { Exact, Heuristic };

struct SolveOptions {
  SolverMode mode = SolverMode::Exact;
  long long budget = 0;  // exact: node cap (0 = none); heuristic: flip cap
  std::uint64_t seed = 0;
};

enum class FactorFailure { None, SearchExhausted, BudgetExhausted };

inline const char* to_string(FactorFailure f) {
  switch (f) {
    case FactorFailure::SearchExhausted: return "SearchExhausted";
    case FactorFailure::BudgetExhausted: return "BudgetExhausted";
    default: return "None";
  }
}

struct FactorOutcome {
  std::optional<EdgeMask> subgraph;
  FactorFailure failure = FactorFailure::None;
  long long work = 0;  // nodes (exact) or flips (heuristic)

  bool found() const { return subgraph.has_value(); }
};

namespace detail {

class ExactFactorSearch {
public:
  ExactFactorSearch(const Graph& g, const DegreeTargetSpec& spec, long long budget)
      : g_(g), allowed_(spec.allowed), budget_(budget) {
    state_.assign(g.edges().size(), -1);
    cur_.assign(static_cast<std::size_t>(g.vertex_count()), 0);
    rem_ = g.degrees();
  }

  FactorOutcome run() {
    FactorOutcome out;
    std::vector<EdgeId> trail;
    bool ok = propagate_all(trail) && dfs();
    out.work = nodes_;
    if (ok) {
      EdgeMask m(state_.size());
      for (std::size_t e = 0; e < state_.size(); ++e) m[e] = state_[e] == 1;
      out.subgraph = std::move(m);
    } else {
      out.failure = over_budget_ ? FactorFailure::BudgetExhausted : FactorFailure::SearchExhausted;
    }
    return out;
  }

private:
  // Reachable allowed values for v: those in [cur, cur + rem].
  std::pair<std::vector<int>::const_iterator, std::vector<int>::const_iterator> reachable(Vertex v) const {
    const auto& s = allowed_[v];
    return {std::lower_bound(s.begin(), s.end(), cur_[v]), std::upper_bound(s.begin(), s.end(), cur_[v] + rem_[v])};
  }

  void assign(EdgeId e, int value, std::vector<EdgeId>& trail) {
    state_[e] = static_cast<signed char>(value);
    const auto& ed = g_.edge(e);
    for (Vertex x : {ed.u, ed.v}) {
      --rem_[x];
      cur_[x] += value;
    }
    trail.push_back(e);
  }

  void undo(std::vector<EdgeId>& trail, std::size_t mark) {
    while (trail.size() > mark) {
      EdgeId e = trail.back();
      trail.pop_back();
      const auto& ed = g_.edge(e);
      for (Vertex x : {ed.u, ed.v}) {
        ++rem_[x];
        cur_[x] -= state_[e];
      }
      state_[e] = -1;
    }
  }

  // Forces the undecided edges of v when only one extreme stays reachable.
  bool propagate(Vertex start, std::vector<EdgeId>& trail) {
    std::vector<Vertex> queue{start};
    while (!queue.empty()) {
      Vertex v = queue.back();
      queue.pop_back();
      auto [lo, hi] = reachable(v);
      if (lo == hi) return false;
      if (rem_[v] == 0) continue;
      int forced = -1;
      if (std::next(lo) == hi) {
        if (*lo == cur_[v]) forced = 0;
        else if (*lo == cur_[v] + rem_[v]) forced = 1;
      }
      if (forced < 0) continue;
      for (const auto& inc : g_.incident(v)) {
        if (state_[inc.edge] != -1) continue;
        assign(inc.edge, forced, trail);
        queue.push_back(inc.neighbour);
      }
    }
    return true;
  }

  bool propagate_all(std::vector<EdgeId>& trail) {
    for (Vertex v = 0; v < g_.vertex_count(); ++v)
      if (!propagate(v, trail)) return false;
    return true;
  }

  bool dfs() {
    if (budget_ > 0 && nodes_ >= budget_) {
      over_budget_ = true;
      return false;
    }
    ++nodes_;
    // Fail-first: the open vertex with the fewest reachable targets.
    Vertex pick = -1;
    long best = 0;
    for (Vertex v = 0; v < g_.vertex_count(); ++v) {
      if (rem_[v] == 0) continue;
      auto [lo, hi] = reachable(v);
      long score = static_cast<long>(hi - lo) * 4096 + rem_[v];
      if (pick < 0 || score < best) {
        pick = v;
        best = score;
      }
    }
    if (pick < 0) return true;
    EdgeId edge = -1;
    Vertex other = -1;
    for (const auto& inc : g_.incident(pick))
      if (state_[inc.edge] == -1) {
        edge = inc.edge;
        other = inc.neighbour;
        break;
      }
    const int first = *reachable(pick).first > cur_[pick] ? 1 : 0;
    for (int value : {first, 1 - first}) {
      std::vector<EdgeId> trail;
      assign(edge, value, trail);
      if (propagate(pick, trail) && propagate(other, trail) && dfs()) return true;
      undo(trail, 0);
      if (over_budget_) return false;
    }
    return false;
  }

  const Graph& g_;
  const std::vector<std::vector<int>>& allowed_;
  long long budget_;
  long long nodes_ = 0;
  bool over_budget_ = false;
  std::vector<signed char> state_;
  std::vector<int> cur_, rem_;
};

class PenaltyLocalSearch {
public:
  PenaltyLocalSearch(const Graph& g, const DegreeTargetSpec& spec, const SolveOptions& opt)
      : g_(g), allowed_(spec.allowed), opt_(opt) {}

  FactorOutcome run() {
    FactorOutcome out;
    const long long restart_after = std::max<long long>(2000, 20LL * g_.edge_count());
    for (std::uint64_t restart = 0;; ++restart) {
      Rng rng(derive_seed(opt_.seed, restart, 0x4c53));
      init(rng);
      int best = penalty_;
      long long since_best = 0;
      while (true) {
        if (penalty_ == 0) {
          out.subgraph = in_;
          return out;
        }
        if (out.work >= opt_.budget) {
          out.failure = FactorFailure::BudgetExhausted;
          return out;
        }
        step(rng);
        ++out.work;
        if (penalty_ < best) {
          best = penalty_;
          since_best = 0;
        } else if (++since_best > restart_after) {
          break;
        }
      }
    }
  }

private:
  int dist(Vertex v, int degree) const { return distance_to_set(degree, allowed_[v]); }

  void init(Rng& rng) {
    const int n = g_.vertex_count();
    std::vector<double> frac(static_cast<std::size_t>(n), 0.0);
    for (Vertex v = 0; v < n; ++v) {
      const auto& s = allowed_[v];
      frac[v] = g_.degree(v) > 0 ? static_cast<double>(s[s.size() / 2]) / g_.degree(v) : 0.0;
    }
    in_.assign(g_.edges().size(), 0);
    deg_.assign(static_cast<std::size_t>(n), 0);
    for (EdgeId e = 0; e < g_.edge_count(); ++e) {
      const auto& ed = g_.edge(e);
      if (uniform_unit(rng) < 0.5 * (frac[ed.u] + frac[ed.v])) {
        in_[e] = 1;
        ++deg_[ed.u];
        ++deg_[ed.v];
      }
    }
    penalty_ = 0;
    violated_.clear();
    pos_.assign(static_cast<std::size_t>(n), -1);
    for (Vertex v = 0; v < n; ++v) {
      penalty_ += dist(v, deg_[v]);
      sync(v);
    }
  }

  void sync(Vertex v) {
    const bool bad = dist(v, deg_[v]) > 0;
    if (bad && pos_[v] < 0) {
      pos_[v] = static_cast<int>(violated_.size());
      violated_.push_back(v);
    } else if (!bad && pos_[v] >= 0) {
      Vertex last = violated_.back();
      violated_[pos_[v]] = last;
      pos_[last] = pos_[v];
      violated_.pop_back();
      pos_[v] = -1;
    }
  }

  int delta(EdgeId e) const {
    const auto& ed = g_.edge(e);
    const int s = in_[e] ? -1 : 1;
    return dist(ed.u, deg_[ed.u] + s) - dist(ed.u, deg_[ed.u]) + dist(ed.v, deg_[ed.v] + s) - dist(ed.v, deg_[ed.v]);
  }

  void flip(EdgeId e) {
    const auto& ed = g_.edge(e);
    penalty_ += delta(e);
    const int s = in_[e] ? -1 : 1;
    in_[e] = static_cast<char>(1 - in_[e]);
    deg_[ed.u] += s;
    deg_[ed.v] += s;
    sync(ed.u);
    sync(ed.v);
  }

  void step(Rng& rng) {
    Vertex v = violated_[uniform_below(rng, violated_.size())];
    const auto& inc = g_.incident(v);
    if (uniform_unit(rng) < 0.1) {
      flip(inc[uniform_below(rng, inc.size())].edge);
      return;
    }
    int best = 1 << 30;
    std::vector<EdgeId> ties;
    for (const auto& i : inc) {
      int d = delta(i.edge);
      if (d < best) {
        best = d;
        ties.clear();
      }
      if (d == best) ties.push_back(i.edge);
    }
    flip(ties[uniform_below(rng, ties.size())]);
  }

  const Graph& g_;
  const std::vector<std::vector<int>>& allowed_;
  SolveOptions opt_;
  EdgeMask in_;
  std::vector<int> deg_;
  int penalty_ = 0;
  std::vector<Vertex> violated_;
  std::vector<int> pos_;
};

}  // namespace detail

// Spanning subgraph with every degree in its allowed set.
inline FactorOutcome find_degree_set_subgraph(const Graph& g, const DegreeTargetSpec& spec,
                                              const SolveOptions& opt = {}) {
  spec.validate(g);
  if (opt.budget < 0) throw std::invalid_argument("budget must be nonnegative");
  if (opt.mode == SolverMode::Exact) return detail::ExactFactorSearch(g, spec, opt.budget).run();
  return detail::PenaltyLocalSearch(g, spec, opt).run();
}

struct VertexDiagnostic {
  Vertex vertex;
  int degree;
  std::string expected;
};

struct FactorVerdict {
  bool ok = true;
  std::vector<VertexDiagnostic> failures;
};

inline FactorVerdict verify_factor(const Graph& g, const EdgeMask& h, const DegreeTargetSpec& spec) {
  if (h.size() != g.edges().size()) throw GraphError("mask does not match the host graph");
  FactorVerdict out;
  auto deg = masked_degrees(g, h);
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    const auto& s = spec.allowed.at(static_cast<std::size_t>(v));
    if (!std::binary_search(s.begin(), s.end(), deg[v])) {
      std::string want = "{";
      for (std::size_t i = 0; i < s.size(); ++i) want += (i ? "," : "") + std::to_string(s[i]);
      out.failures.push_back({v, deg[v], want + "}"});
    }
  }
  out.ok = out.failures.empty();
  return out;
}

inline FactorVerdict verify_factor(const Graph& g, const Graph& h, const DegreeTargetSpec& spec) {
  return verify_factor(g, mask_of(g, h), spec);
}

// Interval [d/3, 2d/3] plus the two-residue condition.
inline FactorVerdict verify_factor(const Graph& g, const EdgeMask& h, const ModularTargetSpec& spec) {
  if (h.size() != g.edges().size()) throw GraphError("mask does not match the host graph");
  FactorVerdict out;
  auto deg = masked_degrees(g, h);
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    const int d = g.degree(v), x = deg[v];
    const bool interval = 3 * x >= d && 3 * x <= 2 * d;
    if (!interval || !spec.residue_ok(v, x))
      out.failures.push_back({v, x, "in [d/3, 2d/3] and = t or t+1 mod " + std::to_string(spec.lambda[v])});
  }
  out.ok = out.failures.empty();
  return out;
}

inline FactorVerdict verify_factor(const Graph& g, const Graph& h, const ModularTargetSpec& spec) {
  return verify_factor(g, mask_of(g, h), spec);
}

inline FactorOutcome find_modular_subgraph(const Graph& g, const ModularTargetSpec& spec,
                                           const SolveOptions& opt = {}) {
  auto pairs = choose_window_targets(g, spec);
  auto out = find_degree_set_subgraph(g, DegreeTargetSpec::from_pairs(g, pairs), opt);
  if (out.found() && !verify_factor(g, *out.subgraph, spec).ok)
    throw std::logic_error("modular subgraph failed verification");
  return out;
}

}  // namespace irrdec
