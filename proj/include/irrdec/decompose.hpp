#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "exact.hpp"
#include "exception_family.hpp"
#include "factor.hpp"
#include "graph.hpp"
#include "labeling.hpp"
#include "lll.hpp"
#include "random.hpp"

namespace irrdec {

struct PipelineConfig {
  std::uint64_t seed = 0;
  double slack = 1.0;
  SolverMode solver_mode = SolverMode::Heuristic;
  long long solver_budget = 2'000'000;
  bool strict = false;
  int max_rounds = 100'000;
};

enum class DiagnosticKind {
  ExceptionGraph,
  MinDegreeTooSmall,
  ClaimBoundsUnachieved,
  CorollaryPreconditionFailed,
  FactorTargetUnreachable,
  FactorSolverFailure,
  ColouringFailure,
  WindowViolated,
  PartNotIrregular,
};

inline const char* to_string(DiagnosticKind k) {
  switch (k) {
    case DiagnosticKind::ExceptionGraph: return "ExceptionGraph";
    case DiagnosticKind::MinDegreeTooSmall: return "MinDegreeTooSmall";
    case DiagnosticKind::ClaimBoundsUnachieved: return "ClaimBoundsUnachieved";
    case DiagnosticKind::CorollaryPreconditionFailed: return "CorollaryPreconditionFailed";
    case DiagnosticKind::FactorTargetUnreachable: return "FactorTargetUnreachable";
    case DiagnosticKind::FactorSolverFailure: return "FactorSolverFailure";
    case DiagnosticKind::ColouringFailure: return "ColouringFailure";
    case DiagnosticKind::WindowViolated: return "WindowViolated";
    case DiagnosticKind::PartNotIrregular: return "PartNotIrregular";
  }
  return "?";
}

struct Diagnostic {
  DiagnosticKind kind;
  std::string stage;
  std::string message;
  std::vector<Vertex> vertices;
  std::vector<EdgeId> edges;
};

struct StageReport {
  std::string stage;
  bool ok = true;
  std::string note;
  int edges = 0;
  std::vector<Vertex> relaxed_vertices;  // interval precondition waived (relaxed mode)
};

// Everything the construction produced, as masks over the host's edge ids.
struct PipelineTrace {
  LabelPair labels;
  std::vector<std::uint8_t> risk_flags;  // bit t-1 set for edges in R_t
  std::vector<char> gated;
  std::vector<int> k;                    // ceil(log_beta d(v))
  std::vector<std::int64_t> modulus;     // 3 * 4^k(v)
  std::vector<std::int64_t> t1, t2;      // residue targets for H1 and H2
  EdgeMask g_prime, g1, g_second, c, f;
  std::vector<int> h;                    // proper colouring of F
  std::vector<int> c_v;                  // d_C(v)
  EdgeMask h1, h2, h2_prime, h3_prime;
  int mt_rounds = 0;
  std::vector<StageReport> stages;
  bool complete = false;
};

struct PipelineResult {
  std::optional<Decomposition> decomposition;
  std::optional<Diagnostic> diagnostic;
  PipelineTrace trace;

  bool success() const { return decomposition.has_value(); }
};

// Proper colouring of F, greedy in ascending vertex order with the least free
// value. Vertices without F-edges get 0. Fails when a vertex would need a
// value above cap(v).
inline std::optional<std::vector<int>> greedy_proper_colouring(const Graph& f, const std::vector<int>& cap) {
  std::vector<int> h(static_cast<std::size_t>(f.vertex_count()), -1);
  for (Vertex v = 0; v < f.vertex_count(); ++v) {
    if (f.degree(v) == 0) {
      h[v] = 0;
      continue;
    }
    std::vector<char> used(static_cast<std::size_t>(f.degree(v)) + 1, 0);
    for (const auto& inc : f.incident(v))
      if (h[inc.neighbour] >= 0 && h[inc.neighbour] <= f.degree(v)) used[h[inc.neighbour]] = 1;
    int x = 0;
    while (used[x]) ++x;
    if (x > cap.at(static_cast<std::size_t>(v))) return std::nullopt;
    h[v] = x;
  }
  return h;
}

namespace detail {

inline EdgeMask mask_and(const EdgeMask& a, const EdgeMask& b) {
  EdgeMask out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] && b[i];
  return out;
}

inline EdgeMask mask_minus(const EdgeMask& a, const EdgeMask& b) {
  EdgeMask out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] && !b[i];
  return out;
}

inline EdgeMask mask_or(const EdgeMask& a, const EdgeMask& b) {
  EdgeMask out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] || b[i];
  return out;
}

inline EdgeMask risk_mask(const std::vector<std::uint8_t>& flags, std::uint8_t any_of) {
  EdgeMask out(flags.size());
  for (std::size_t i = 0; i < flags.size(); ++i) out[i] = (flags[i] & any_of) != 0;
  return out;
}

struct FactorStage {
  std::optional<EdgeMask> h;
  std::optional<Diagnostic> diagnostic;
};

// Finds a subgraph of the masked host with degrees = target or target+1 modulo
// the vertex modulus. The interval window of the degree theorem is applied to
// host degrees; modulus and targets come from degrees in G. In relaxed mode a
// vertex whose host degree is below 6 * modulus falls back to the residue
// condition over [0, host degree].
inline FactorStage solve_modular_stage(const Graph& g, const EdgeMask& host_mask, const std::vector<std::int64_t>& target,
                                       const std::vector<std::int64_t>& modulus, const PipelineConfig& cfg,
                                       const std::string& stage, std::uint64_t stage_seed, StageReport& report) {
  FactorStage out;
  Graph host = subgraph(g, host_mask);
  std::vector<EdgeId> to_g;
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (host_mask[e]) to_g.push_back(e);

  std::vector<std::vector<int>> allowed(static_cast<std::size_t>(g.vertex_count()));
  std::vector<Vertex> short_vertices, unreachable;
  ModularTargetSpec spec{target, modulus};
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    const int d = host.degree(v);
    if (6 * modulus[v] <= d) {
      // least congruent element of each window, as in choose_window_targets
      auto least = [&](int lo, int hi) {
        for (int x = lo; x <= hi; ++x)
          if (mod_floor(x - target[v], modulus[v]) == 0) return x;
        return -1;
      };
      int a = least(d / 3 + 1, d / 2), b = least(d / 2, 2 * d / 3 - 1);
      allowed[v] = {a, a + 1, b, b + 1};
    } else {
      short_vertices.push_back(v);
      for (int x = 0; x <= d; ++x)
        if (spec.residue_ok(v, x)) allowed[v].push_back(x);
      if (allowed[v].empty()) unreachable.push_back(v);
    }
  }
  if (cfg.strict && !short_vertices.empty()) {
    out.diagnostic = Diagnostic{DiagnosticKind::CorollaryPreconditionFailed, stage,
                                "6 * modulus(v) exceeds the host degree", short_vertices, {}};
    return out;
  }
  report.relaxed_vertices = short_vertices;
  if (!unreachable.empty()) {
    out.diagnostic = Diagnostic{DiagnosticKind::FactorTargetUnreachable, stage,
                                "no degree in [0, host degree] meets the residue targets", unreachable, {}};
    return out;
  }
  auto res = find_degree_set_subgraph(host, DegreeTargetSpec::explicit_sets(std::move(allowed)),
                                      SolveOptions{cfg.solver_mode, cfg.solver_budget, stage_seed});
  if (!res.found()) {
    out.diagnostic = Diagnostic{DiagnosticKind::FactorSolverFailure, stage,
                                std::string("degree-constrained subgraph not found: ") + to_string(res.failure), {}, {}};
    return out;
  }
  EdgeMask h(g.edges().size(), 0);
  for (std::size_t i = 0; i < to_g.size(); ++i) h[to_g[i]] = (*res.subgraph)[i];
  out.h = std::move(h);
  return out;
}

}  // namespace detail

inline bool in_window(long double x, long double lo, long double hi) { return x >= lo && x <= hi; }

struct VertexWindow {
  Vertex vertex;
  int degree;
  int h1, h2_prime, h3_prime;
  bool h1_window;        // [d/3 - (8/3) d^0.62, 2d/3]
  bool h2_window;        // [d/9 - (16/3) d^0.62, 4d/9 + (88/9) d^0.62]
  bool h3_window;        // [d/9 - 8 d^0.62, 4d/9 + (64/9) d^0.62]
  bool final_window[3];  // [4d/37, 2d/3], decided exactly
  bool below_21129;      // d < 44^(1/0.38): 4d/9 + (88/9) d^0.62 <= 2d/3 may fail
};

inline std::vector<VertexWindow> window_report(const Graph& g, const PipelineTrace& tr) {
  auto d1 = masked_degrees(g, tr.h1), d2 = masked_degrees(g, tr.h2_prime), d3 = masked_degrees(g, tr.h3_prime);
  std::vector<VertexWindow> out;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    const int d = g.degree(v);
    const long double D = d, p = std::pow(D, 0.62L);
    VertexWindow w{};
    w.vertex = v;
    w.degree = d;
    w.h1 = d1[v];
    w.h2_prime = d2[v];
    w.h3_prime = d3[v];
    w.h1_window = in_window(d1[v], D / 3 - 8 * p / 3, 2 * D / 3);
    w.h2_window = in_window(d2[v], D / 9 - 16 * p / 3, 4 * D / 9 + 88 * p / 9);
    w.h3_window = in_window(d3[v], D / 9 - 8 * p, 4 * D / 9 + 64 * p / 9);
    int parts[3] = {d1[v], d2[v], d3[v]};
    for (int i = 0; i < 3; ++i) w.final_window[i] = 37 * parts[i] >= 4 * d && 3 * parts[i] <= 2 * d;
    w.below_21129 = d == 0 || big_pow(static_cast<std::uint64_t>(d), 19) < big_pow(44, 50);
    out.push_back(w);
  }
  return out;
}

// The three-part construction. Every success has passed the final gate that
// re-checks local irregularity of all three parts.
inline PipelineResult decompose3(const Graph& g, const PipelineConfig& cfg) {
  using namespace detail;
  if (!(cfg.slack > 0.0)) throw std::invalid_argument("slack must be positive");
  PipelineResult res;
  auto& tr = res.trace;
  auto fail = [&](Diagnostic d) {
    res.diagnostic = std::move(d);
    return std::move(res);
  };

  for (const auto& comp : connected_components(g)) {
    if (comp.size() < 2) continue;
    auto cls = recognize_exception(induced_subgraph(g, comp));
    if (cls != ExceptionClass::None)
      return fail({DiagnosticKind::ExceptionGraph, "preflight",
                   std::string("component is an exception graph: ") + to_string(cls), comp, {}});
  }
  tr.stages.push_back({"preflight", true, "no exception components", g.edge_count(), {}});
  if (cfg.strict && (g.vertex_count() == 0 || BigInt(g.min_degree()) < big_pow(10, 10)))
    return fail({DiagnosticKind::MinDegreeTooSmall, "preflight", "minimum degree below 10^10", {}, {}});

  auto mt = moser_tardos(g, cfg.seed, cfg.slack, cfg.max_rounds);
  tr.mt_rounds = mt.rounds;
  tr.labels = mt.labels;
  if (!mt.converged)
    return fail({DiagnosticKind::ClaimBoundsUnachieved, "labels",
                 "resampling did not reach the label bounds within " + std::to_string(cfg.max_rounds) + " rounds",
                 {}, {}});
  tr.stages.push_back({"labels", true, "rounds=" + std::to_string(mt.rounds), 0, {}});

  const VertexScale sc(g);
  const auto cls = classify(g, tr.labels);
  const int n = g.vertex_count();
  tr.gated = gated_edges(g);
  tr.risk_flags.resize(g.edges().size());
  for (EdgeId e = 0; e < g.edge_count(); ++e) tr.risk_flags[e] = cls.flags(e);
  tr.k = sc.k;
  tr.modulus.resize(static_cast<std::size_t>(n));
  tr.t1.resize(static_cast<std::size_t>(n));
  tr.t2.resize(static_cast<std::size_t>(n));
  for (Vertex v = 0; v < n; ++v) {
    tr.modulus[v] = 3 * (std::int64_t{1} << (2 * sc.k[v]));
    tr.t1[v] = mod_floor(3 * sc.lambda[v] * tr.labels.c1[v], tr.modulus[v]);
  }

  const EdgeMask all = full_mask(g);
  tr.g_prime = mask_minus(all, risk_mask(tr.risk_flags, 1));
  {
    StageReport rep{"H1", true, "", 0, {}};
    auto st = solve_modular_stage(g, tr.g_prime, tr.t1, tr.modulus, cfg, "H1", derive_seed(cfg.seed, 1, 0x4831), rep);
    if (st.diagnostic) return fail(*st.diagnostic);
    tr.h1 = *st.h;
    rep.edges = mask_size(tr.h1);
    tr.stages.push_back(rep);
  }

  tr.g1 = mask_minus(all, tr.h1);
  tr.g_second = mask_minus(tr.g1, risk_mask(tr.risk_flags, 2 | 4));
  tr.c = mask_and(tr.g1, risk_mask(tr.risk_flags, 4));
  EdgeMask r23(g.edges().size());
  for (EdgeId e = 0; e < g.edge_count(); ++e) r23[e] = (tr.risk_flags[e] & 6) == 6;
  tr.f = mask_and(tr.g1, r23);
  tr.c_v = masked_degrees(g, tr.c);

  {
    std::vector<int> cap(static_cast<std::size_t>(n));
    for (Vertex v = 0; v < n; ++v) cap[v] = sc.k[v] >= 1 ? (1 << (sc.k[v] - 1)) - 1 : -1;
    Graph fg = subgraph(g, tr.f);
    if (cfg.strict) {
      std::vector<Vertex> over;
      for (Vertex v = 0; v < n; ++v)
        if (fg.degree(v) > cap[v]) over.push_back(v);
      if (!over.empty())
        return fail({DiagnosticKind::ColouringFailure, "h", "d_F(v) exceeds 2^(k-1) - 1", over, {}});
    }
    auto h = greedy_proper_colouring(fg, cap);
    if (!h) return fail({DiagnosticKind::ColouringFailure, "h", "greedy colouring of F exceeded the cap", {}, {}});
    tr.h = *h;
    tr.stages.push_back({"h", true, "", mask_size(tr.f), {}});
  }

  for (Vertex v = 0; v < n; ++v)
    tr.t2[v] = mod_floor(3 * sc.lambda[v] * tr.labels.c2[v] + 3 * tr.h[v] - tr.c_v[v], tr.modulus[v]);
  {
    StageReport rep{"H2", true, "", 0, {}};
    auto st =
        solve_modular_stage(g, tr.g_second, tr.t2, tr.modulus, cfg, "H2", derive_seed(cfg.seed, 2, 0x4832), rep);
    if (st.diagnostic) return fail(*st.diagnostic);
    tr.h2 = *st.h;
    rep.edges = mask_size(tr.h2);
    tr.stages.push_back(rep);
  }
  tr.h2_prime = mask_or(tr.h2, tr.c);
  tr.h3_prime = mask_minus(mask_minus(all, tr.h1), tr.h2_prime);
  tr.complete = true;

  if (cfg.strict) {
    std::vector<Vertex> off;
    for (const auto& w : window_report(g, tr))
      if (!(w.h1_window && w.h2_window && w.h3_window && w.final_window[0] && w.final_window[1] && w.final_window[2]))
        off.push_back(w.vertex);
    if (!off.empty()) return fail({DiagnosticKind::WindowViolated, "windows", "part degree outside its window", off, {}});
  }

  const EdgeMask* parts[3] = {&tr.h1, &tr.h2_prime, &tr.h3_prime};
  for (int i = 0; i < 3; ++i) {
    auto bad = irregularity_conflicts(g, *parts[i]);
    if (!bad.empty())
      return fail({DiagnosticKind::PartNotIrregular, "final",
                   "part " + std::to_string(i + 1) + " has adjacent vertices of equal degree", {}, bad});
  }
  std::vector<int> colour(g.edges().size(), 0);
  for (EdgeId e = 0; e < g.edge_count(); ++e) colour[e] = tr.h1[e] ? 1 : tr.h2_prime[e] ? 2 : 3;
  Decomposition dec(g, 3, std::move(colour));
  if (!is_locally_irregular_decomposition(dec)) throw std::logic_error("final gate disagrees with checker");
  res.decomposition = std::move(dec);
  return res;
}

enum class SeparationCase { Type1Congruence, Type2Congruence, Properness, Type3Congruence, WindowSeparation };

inline const char* to_string(SeparationCase c) {
  switch (c) {
    case SeparationCase::Type1Congruence: return "type-1 congruence separation";
    case SeparationCase::Type2Congruence: return "type-2 congruence separation";
    case SeparationCase::Properness: return "properness of h";
    case SeparationCase::Type3Congruence: return "type-3 congruence separation";
    case SeparationCase::WindowSeparation: return "window separation";
  }
  return "?";
}

struct SeparationRecord {
  SeparationCase which;
  int degree_u, degree_v;
  bool degrees_differ;
  bool premises_hold;  // whether this trace satisfies the facts the case relies on
};

// Which validity argument covers edge uv of a part (1, 2 or 3), and whether its
// premises hold in this trace.
inline SeparationRecord congruence_separation_check(const Graph& g, const PipelineTrace& tr, int part, EdgeId e) {
  if (!tr.complete) throw std::invalid_argument("trace is incomplete");
  if (part < 1 || part > 3) throw std::invalid_argument("part must be 1, 2 or 3");
  const EdgeMask& m = part == 1 ? tr.h1 : part == 2 ? tr.h2_prime : tr.h3_prime;
  if (e < 0 || e >= g.edge_count() || !m[e]) throw std::invalid_argument("edge is not in the given part");
  const auto deg = masked_degrees(g, m);
  const auto& ed = g.edge(e);
  const Vertex u = ed.u, v = ed.v;
  SeparationRecord rec{SeparationCase::WindowSeparation, deg[u], deg[v], deg[u] != deg[v], false};

  auto residue_in = [&](Vertex x, std::int64_t value, std::int64_t target, int spread) {
    auto r = mod_floor(value - target, tr.modulus[x]);
    return r <= spread;
  };
  auto h_ok = [&](Vertex x) { return tr.k[x] >= 1 && tr.h[x] >= 0 && tr.h[x] <= (1 << (tr.k[x] - 1)) - 1; };
  auto t2p = [&](Vertex x) {
    return mod_floor(3 * (std::int64_t{1} << tr.k[x]) * tr.labels.c2[x] + 3 * tr.h[x], tr.modulus[x]);
  };

  if (!tr.gated[e]) {
    rec.which = SeparationCase::WindowSeparation;
    auto in_final = [&](Vertex x) {
      const int d = g.degree(x);
      return 37 * deg[x] >= 4 * d && 3 * deg[x] <= 2 * d;
    };
    rec.premises_hold = in_final(u) && in_final(v);
    return rec;
  }
  const auto fl = tr.risk_flags[e];
  if (part == 1) {
    rec.which = SeparationCase::Type1Congruence;
    rec.premises_hold = !(fl & 1) && residue_in(u, deg[u], tr.t1[u], 1) && residue_in(v, deg[v], tr.t1[v], 1);
  } else if (part == 2) {
    const bool r22 = residue_in(u, deg[u], t2p(u), 1) && residue_in(v, deg[v], t2p(v), 1) && h_ok(u) && h_ok(v);
    if (fl & 2) {
      rec.which = SeparationCase::Properness;
      rec.premises_hold = r22 && tr.f[e] && tr.h[u] != tr.h[v];
    } else {
      rec.which = SeparationCase::Type2Congruence;
      rec.premises_hold = r22;
    }
  } else {
    rec.which = SeparationCase::Type3Congruence;
    rec.premises_hold = !(fl & 4);
  }
  return rec;
}

// Structural and residue facts every complete trace must satisfy. Returns
// human-readable violations (empty when all hold).
inline std::vector<std::string> check_trace_invariants(const Graph& g, const PipelineTrace& tr) {
  std::vector<std::string> bad;
  if (!tr.complete) return {"trace incomplete"};
  const int m = g.edge_count();
  for (EdgeId e = 0; e < m; ++e) {
    const int owners = tr.h1[e] + tr.h2_prime[e] + tr.h3_prime[e];
    const auto fl = tr.risk_flags[e];
    const std::string id = "edge " + std::to_string(e) + ": ";
    if (owners != 1) bad.push_back(id + "not in exactly one part");
    if (tr.h1[e] && (fl & 1)) bad.push_back(id + "H1 contains an R1 edge");
    if (tr.h2[e] && (fl & 6)) bad.push_back(id + "H2 contains an R2/R3 edge");
    if (tr.g1[e] && (fl & 4) && !tr.h2_prime[e]) bad.push_back(id + "R3 edge of G1 outside H2'");
    if (tr.h3_prime[e] && (fl & 4)) bad.push_back(id + "H3' contains an R3 edge");
    if (tr.f[e] && !tr.c[e]) bad.push_back(id + "F not inside C");
    if (tr.h2[e] && tr.c[e]) bad.push_back(id + "H2 and C share an edge");
    if (tr.f[e] && tr.h[g.edge(e).u] == tr.h[g.edge(e).v]) bad.push_back(id + "h not proper on F");
  }
  const auto d1 = masked_degrees(g, tr.h1), d2 = masked_degrees(g, tr.h2), d2p = masked_degrees(g, tr.h2_prime);
  const auto dc = masked_degrees(g, tr.c);
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    const std::string id = "vertex " + std::to_string(v) + ": ";
    const auto mod = tr.modulus[v];
    auto two = [&](std::int64_t x, std::int64_t t) { return mod_floor(x - t, mod) <= 1; };
    if (dc[v] != tr.c_v[v]) bad.push_back(id + "c_v differs from d_C(v)");
    if (!two(d1[v], tr.t1[v])) bad.push_back(id + "H1 degree misses its residues");
    if (!two(d2[v], tr.t2[v])) bad.push_back(id + "H2 degree misses its residues");
    const std::int64_t t22 = 3 * (std::int64_t{1} << tr.k[v]) * tr.labels.c2[v] + 3 * tr.h[v];
    if (!two(d2p[v], t22)) bad.push_back(id + "H2' degree misses its residues");
  }
  return bad;
}

}  // namespace irrdec
