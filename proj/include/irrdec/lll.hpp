#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "exact.hpp"
#include "graph.hpp"
#include "labeling.hpp"
#include "random.hpp"

namespace irrdec {

// Bad events of the labeling: A_v, B_v, C_v exceed the 0.62-power cap,
// F_v exceeds the 0.24-power cap.
enum class EventKind { A = 0, B = 1, C = 2, F = 3 };

inline const char* to_string(EventKind k) {
  static constexpr const char* names[] = {"A", "B", "C", "F"};
  return names[static_cast<int>(k)];
}

struct Slot {
  Vertex vertex;
  int index;  // 0 for c1, 1 for c2
  friend auto operator<=>(const Slot&, const Slot&) = default;
};

struct BadEvent {
  Vertex vertex;
  EventKind kind;
  friend auto operator<=>(const BadEvent&, const BadEvent&) = default;
};

// The label slots an event depends on: its own vertex and the gated neighbours.
inline std::vector<Slot> event_scope(const Graph& g, const std::vector<char>& gated, const BadEvent& ev) {
  std::vector<int> slots;
  switch (ev.kind) {
    case EventKind::A: slots = {0}; break;
    case EventKind::B: slots = {1}; break;
    default: slots = {0, 1}; break;
  }
  std::vector<Vertex> vs{ev.vertex};
  for (const auto& inc : g.incident(ev.vertex))
    if (gated[inc.edge]) vs.push_back(inc.neighbour);
  std::vector<Slot> out;
  for (Vertex v : vs)
    for (int s : slots) out.push_back({v, s});
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<Slot> event_scope(const Graph& g, const BadEvent& ev) {
  return event_scope(g, gated_edges(g), ev);
}

// Risk flags and per-vertex |A|,|B|,|C|,|F| kept up to date under slot changes.
class RiskState {
public:
  RiskState(const Graph& g, LabelPair labels, double slack)
      : g_(g), scale_(g), gated_(gated_edges(g)), caps_(slack), labels_(std::move(labels)) {
    check_labels(g, labels_);
    flags_.assign(g.edges().size(), 0);
    counts_.assign(static_cast<std::size_t>(g.vertex_count()), {0, 0, 0, 0});
    for (EdgeId e = 0; e < g.edge_count(); ++e) set_flags(e, edge_risk_flags(g_, scale_, labels_, e, gated_[e]));
    for (Vertex v = 0; v < g.vertex_count(); ++v) refresh_violations(v);
  }

  const LabelPair& labels() const { return labels_; }
  const std::vector<char>& gated() const { return gated_; }
  const VertexScale& scale() const { return scale_; }
  const std::set<BadEvent>& violated() const { return violated_; }

  void set_slot(const Slot& s, std::int64_t value) {
    labels_.slot(s.vertex, s.index) = value;
    touched_.push_back(s.vertex);
  }

  // Recomputes flags on gated edges at every vertex touched since the last call.
  void commit() {
    std::sort(touched_.begin(), touched_.end());
    touched_.erase(std::unique(touched_.begin(), touched_.end()), touched_.end());
    std::vector<Vertex> dirty;
    for (Vertex w : touched_) {
      dirty.push_back(w);
      for (const auto& inc : g_.incident(w)) {
        if (!gated_[inc.edge]) continue;
        set_flags(inc.edge, edge_risk_flags(g_, scale_, labels_, inc.edge, true));
        dirty.push_back(inc.neighbour);
      }
    }
    touched_.clear();
    std::sort(dirty.begin(), dirty.end());
    dirty.erase(std::unique(dirty.begin(), dirty.end()), dirty.end());
    for (Vertex v : dirty) refresh_violations(v);
  }

private:
  void set_flags(EdgeId e, std::uint8_t nf) {
    const std::uint8_t old = flags_[e];
    if (old == nf) return;
    const auto& ed = g_.edge(e);
    for (Vertex x : {ed.u, ed.v}) {
      auto& c = counts_[x];
      c[0] += (nf & 1) - (old & 1);
      c[1] += ((nf >> 1) & 1) - ((old >> 1) & 1);
      c[2] += ((nf >> 2) & 1) - ((old >> 2) & 1);
      c[3] += ((nf & 6) == 6) - ((old & 6) == 6);
    }
    flags_[e] = nf;
  }

  void refresh_violations(Vertex v) {
    const int d = scale_.degree[v];
    const int abc = caps_.abc(d), f = caps_.f(d);
    for (int kind = 0; kind < 4; ++kind) {
      BadEvent ev{v, static_cast<EventKind>(kind)};
      const bool bad = counts_[v][kind] > (kind == 3 ? f : abc);
      if (bad) violated_.insert(ev); else violated_.erase(ev);
    }
  }

  const Graph& g_;
  VertexScale scale_;
  std::vector<char> gated_;
  ClaimCaps caps_;
  LabelPair labels_;
  std::vector<std::uint8_t> flags_;
  std::vector<std::array<int, 4>> counts_;
  std::set<BadEvent> violated_;
  std::vector<Vertex> touched_;
};

// Events whose count bound (scaled by slack) fails, sorted by (vertex, kind).
inline std::vector<BadEvent> violated_events(const Graph& g, const LabelPair& labels, double slack) {
  RiskState st(g, labels, slack);
  return {st.violated().begin(), st.violated().end()};
}

struct RoundRecord {
  int round;
  BadEvent event;
  const std::vector<Slot>& scope;
  const LabelPair& labels_after;
};

struct MoserTardosResult {
  bool converged = false;
  LabelPair labels;
  int rounds = 0;
  std::vector<int> trajectory;  // number of violated events before each round
};

// Constructive Local Lemma: start from sample_labels(g, seed), then while some
// event is violated resample the scope of the least one.
inline MoserTardosResult moser_tardos(const Graph& g, std::uint64_t seed, double slack, int max_rounds,
                                      const std::function<void(const RoundRecord&)>& on_round = {}) {
  if (max_rounds < 1) throw std::invalid_argument("max_rounds must be at least 1");
  RiskState st(g, sample_labels(g, seed), slack);
  Rng rng(derive_seed(seed, 0x4d54, 0x4d54));
  MoserTardosResult res;
  while (!st.violated().empty()) {
    if (res.rounds >= max_rounds) {
      res.labels = st.labels();
      return res;
    }
    res.trajectory.push_back(static_cast<int>(st.violated().size()));
    const BadEvent ev = *st.violated().begin();
    auto scope = event_scope(g, st.gated(), ev);
    for (const auto& s : scope)
      st.set_slot(s, static_cast<std::int64_t>(uniform_below(rng, static_cast<std::uint64_t>(st.scale().lambda[s.vertex]))));
    st.commit();
    ++res.rounds;
    if (on_round) on_round(RoundRecord{res.rounds, ev, scope, st.labels()});
  }
  res.converged = true;
  res.labels = st.labels();
  return res;
}

// Events are indexed 4 * vertex + kind.
struct DependencyDigraph {
  int vertex_count = 0;
  std::vector<std::vector<int>> arcs;

  static int index(const BadEvent& e) { return 4 * e.vertex + static_cast<int>(e.kind); }
  static BadEvent event(int idx) { return {idx / 4, static_cast<EventKind>(idx % 4)}; }
  int out_degree(const BadEvent& e) const { return static_cast<int>(arcs[index(e)].size()); }
};

// Arcs from each event of v to every other event of v, of gated neighbours v'
// of v, and of neighbours v'' of such v' gated relative to v'.
inline DependencyDigraph build_dependency_digraph(const Graph& g) {
  const auto gated = gated_edges(g);
  DependencyDigraph dg;
  dg.vertex_count = g.vertex_count();
  dg.arcs.resize(static_cast<std::size_t>(4 * g.vertex_count()));
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    std::vector<Vertex> reach{v};
    for (const auto& i1 : g.incident(v)) {
      if (!gated[i1.edge]) continue;
      reach.push_back(i1.neighbour);
      for (const auto& i2 : g.incident(i1.neighbour))
        if (gated[i2.edge]) reach.push_back(i2.neighbour);
    }
    std::sort(reach.begin(), reach.end());
    reach.erase(std::unique(reach.begin(), reach.end()), reach.end());

    const auto d = static_cast<std::uint64_t>(g.degree(v));
    const std::uint64_t outdeg_bound = 3 + 4 * d * floor_beta_times(d);
    for (Vertex w : reach)
      if (w != v && !within_beta_squared(d, static_cast<std::uint64_t>(g.degree(w))))
        throw std::logic_error("dependency target outside the beta^2 degree window");
    for (int kind = 0; kind < 4; ++kind) {
      const int from = 4 * v + kind;
      auto& out = dg.arcs[from];
      for (Vertex w : reach)
        for (int k2 = 0; k2 < 4; ++k2)
          if (4 * w + k2 != from) out.push_back(4 * w + k2);
      if (out.size() > outdeg_bound) throw std::logic_error("dependency out-degree exceeds 3 + 4d floor(beta d)");
    }
  }
  return dg;
}

struct Rational {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  static Rational make(std::uint64_t n, std::uint64_t d) {
    auto g = std::gcd(n, d);
    if (g == 0) g = 1;
    return {n / g, d / g};
  }
  long double value() const { return static_cast<long double>(num) / static_cast<long double>(den); }
  std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
  friend bool operator==(const Rational&, const Rational&) = default;
  friend bool operator<(const Rational& a, const Rational& b) {
    return static_cast<unsigned __int128>(a.num) * b.den < static_cast<unsigned __int128>(b.num) * a.den;
  }
};

// Risk membership of u in a set of v: types 1-3, or F (types 2 and 3 together).
enum class RiskEvent { Type1, Type2, Type3, Type2and3 };

struct LabelCondition {
  std::optional<std::int64_t> c1u = std::nullopt, c2u = std::nullopt, c1v = std::nullopt, c2v = std::nullopt;
};

namespace detail {

inline Rational enumerate_risk(std::int64_t du, std::int64_t dv, int ku, int kv, RiskEvent event,
                               const LabelCondition& cond) {
  const std::int64_t lu = std::int64_t{1} << ku, lv = std::int64_t{1} << kv;
  const bool uses_c1 = event != RiskEvent::Type2, uses_c2 = event != RiskEvent::Type1;

  auto range = [](const std::optional<std::int64_t>& fixed, std::int64_t lambda, bool used) {
    if (fixed) {
      if (*fixed < 0 || *fixed >= lambda) throw std::invalid_argument("conditioned label out of range");
      return std::pair{*fixed, *fixed + 1};
    }
    return used ? std::pair{std::int64_t{0}, lambda} : std::pair{std::int64_t{0}, std::int64_t{1}};
  };
  auto [a0, a1] = range(cond.c1u, lu, uses_c1);
  auto [b0, b1] = range(cond.c2u, lu, uses_c2);
  auto [c0, c1] = range(cond.c1v, lv, uses_c1);
  auto [e0, e1] = range(cond.c2v, lv, uses_c2);

  std::uint64_t hits = 0, total = 0;
  for (auto x1 = c0; x1 < c1; ++x1)
    for (auto x2 = e0; x2 < e1; ++x2)
      for (auto y1 = a0; y1 < a1; ++y1)
        for (auto y2 = b0; y2 < b1; ++y2) {
          EndpointLabels u{du, ku, y1, y2}, v{dv, kv, x1, x2};
          bool hit = false;
          switch (event) {
            case RiskEvent::Type1: hit = risk_congruence(u, v, RiskType::One); break;
            case RiskEvent::Type2: hit = risk_congruence(u, v, RiskType::Two); break;
            case RiskEvent::Type3: hit = risk_congruence(u, v, RiskType::Three); break;
            case RiskEvent::Type2and3:
              hit = risk_congruence(u, v, RiskType::Two) && risk_congruence(u, v, RiskType::Three);
              break;
          }
          hits += hit;
          ++total;
        }
  return Rational::make(hits, total);
}

inline void require_gated(std::int64_t du, std::int64_t dv) {
  if (du < 1 || dv < 1) throw std::invalid_argument("degrees must be positive");
  if (!beta_gate(static_cast<std::uint64_t>(du), static_cast<std::uint64_t>(dv)))
    throw std::invalid_argument("degree pair fails the ratio gate");
}

}  // namespace detail

// Exact probability that uv is risky under uniform labels, by enumeration of
// the free slots (only slots the event reads are enumerated).
inline Rational exact_edge_risk_probability(std::int64_t du, std::int64_t dv, RiskEvent event,
                                            const LabelCondition& cond = {}) {
  detail::require_gated(du, dv);
  return detail::enumerate_risk(du, dv, ceil_log_beta(static_cast<std::uint64_t>(du)),
                                ceil_log_beta(static_cast<std::uint64_t>(dv)), event, cond);
}

// One conditional bound c / d(v)^(num/50) checked against the worst case over
// all values of the conditioned slots.
struct RiskBoundCheck {
  std::string name;
  RiskEvent event;
  std::string conditioned_on;
  Rational worst;
  std::uint64_t coeff;
  unsigned exponent_num;
  long double bound_value;
  bool pass;
};

inline std::vector<RiskBoundCheck> check_risk_bounds(std::int64_t du, std::int64_t dv) {
  detail::require_gated(du, dv);
  const int ku = ceil_log_beta(static_cast<std::uint64_t>(du)), kv = ceil_log_beta(static_cast<std::uint64_t>(dv));
  const std::int64_t lu = std::int64_t{1} << ku, lv = std::int64_t{1} << kv;
  auto prob = [&](RiskEvent ev, const LabelCondition& c) { return detail::enumerate_risk(du, dv, ku, kv, ev, c); };
  std::vector<RiskBoundCheck> out;
  auto finish = [&](std::string name, RiskEvent ev, std::string on, Rational worst, std::uint64_t c, unsigned num) {
    RiskBoundCheck r{std::move(name), ev, std::move(on), worst, c, num,
                     static_cast<long double>(c) / std::pow(static_cast<long double>(dv), num / 50.0L), false};
    r.pass = rational_le_inverse_power(worst.num, worst.den, c, static_cast<std::uint64_t>(dv), num);
    out.push_back(std::move(r));
  };

  Rational w1, w2, w3, w3b, wf;
  for (std::int64_t x = 0; x < lv; ++x) {
    w1 = std::max(w1, prob(RiskEvent::Type1, {.c1v = x}));
    w2 = std::max(w2, prob(RiskEvent::Type2, {.c2v = x}));
    for (std::int64_t y = 0; y < lv; ++y) {
      w3b = std::max(w3b, prob(RiskEvent::Type3, {.c1v = x, .c2v = y}));
      wf = std::max(wf, prob(RiskEvent::Type2and3, {.c1v = x, .c2v = y}));
      for (std::int64_t z = 0; z < lu; ++z)
        w3 = std::max(w3, prob(RiskEvent::Type3, {.c2u = z, .c1v = x, .c2v = y}));
    }
  }
  finish("A", RiskEvent::Type1, "c1(v)", w1, 2, 19);
  finish("B", RiskEvent::Type2, "c2(v)", w2, 2, 19);
  finish("C|c2(u)", RiskEvent::Type3, "c1(v),c2(v),c2(u)", w3, 4, 19);
  finish("C", RiskEvent::Type3, "c1(v),c2(v)", w3b, 4, 19);
  finish("F", RiskEvent::Type2and3, "c1(v),c2(v)", wf, 8, 38);
  return out;
}

// 2 exp(-t^2 / (3np)), the tail bound on |BIN(n,p) - np| > t for 0 <= t <= np.
inline double chernoff_bound(int n, double p, double t) {
  if (n < 0 || !(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("chernoff_bound: bad n or p");
  const double np = n * p;
  if (!(t >= 0.0) || t > np) throw std::invalid_argument("chernoff_bound: need 0 <= t <= np");
  if (t == 0.0) return 2.0;
  return 2.0 * std::exp(-t * t / (3.0 * np));
}

// Pr(|BIN(n,p) - np| > t), summed over the binomial mass function.
inline long double binomial_deviation_tail(int n, double p, double t) {
  if (n < 0 || n > 60 || !(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("binomial tail: need 0 <= n <= 60");
  long double total = 0.0L, choose = 1.0L;
  const long double np = static_cast<long double>(n) * p;
  for (int k = 0; k <= n; ++k) {
    if (k > 0) choose = choose * (n - k + 1) / k;
    if (std::fabs(static_cast<long double>(k) - np) > t)
      total += choose * std::pow(static_cast<long double>(p), k) * std::pow(1.0L - p, n - k);
  }
  return total;
}

}  // namespace irrdec
