#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>
#include <vector>

#include "exact.hpp"
#include "graph.hpp"
#include "random.hpp"

namespace irrdec {

// Two label slots per vertex. c1(v), c2(v) lie in [0, lambda_of(d(v))).
struct LabelPair {
  std::vector<std::int64_t> c1;
  std::vector<std::int64_t> c2;

  std::int64_t& slot(Vertex v, int s) { return s == 0 ? c1[v] : c2[v]; }
  std::int64_t slot(Vertex v, int s) const { return s == 0 ? c1[v] : c2[v]; }
  friend bool operator==(const LabelPair&, const LabelPair&) = default;
};

// Per-vertex exponent k(v) = ceil(log_beta d(v)) and lambda(v) = 2^k(v).
// Isolated vertices are given k = 0.
struct VertexScale {
  std::vector<int> degree;
  std::vector<int> k;
  std::vector<std::int64_t> lambda;

  explicit VertexScale(const Graph& g) : degree(g.degrees()) {
    k.resize(degree.size());
    lambda.resize(degree.size());
    for (std::size_t v = 0; v < degree.size(); ++v) {
      k[v] = degree[v] > 0 ? ceil_log_beta(static_cast<std::uint64_t>(degree[v])) : 0;
      lambda[v] = std::int64_t{1} << k[v];
    }
  }
};

// Each slot draws from its own stream seeded by (seed, vertex, slot), so a
// label does not depend on the vertex order or on other vertices.
inline std::int64_t draw_label(std::uint64_t seed, Vertex v, int slot, std::int64_t lambda) {
  return static_cast<std::int64_t>(derive_seed(seed, static_cast<std::uint64_t>(v),
                                               static_cast<std::uint64_t>(slot)) &
                                   static_cast<std::uint64_t>(lambda - 1));
}

inline LabelPair sample_labels(const Graph& g, std::uint64_t seed) {
  VertexScale sc(g);
  LabelPair out;
  out.c1.resize(static_cast<std::size_t>(g.vertex_count()));
  out.c2.resize(static_cast<std::size_t>(g.vertex_count()));
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    out.c1[v] = draw_label(seed, v, 0, sc.lambda[v]);
    out.c2[v] = draw_label(seed, v, 1, sc.lambda[v]);
  }
  return out;
}

inline void check_labels(const Graph& g, const LabelPair& labels) {
  VertexScale sc(g);
  if (labels.c1.size() != sc.lambda.size() || labels.c2.size() != sc.lambda.size())
    throw std::invalid_argument("label vectors do not match the vertex count");
  for (std::size_t v = 0; v < sc.lambda.size(); ++v)
    if (labels.c1[v] < 0 || labels.c1[v] >= sc.lambda[v] || labels.c2[v] < 0 ||
        labels.c2[v] >= sc.lambda[v])
      throw std::invalid_argument("label out of range at vertex " + std::to_string(v));
}

inline std::int64_t floor_mod(std::int64_t a, std::int64_t k) {
  std::int64_t r = a % k;
  return r < 0 ? r + k : r;
}

// |a| < b (mod k): a is congruent to one of -b+1, ..., b-1 modulo k.
inline bool symmetric_mod_predicate(std::int64_t a, std::int64_t b, std::int64_t k) {
  if (k < 1 || b < 1 || b > k) throw std::invalid_argument("symmetric_mod_predicate needs 1 <= b <= k");
  std::int64_t r = floor_mod(a, k);
  return r <= b - 1 || r >= k - b + 1;
}

enum class RiskType { One = 1, Two = 2, Three = 3 };

// Endpoint data needed by the risk congruences.
struct EndpointLabels {
  std::int64_t degree;
  int k;
  std::int64_t c1;
  std::int64_t c2;
};

// The type congruence alone, without the ratio gate.
inline bool risk_congruence(const EndpointLabels& u, const EndpointLabels& v, RiskType type) {
  const int kmin = std::min(u.k, v.k);
  const std::int64_t pu = std::int64_t{1} << u.k, pv = std::int64_t{1} << v.k;
  switch (type) {
    case RiskType::One: return floor_mod(pu * u.c1 - pv * v.c1, std::int64_t{1} << (2 * kmin)) == 0;
    case RiskType::Two: return floor_mod(pu * u.c2 - pv * v.c2, std::int64_t{1} << (2 * kmin)) == 0;
    case RiskType::Three: {
      std::int64_t a = u.degree - 3 * pu * (u.c1 + u.c2) - v.degree + 3 * pv * (v.c1 + v.c2);
      return symmetric_mod_predicate(a, 3 * (std::int64_t{1} << kmin), 3 * (std::int64_t{1} << (2 * kmin)));
    }
  }
  return false;
}

inline bool is_risky(const Graph& g, const LabelPair& labels, Vertex u, Vertex v, RiskType type) {
  if (g.find_edge(u, v) < 0) throw GraphError("is_risky: not an edge");
  const auto du = static_cast<std::uint64_t>(g.degree(u)), dv = static_cast<std::uint64_t>(g.degree(v));
  if (!beta_gate(du, dv)) return false;
  EndpointLabels eu{g.degree(u), ceil_log_beta(du), labels.c1[u], labels.c2[u]};
  EndpointLabels ev{g.degree(v), ceil_log_beta(dv), labels.c1[v], labels.c2[v]};
  return risk_congruence(eu, ev, type);
}

// Risky edge sets R1, R2, R3 as per-edge bit flags (bit t-1 for type t).
class RiskyClassification {
public:
  RiskyClassification() = default;
  RiskyClassification(const Graph& g, std::vector<std::uint8_t> flags, std::vector<char> gated)
      : g_(&g), flags_(std::move(flags)), gated_(std::move(gated)) {}

  bool in(EdgeId e, RiskType t) const { return (flags_[e] >> (static_cast<int>(t) - 1)) & 1; }
  bool gated(EdgeId e) const { return gated_[e] != 0; }
  std::uint8_t flags(EdgeId e) const { return flags_[e]; }

  EdgeMask mask(RiskType t) const {
    EdgeMask m(flags_.size(), 0);
    for (std::size_t e = 0; e < flags_.size(); ++e) m[e] = in(static_cast<EdgeId>(e), t);
    return m;
  }

  int count(RiskType t) const { return mask_size(mask(t)); }

  std::vector<Vertex> a_of(Vertex v) const { return neighbours_with(v, 0b001); }
  std::vector<Vertex> b_of(Vertex v) const { return neighbours_with(v, 0b010); }
  std::vector<Vertex> c_of(Vertex v) const { return neighbours_with(v, 0b100); }
  std::vector<Vertex> f_of(Vertex v) const { return neighbours_with(v, 0b110); }

private:
  std::vector<Vertex> neighbours_with(Vertex v, std::uint8_t bits) const {
    std::vector<Vertex> out;
    for (const auto& inc : g_->incident(v))
      if ((flags_[inc.edge] & bits) == bits) out.push_back(inc.neighbour);
    return out;
  }

  const Graph* g_ = nullptr;
  std::vector<std::uint8_t> flags_;
  std::vector<char> gated_;
};

inline std::uint8_t edge_risk_flags(const Graph& g, const VertexScale& sc, const LabelPair& labels,
                                    EdgeId e, bool gated) {
  if (!gated) return 0;
  const auto& ed = g.edge(e);
  EndpointLabels eu{sc.degree[ed.u], sc.k[ed.u], labels.c1[ed.u], labels.c2[ed.u]};
  EndpointLabels ev{sc.degree[ed.v], sc.k[ed.v], labels.c1[ed.v], labels.c2[ed.v]};
  std::uint8_t f = 0;
  if (risk_congruence(eu, ev, RiskType::One)) f |= 1;
  if (risk_congruence(eu, ev, RiskType::Two)) f |= 2;
  if (risk_congruence(eu, ev, RiskType::Three)) f |= 4;
  return f;
}

// Per-edge ratio gate, memoized by degree pair.
inline std::vector<char> gated_edges(const Graph& g) {
  std::map<std::pair<int, int>, bool> memo;
  std::vector<char> out(g.edges().size(), 0);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    int a = g.degree(g.edge(e).u), b = g.degree(g.edge(e).v);
    auto key = std::minmax(a, b);
    auto it = memo.find(key);
    if (it == memo.end())
      it = memo.emplace(key, beta_gate(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b))).first;
    out[e] = it->second;
  }
  return out;
}

inline RiskyClassification classify(const Graph& g, const LabelPair& labels) {
  VertexScale sc(g);
  auto gated = gated_edges(g);
  std::vector<std::uint8_t> flags(g.edges().size(), 0);
  for (EdgeId e = 0; e < g.edge_count(); ++e) flags[e] = edge_risk_flags(g, sc, labels, e, gated[e]);
  return RiskyClassification(g, std::move(flags), std::move(gated));
}

// Largest counts allowed by the bounds |A|,|B|,|C| <= 8 s d^0.62 and
// |F| <= 12 s d^0.24 at slack s, decided exactly (0.62 = 31/50, 0.24 = 12/50).
class ClaimCaps {
public:
  explicit ClaimCaps(double slack) : slack_(slack) {
    if (!(slack > 0.0)) throw std::invalid_argument("slack must be positive");
    unbounded_ = std::isinf(slack);
    if (!unbounded_) dyadic_ = Dyadic::from_double(slack);
  }

  double slack() const { return slack_; }
  int abc(int d) const { return cap(d, 8, 31, abc_cache_); }
  int f(int d) const { return cap(d, 12, 12, f_cache_); }

  long double abc_bound(int d) const { return 8.0L * slack_ * std::pow(static_cast<long double>(d), 0.62L); }
  long double f_bound(int d) const { return 12.0L * slack_ * std::pow(static_cast<long double>(d), 0.24L); }

private:
  int cap(int d, std::uint64_t coeff, unsigned num, std::map<int, int>& cache) const {
    if (unbounded_) return d;
    if (auto it = cache.find(d); it != cache.end()) return it->second;
    auto ok = [&](int x) {
      return le_scaled_power(static_cast<std::uint64_t>(x), coeff, dyadic_, static_cast<std::uint64_t>(d), num);
    };
    int lo = 0, hi = d;  // ok(0) always holds; counts never exceed d
    if (ok(hi)) lo = hi;
    while (lo < hi) {
      int mid = lo + (hi - lo + 1) / 2;
      if (ok(mid)) lo = mid; else hi = mid - 1;
    }
    cache.emplace(d, lo);
    return lo;
  }

  double slack_;
  bool unbounded_ = false;
  Dyadic dyadic_;
  mutable std::map<int, int> abc_cache_;
  mutable std::map<int, int> f_cache_;
};

struct VertexBounds {
  Vertex vertex;
  int degree;
  int a, b, c, f;
  int abc_cap, f_cap;
  bool a_ok, b_ok, c_ok, f_ok;
  bool degree_one_endpoint;  // some gated edge at v joins two degree-1 vertices
};

struct BoundsReport {
  bool all_hold = true;
  std::vector<VertexBounds> vertices;

  std::vector<Vertex> flagged() const {
    std::vector<Vertex> out;
    for (const auto& vb : vertices)
      if (!(vb.a_ok && vb.b_ok && vb.c_ok && vb.f_ok)) out.push_back(vb.vertex);
    return out;
  }
};

inline BoundsReport bounds_hold(const Graph& g, const RiskyClassification& cls, double slack) {
  ClaimCaps caps(slack);
  BoundsReport rep;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    VertexBounds vb{};
    vb.vertex = v;
    vb.degree = g.degree(v);
    for (const auto& inc : g.incident(v)) {
      auto fl = cls.flags(inc.edge);
      vb.a += fl & 1;
      vb.b += (fl >> 1) & 1;
      vb.c += (fl >> 2) & 1;
      vb.f += (fl & 6) == 6;
      if (cls.gated(inc.edge) && vb.degree == 1 && g.degree(inc.neighbour) == 1) vb.degree_one_endpoint = true;
    }
    vb.abc_cap = caps.abc(vb.degree);
    vb.f_cap = caps.f(vb.degree);
    vb.a_ok = vb.a <= vb.abc_cap;
    vb.b_ok = vb.b <= vb.abc_cap;
    vb.c_ok = vb.c <= vb.abc_cap;
    vb.f_ok = vb.f <= vb.f_cap;
    rep.all_hold = rep.all_hold && vb.a_ok && vb.b_ok && vb.c_ok && vb.f_ok;
    rep.vertices.push_back(vb);
  }
  return rep;
}

}  // namespace irrdec
