#include <catch_amalgamated.hpp>

#include <random>

#include "irrdec/factor.hpp"
#include "irrdec/generators.hpp"

using namespace irrdec;

namespace {

ModularTargetSpec uniform_spec(const Graph& g, std::int64_t t, std::int64_t lambda) {
  return {std::vector<std::int64_t>(static_cast<std::size_t>(g.vertex_count()), t),
          std::vector<std::int64_t>(static_cast<std::size_t>(g.vertex_count()), lambda)};
}

// Every subset of edges, straight from the definition.
bool brute_force_feasible(const Graph& g, const DegreeTargetSpec& spec) {
  const int m = g.edge_count();
  for (std::uint32_t bits = 0; bits < (1u << m); ++bits) {
    std::vector<int> deg(static_cast<std::size_t>(g.vertex_count()), 0);
    for (int e = 0; e < m; ++e)
      if (bits >> e & 1) {
        ++deg[g.edge(e).u];
        ++deg[g.edge(e).v];
      }
    bool ok = true;
    for (Vertex v = 0; v < g.vertex_count() && ok; ++v)
      ok = std::binary_search(spec.allowed[v].begin(), spec.allowed[v].end(), deg[v]);
    if (ok) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("choose_window_targets examples") {
  auto k13 = complete_graph(13);
  auto p = choose_window_targets(k13, uniform_spec(k13, 0, 2));
  REQUIRE(p[0] == std::pair{6, 6});
  auto k7 = complete_graph(7);
  REQUIRE(choose_window_targets(k7, uniform_spec(k7, 0, 1))[0] == std::pair{3, 3});
  auto k61 = complete_graph(61);
  REQUIRE(choose_window_targets(k61, uniform_spec(k61, 7, 10))[0] == std::pair{27, 37});
  REQUIRE(choose_window_targets(k61, uniform_spec(k61, -3, 10))[0] == std::pair{27, 37});
  REQUIRE_THROWS_AS(choose_window_targets(k7, uniform_spec(k7, 0, 2)), PreconditionError);
}

TEST_CASE("window cardinality for all d up to 10^6") {
  for (std::int64_t d = 6; d <= 1'000'000; ++d) {
    const std::int64_t lam = d / 6;  // the largest lambda allowed; smaller ones follow
    REQUIRE(d / 2 - d / 3 >= lam);
    REQUIRE(2 * d / 3 - d / 2 >= lam);
  }
}

TEST_CASE("degree set subgraph examples") {
  for (auto mode : {SolverMode::Exact, SolverMode::Heuristic}) {
    SolveOptions opt{mode, 100000, 1};
    auto g = random_regular_graph(16, 5, 2);
    std::vector<std::vector<int>> full, none;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
      full.push_back({g.degree(v)});
      none.push_back({0});
    }
    auto r = find_degree_set_subgraph(g, DegreeTargetSpec::explicit_sets(full), opt);
    REQUIRE(r.found());
    REQUIRE(mask_size(*r.subgraph) == g.edge_count());
    r = find_degree_set_subgraph(g, DegreeTargetSpec::explicit_sets(none), opt);
    REQUIRE(r.found());
    REQUIRE(mask_size(*r.subgraph) == 0);

    auto c4 = cycle_graph(4);
    r = find_degree_set_subgraph(c4, DegreeTargetSpec::explicit_sets({{1}, {1}, {1}, {1}}), opt);
    REQUIRE(r.found());
    REQUIRE(mask_size(*r.subgraph) == 2);
    REQUIRE(verify_factor(c4, *r.subgraph, DegreeTargetSpec::explicit_sets({{1}, {1}, {1}, {1}})).ok);
  }
  auto tri = cycle_graph(3);
  auto r = find_degree_set_subgraph(tri, DegreeTargetSpec::explicit_sets({{1}, {1}, {1}}));
  REQUIRE_FALSE(r.found());
  REQUIRE(r.failure == FactorFailure::SearchExhausted);
  REQUIRE_THROWS(find_degree_set_subgraph(tri, DegreeTargetSpec::explicit_sets({{3}, {1}, {1}})));
  REQUIRE_THROWS(find_degree_set_subgraph(tri, DegreeTargetSpec::explicit_sets({{}, {1}, {1}})));
}

TEST_CASE("heuristic budget exhaustion") {
  auto g = complete_graph(9);
  auto spec = DegreeTargetSpec::from_pairs(g, choose_window_targets(g, uniform_spec(g, 1, 1)));
  auto r = find_degree_set_subgraph(g, spec, {SolverMode::Heuristic, 0, 3});
  REQUIRE_FALSE(r.found());
  REQUIRE(r.failure == FactorFailure::BudgetExhausted);
  auto tri = cycle_graph(3);
  r = find_degree_set_subgraph(tri, DegreeTargetSpec::explicit_sets({{1}, {1}, {1}}), {SolverMode::Heuristic, 5000, 1});
  REQUIRE(r.failure == FactorFailure::BudgetExhausted);
}

TEST_CASE("exact mode agrees with brute force enumeration") {
  std::mt19937_64 rng(99);
  int feasible = 0, infeasible = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 4 + static_cast<int>(rng() % 9);
    auto g = gnp_graph(n, 0.2 + 0.4 * (rng() % 100) / 100.0, rng());
    if (g.edge_count() > 18) continue;
    std::vector<std::vector<int>> sets;
    for (Vertex v = 0; v < n; ++v) {
      std::vector<int> s;
      for (int x = 0; x <= g.degree(v); ++x)
        if (rng() % 3 == 0) s.push_back(x);
      if (s.empty()) s.push_back(static_cast<int>(rng() % (g.degree(v) + 1)));
      sets.push_back(s);
    }
    auto spec = DegreeTargetSpec::explicit_sets(sets);
    const bool truth = brute_force_feasible(g, spec);
    auto r = find_degree_set_subgraph(g, spec);
    REQUIRE(r.found() == truth);
    if (r.found()) {
      REQUIRE(verify_factor(g, *r.subgraph, spec).ok);
      ++feasible;
      auto h = find_degree_set_subgraph(g, spec, {SolverMode::Heuristic, 200000, static_cast<std::uint64_t>(trial)});
      if (h.found()) REQUIRE(verify_factor(g, *h.subgraph, spec).ok);
    } else {
      ++infeasible;
    }
  }
  REQUIRE(feasible > 20);
  REQUIRE(infeasible > 20);
}

TEST_CASE("theorem windows never fail in exact mode") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 8 + static_cast<int>(rng() % 17);
    auto g = gnp_graph(n, 0.3 + 0.6 * (rng() % 100) / 100.0, rng());
    std::vector<std::pair<int, int>> pairs;
    for (Vertex v = 0; v < n; ++v) {
      const int d = g.degree(v);
      // any a- in [d/3 - 1, d/2] and a+ in [d/2 - 1, 2d/3]
      std::vector<int> lo, hi;
      for (int x = 0; x <= d; ++x) {
        if (3 * x >= d - 3 && 2 * x <= d) lo.push_back(x);
        if (2 * x >= d - 2 && 3 * x <= 2 * d) hi.push_back(x);
      }
      pairs.emplace_back(lo[rng() % lo.size()], hi[rng() % hi.size()]);
    }
    auto spec = DegreeTargetSpec::from_pairs(g, pairs);
    auto r = find_degree_set_subgraph(g, spec);
    INFO("trial " << trial);
    REQUIRE(r.found());
    REQUIRE(verify_factor(g, *r.subgraph, spec).ok);
  }
}

TEST_CASE("modular subgraph examples") {
  auto k8 = complete_graph(8);
  auto r = find_modular_subgraph(k8, uniform_spec(k8, 0, 1));
  REQUIRE(r.found());
  for (int x : masked_degrees(k8, *r.subgraph)) {
    REQUIRE(x >= 3);
    REQUIRE(x <= 4);
  }
  REQUIRE_THROWS_AS(find_modular_subgraph(cycle_graph(7), uniform_spec(cycle_graph(7), 0, 1)), PreconditionError);
  try {
    auto c = cycle_graph(5);
    find_modular_subgraph(c, uniform_spec(c, 0, 1));
  } catch (const PreconditionError& e) {
    REQUIRE(e.vertices.size() == 5);
  }

  auto k13 = complete_graph(13);
  auto spec = uniform_spec(k13, 1, 2);
  r = find_modular_subgraph(k13, spec);
  REQUIRE(r.found());
  REQUIRE(verify_factor(k13, *r.subgraph, spec).ok);
  for (int x : masked_degrees(k13, *r.subgraph)) {
    REQUIRE(3 * x >= 12);
    REQUIRE(3 * x <= 24);
  }
}

TEST_CASE("random modular instances") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 13 + static_cast<int>(rng() % 12);
    auto g = gnp_graph(n, 0.75, rng());
    if (g.min_degree() < 6) continue;
    ModularTargetSpec spec;
    for (Vertex v = 0; v < n; ++v) {
      spec.lambda.push_back(1 + static_cast<std::int64_t>(rng() % (g.degree(v) / 6)));
      spec.t.push_back(static_cast<std::int64_t>(rng() % 50) - 25);
    }
    for (auto mode : {SolverMode::Exact, SolverMode::Heuristic}) {
      auto r = find_modular_subgraph(g, spec, {mode, 500000, static_cast<std::uint64_t>(trial)});
      REQUIRE(r.found());
      REQUIRE(verify_factor(g, *r.subgraph, spec).ok);
      REQUIRE(subgraph(g, *r.subgraph).vertex_count() == n);
    }
  }
}

TEST_CASE("verify_factor") {
  auto g = complete_graph(6);
  std::vector<std::vector<int>> full;
  for (Vertex v = 0; v < 6; ++v) full.push_back({5});
  REQUIRE(verify_factor(g, g, DegreeTargetSpec::explicit_sets(full)).ok);
  auto k2 = path_graph(1);
  auto v = verify_factor(k2, empty_mask(k2), DegreeTargetSpec::explicit_sets({{1}, {1}}));
  REQUIRE_FALSE(v.ok);
  REQUIRE(v.failures.size() == 2);
  REQUIRE_THROWS(verify_factor(path_graph(2), complete_graph(3), DegreeTargetSpec::explicit_sets({{0}, {0}, {0}})));
}

TEST_CASE("target set construction checks") {
  auto g = complete_graph(7);
  REQUIRE_THROWS_AS(DegreeTargetSpec::from_pairs(g, std::vector<std::pair<int, int>>(7, {0, 3})), PreconditionError);
  REQUIRE_NOTHROW(DegreeTargetSpec::from_pairs(g, std::vector<std::pair<int, int>>(7, {2, 4})));
  auto s = DegreeTargetSpec::explicit_sets({{3, 1, 3}});
  REQUIRE(s.allowed[0] == std::vector<int>{1, 3});
  REQUIRE(distance_to_set(5, {1, 3, 9}) == 2);
  REQUIRE(distance_to_set(0, {1, 3, 9}) == 1);
  REQUIRE(mod_floor(-7, 5) == 3);
}
