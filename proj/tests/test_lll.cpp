#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <set>

#include "irrdec/generators.hpp"
#include "irrdec/lll.hpp"

using namespace irrdec;

TEST_CASE("violated_events examples") {
  auto star = star_graph(40);
  REQUIRE(violated_events(star, sample_labels(star, 1), 0.01).empty());

  auto k20 = complete_graph(20);
  auto l = sample_labels(k20, 0);
  std::fill(l.c1.begin(), l.c1.end(), 0);
  std::fill(l.c2.begin(), l.c2.end(), 0);
  auto ev = violated_events(k20, l, 0.01);
  std::set<Vertex> a_violated;
  for (const auto& e : ev)
    if (e.kind == EventKind::A) a_violated.insert(e.vertex);
  REQUIRE(a_violated.size() == 20);
  REQUIRE(std::is_sorted(ev.begin(), ev.end()));
  REQUIRE(violated_events(k20, l, INFINITY).empty());
}

TEST_CASE("event scopes") {
  auto g = spider_graph(2);
  auto gated = gated_edges(g);
  auto sa = event_scope(g, gated, {0, EventKind::A});
  for (const auto& s : sa) REQUIRE(s.index == 0);
  auto sc = event_scope(g, gated, {0, EventKind::C});
  REQUIRE(sc.size() == 2 * sa.size());
  auto k = star_graph(30);
  REQUIRE(event_scope(k, {0, EventKind::F}).size() == 2);
}

TEST_CASE("moser_tardos examples") {
  SECTION("nothing gated: zero rounds") {
    auto g = star_graph(30);
    auto r = moser_tardos(g, 4, 0.001, 10);
    REQUIRE(r.converged);
    REQUIRE(r.rounds == 0);
  }
  SECTION("random regular at slack 3 converges") {
    auto g = random_regular_graph(60, 12, 7);
    auto r = moser_tardos(g, 7, 3.0, 100000);
    REQUIRE(r.converged);
    REQUIRE(violated_events(g, r.labels, 3.0).empty());
    REQUIRE(bounds_hold(g, classify(g, r.labels), 3.0).all_hold);
  }
  SECTION("unsatisfiable slack times out with a trajectory") {
    auto g = complete_graph(10);
    auto r = moser_tardos(g, 1, 0.001, 50);
    REQUIRE_FALSE(r.converged);
    REQUIRE(r.rounds == 50);
    REQUIRE(r.trajectory.size() == 50);
    REQUIRE(r.trajectory.front() > 0);
  }
  SECTION("deterministic given the seed") {
    auto g = random_regular_graph(40, 10, 2);
    auto a = moser_tardos(g, 9, 0.25, 5000), b = moser_tardos(g, 9, 0.25, 5000);
    REQUIRE(a.rounds == b.rounds);
    REQUIRE(a.labels.c1 == b.labels.c1);
    REQUIRE(a.trajectory == b.trajectory);
  }
  REQUIRE_THROWS(moser_tardos(complete_graph(4), 1, 1.0, 0));
  REQUIRE_THROWS(moser_tardos(complete_graph(4), 1, 0.0, 5));
}

TEST_CASE("resampling touches only the selected scope") {
  auto g = random_regular_graph(40, 12, 3);
  LabelPair prev = sample_labels(g, 5);
  int rounds_seen = 0;
  auto r = moser_tardos(g, 5, 0.2, 400, [&](const RoundRecord& rec) {
    ++rounds_seen;
    std::set<Slot> scope(rec.scope.begin(), rec.scope.end());
    for (Vertex v = 0; v < g.vertex_count(); ++v)
      for (int s = 0; s < 2; ++s)
        if (!scope.count({v, s})) REQUIRE(prev.slot(v, s) == rec.labels_after.slot(v, s));
    // the chosen event was the least violated one and its scope is exactly the literal one
    REQUIRE(rec.scope == event_scope(g, rec.event));
    prev = rec.labels_after;
  });
  REQUIRE(rounds_seen == r.rounds);
  REQUIRE(rounds_seen > 0);
}

TEST_CASE("a successful run satisfies the bounds exactly") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto g = gnp_graph(50, 0.4, seed);
    for (double slack : {0.3, 1.0}) {
      auto r = moser_tardos(g, seed, slack, 20000);
      if (!r.converged) continue;
      REQUIRE(bounds_hold(g, classify(g, r.labels), slack).all_hold);
    }
  }
}

TEST_CASE("incremental state matches a fresh evaluation") {
  auto g = random_regular_graph(30, 8, 1);
  std::mt19937_64 rng(2);
  auto labels = sample_labels(g, 2);
  for (int round = 0; round < 50; ++round) {
    RiskState st(g, labels, 0.2);
    auto lam = VertexScale(g).lambda;
    for (int j = 0; j < 5; ++j) {
      Vertex v = static_cast<Vertex>(rng() % 30);
      int s = static_cast<int>(rng() % 2);
      st.set_slot({v, s}, static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(lam[v])));
    }
    st.commit();
    auto fresh = violated_events(g, st.labels(), 0.2);
    REQUIRE(std::vector<BadEvent>(st.violated().begin(), st.violated().end()) == fresh);
    labels = st.labels();
  }
}

TEST_CASE("dependency digraph") {
  SECTION("edgeless") {
    auto dg = build_dependency_digraph(Graph(5, {}));
    REQUIRE(dg.arcs.size() == 20);
    for (int i = 0; i < 20; ++i) {
      REQUIRE(dg.arcs[i].size() == 3);
      for (int j : dg.arcs[i]) REQUIRE(j / 4 == i / 4);
    }
  }
  SECTION("cycle(4)") {
    auto dg = build_dependency_digraph(cycle_graph(4));
    for (int i = 0; i < 16; ++i) REQUIRE(dg.arcs[i].size() == 15);
    REQUIRE(3 + 4 * 2 * floor_beta_times(2) == 99);
  }
  SECTION("star with a big ratio") {
    auto dg = build_dependency_digraph(star_graph(1000));
    for (int i = 0; i < 4; ++i) REQUIRE(dg.arcs[i].size() == 3);
  }
  SECTION("bounds hold on assorted graphs") {
    for (auto g : {random_regular_graph(50, 10, 1), gnp_graph(60, 0.2, 2), spider_graph(4), complete_graph(12)}) {
      auto dg = build_dependency_digraph(g);
      for (Vertex v = 0; v < g.vertex_count(); ++v) {
        const std::uint64_t d = static_cast<std::uint64_t>(g.degree(v));
        for (int k = 0; k < 4; ++k) {
          REQUIRE(dg.arcs[4 * v + k].size() <= 3 + 4 * d * floor_beta_times(d));
          for (int t : dg.arcs[4 * v + k])
            if (t / 4 != v) REQUIRE(within_beta_squared(d, static_cast<std::uint64_t>(g.degree(t / 4))));
        }
      }
    }
  }
}

TEST_CASE("exact risk probabilities") {
  REQUIRE(exact_edge_risk_probability(100, 100, RiskEvent::Type1, {.c1v = 3}) == Rational{1, 8});
  REQUIRE(exact_edge_risk_probability(6, 7, RiskEvent::Type1, {.c1v = 0}) == Rational{1, 2});
  REQUIRE(exact_edge_risk_probability(6, 7, RiskEvent::Type1, {.c1v = 3}) == Rational{1, 2});
  REQUIRE(exact_edge_risk_probability(1, 1, RiskEvent::Type1) == Rational{1, 1});
  REQUIRE_THROWS(exact_edge_risk_probability(1, 100, RiskEvent::Type1));
  REQUIRE_THROWS(exact_edge_risk_probability(100, 100, RiskEvent::Type1, {.c1v = 8}));
  // unconditioned type 1 with equal degrees: 1/lambda
  REQUIRE(exact_edge_risk_probability(40, 40, RiskEvent::Type1) == Rational{1, 8});
  for (std::int64_t d : {2, 10, 50, 100, 240, 600}) {
    auto checks = check_risk_bounds(d, d);
    REQUIRE(checks.size() == 5);
    for (const auto& c : checks) REQUIRE(c.pass);
  }
}

TEST_CASE("probability enumeration agrees with brute force over labels") {
  // independent recount through risk_congruence on full label space
  for (auto [du, dv] : {std::pair<std::int64_t, std::int64_t>{7, 7}, {7, 30}, {30, 40}, {12, 5}}) {
    const int ku = ceil_log_beta(du), kv = ceil_log_beta(dv);
    const std::int64_t lu = 1 << ku, lv = 1 << kv;
    std::uint64_t hit3 = 0, hitf = 0, total = 0;
    for (std::int64_t a = 0; a < lu; ++a)
      for (std::int64_t b = 0; b < lu; ++b)
        for (std::int64_t c = 0; c < lv; ++c)
          for (std::int64_t e = 0; e < lv; ++e) {
            EndpointLabels u{du, ku, a, b}, v{dv, kv, c, e};
            bool t3 = risk_congruence(u, v, RiskType::Three), t2 = risk_congruence(u, v, RiskType::Two);
            hit3 += t3;
            hitf += t3 && t2;
            ++total;
          }
    REQUIRE(exact_edge_risk_probability(du, dv, RiskEvent::Type3) == Rational::make(hit3, total));
    REQUIRE(exact_edge_risk_probability(du, dv, RiskEvent::Type2and3) == Rational::make(hitf, total));
  }
}

TEST_CASE("chernoff bound and exact tails") {
  REQUIRE(binomial_deviation_tail(4, 0.5, 2) == 0.0L);
  REQUIRE(chernoff_bound(4, 0.5, 2) == Catch::Approx(2 * std::exp(-2.0 / 3.0)));
  REQUIRE(binomial_deviation_tail(20, 0.3, 5) <= 2 * std::exp(-25.0 / 18.0));
  REQUIRE(chernoff_bound(20, 0.3, 5) == Catch::Approx(2 * std::exp(-25.0 / 18.0)));
  REQUIRE(chernoff_bound(10, 0.5, 0) == 2.0);
  REQUIRE_THROWS(chernoff_bound(10, 0.5, 6));
  REQUIRE_THROWS(chernoff_bound(10, 0.5, -1));
  for (int n = 1; n <= 25; ++n)
    for (double p : {0.1, 0.3, 0.5, 0.9})
      for (double t = 0; t <= n * p; t += 0.5) REQUIRE(binomial_deviation_tail(n, p, t) <= chernoff_bound(n, p, t) + 1e-12);
}
