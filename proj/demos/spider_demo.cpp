// Walks through the small cases: the spider needs three parts, exceptions need
// more than any k, and the three-part construction on a star and a dense graph.
#include <cstdio>

#include "irrdec/irrdec.hpp"

using namespace irrdec;

static void show(const char* name, const Graph& g) {
  auto r = min_parts(g, 4);
  std::printf("%-14s n=%-3d m=%-3d exception=%-8s ", name, g.vertex_count(), g.edge_count(),
              to_string(recognize_exception(g)));
  if (!r.feasible_k) {
    std::printf("no decomposition (searched %lld nodes)\n", r.nodes_explored);
    return;
  }
  std::printf("k=%d  colours:", *r.feasible_k);
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    std::printf(" %d-%d:%d", g.edge(e).u, g.edge(e).v, r.witness->colour(e));
  std::printf("\n");
}

int main() {
  show("spider(2)", spider_graph(2));
  show("path(2)", path_graph(2));
  show("path(3)", path_graph(3));
  show("cycle(4)", cycle_graph(4));
  show("cycle(5)", cycle_graph(5));
  show("triangle+P2", t_family_graph({{0, 2, false}}));
  show("K5", complete_graph(5));

  for (const auto& [name, g] : {std::pair{"star(30)", star_graph(30)}, std::pair{"complete(40)", complete_graph(40)}}) {
    PipelineConfig cfg;
    cfg.seed = 2;
    cfg.solver_mode = SolverMode::Exact;
    cfg.slack = 3;
    auto r = decompose3(g, cfg);
    std::printf("\nconstruction on %s:\n", name);
    for (const auto& s : r.trace.stages)
      std::printf("  %-9s edges=%-5d relaxed=%zu %s\n", s.stage.c_str(), s.edges, s.relaxed_vertices.size(),
                  s.note.c_str());
    if (r.success())
      std::printf("  three locally irregular parts, checker says %s\n",
                  is_locally_irregular_decomposition(*r.decomposition) ? "valid" : "INVALID");
    else
      std::printf("  stopped: %s at %s (%s)\n", to_string(r.diagnostic->kind), r.diagnostic->stage.c_str(),
                  r.diagnostic->message.c_str());
  }
}
