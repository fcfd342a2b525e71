#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "leighton/errors.hpp"
#include "leighton/graph.hpp"

using namespace leighton;

TEST_CASE("validate_graph accepts fixtures and reports broken reversals") {
  CHECK(validate_graph(*cycle(3)).ok);

  GraphBuilder fixed;
  fixed.add_vertex("v");
  fixed.add_dart("h", "h", "v");
  auto r = validate_graph(*fixed.build());
  REQUIRE_FALSE(r.ok);
  CHECK(r.violations[0].find("fixed point of reversal") != std::string::npos);

  GraphBuilder broken;
  broken.add_vertex("v");
  broken.add_dart("a", "b", "v");
  broken.add_dart("b", "c", "v");
  broken.add_dart("c", "a", "v");
  r = validate_graph(*broken.build());
  REQUIRE_FALSE(r.ok);
  CHECK(r.violations[0].find("reversal not involutive") != std::string::npos);
}

TEST_CASE("builder rejects unknown and duplicate identifiers") {
  GraphBuilder b;
  b.add_vertex("v");
  b.add_dart("a", "missing", "v");
  CHECK_THROWS_AS(b.build(), InputError);
  GraphBuilder d;
  d.add_vertex("v");
  d.add_vertex("v");
  CHECK_THROWS_AS(d.build(), InputError);
}

TEST_CASE("stars") {
  auto k4 = complete(4);
  for (int v = 0; v < 4; ++v) CHECK(star(*k4, v).size() == 3);
  CHECK(star(*rose(2), 0).size() == 4);
  CHECK(star(*path(3), 1).size() == 2);
  CHECK_THROWS_AS(star(*k4, "nope"), InputError);
  for (auto g : {cycle(5), complete(5), theta(3), rose(3), complete_bipartite(3, 3)}) {
    std::size_t total = 0;
    for (int v = 0; v < g->num_vertices(); ++v) {
      total += g->star(v).size();
      for (std::size_t i = 1; i < g->star(v).size(); ++i)
        CHECK(g->dart_id(g->star(v)[i - 1]) < g->dart_id(g->star(v)[i]));
    }
    CHECK(total == static_cast<std::size_t>(g->num_darts()));
  }
}

TEST_CASE("is_covering") {
  CHECK(is_covering(testing::wrap(12, 3)).ok);
  CHECK(is_covering(identity_morphism(complete(4))).ok);

  // P3 -> R1 folding both darts at the middle vertex onto the same loop dart.
  auto p3 = path(3), r1 = rose(1);
  GraphMorphism fold{p3, r1, {0, 0, 0}, {}};
  // darts of P3: e0+ (v0->v1), e0-, e1+ (v1->v2), e1-
  fold.dmap = {0, 1, 1, 0};
  auto c = is_covering(fold);
  CHECK_FALSE(c.ok);
  bool middle = false;
  for (const auto& f : c.failures)
    if (f.vertex == 1) middle = f.reason == "star map not injective";
  CHECK(middle);

  GraphMorphism bad{p3, r1, {0, 0, 0}, {0, 0, 0, 0}};
  CHECK_THROWS_AS(is_covering(bad), InputError);
}

TEST_CASE("coverings preserve star sizes") {
  auto f = testing::wrap(12, 4);
  REQUIRE(is_covering(f).ok);
  for (int v = 0; v < f.source->num_vertices(); ++v)
    CHECK(f.source->degree(v) == f.target->degree(f.vmap[v]));
}

TEST_CASE("fiber products") {
  auto fp = fiber_product(testing::wrap(3, 1), testing::wrap(4, 1));
  CHECK(fp.graph->num_vertices() == 12);
  CHECK(isomorphic(fp.graph, cycle(12)));
  CHECK(is_covering(fp.proj1).ok);
  CHECK(is_covering(fp.proj2).ok);
  auto m1 = testing::wrap(3, 1), m2 = testing::wrap(4, 1);
  for (int d = 0; d < fp.graph->num_darts(); ++d)
    CHECK(m1.dmap[fp.proj1.dmap[d]] == m2.dmap[fp.proj2.dmap[d]]);

  auto k4 = complete(4);
  auto diag = fiber_product(identity_morphism(k4), identity_morphism(k4));
  CHECK(isomorphic(diag.graph, k4));

  auto self = fiber_product(testing::wrap(3, 1), testing::wrap(3, 1));
  CHECK(self.graph->num_vertices() == 9);
  auto comps = components(*self.graph);
  REQUIRE(comps.size() == 3);
  for (const auto& c : comps) CHECK(isomorphic(induced_subgraph(self.graph, c).graph, cycle(3)));

  GraphMorphism fold{path(3), rose(1), {0, 0, 0}, {0, 1, 1, 0}};
  CHECK_THROWS_AS(fiber_product(fold, fold), InputError);
}

TEST_CASE("isomorphism search") {
  CHECK(isomorphic(complete_bipartite(3, 3), complete_bipartite(3, 3)));
  CHECK_FALSE(isomorphic(cycle(6), complete_bipartite(2, 2)));
  CHECK_FALSE(isomorphic(complete(4), complete_bipartite(2, 2)));
  // K33 and the triangular prism: both 3-regular on 6 vertices
  auto prism = graph_from_edges(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}, {0, 3}, {1, 4}, {2, 5}});
  CHECK_FALSE(isomorphic(prism, complete_bipartite(3, 3)));
  CHECK(diameter(*cycle(7)) == 3);
}
