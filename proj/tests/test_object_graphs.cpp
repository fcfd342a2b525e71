#include "doctest.h"
#include "leighton/errors.hpp"
#include "leighton/object_graphs.hpp"
#include "leighton/star_system.hpp"

using namespace leighton;

namespace {

// One vertex with a loop; vertex and edge objects are directed 3-cycles.
// The loop's reverse dart is attached through a rotation by `twist`.
ObjectGraphPtr twisted_loop(int twist) {
  auto x = std::make_shared<ObjectGraph>();
  x->graph = rose(1);
  FiniteObject c3 = cycle_object(3);
  x->vertex_object = {c3};
  x->edge_object = {c3, c3};
  int plus = x->graph->dart_index("e0+");
  x->edge_map.assign(2, identity_map(c3));
  x->edge_map[x->graph->reverse(plus)] = rotation(3, twist);
  return x;
}

// Star map from the loop vertex of the first graph to that of the second,
// with edge morphisms rotations by `a` on the loop and `c` on its reverse.
StarMap loop_seed(int a, int c) {
  return StarMap{0, 1, {2, 3}, {rotation(3, a), rotation(3, c)}, std::nullopt};
}

}  // namespace

TEST_CASE("object morphisms compose and invert") {
  FiniteObject c3 = cycle_object(3);
  ObjMap r = rotation(3, 1);
  CHECK(is_b_morphism(c3, c3, r));
  CHECK(compose(r, compose(r, r)) == identity_map(c3));
  CHECK(compose(inverse(r), r) == identity_map(c3));
  ObjMap reflection{{0, 2, 1}, {2, 1, 0}};
  CHECK_FALSE(is_a_morphism(c3, c3, reflection));
  FiniteObject point{{""}, {}};
  CHECK(is_a_morphism(c3, FiniteObject{{""}, {{0, 0, ""}}}, ObjMap{{0, 0, 0}, {0, 0, 0}}));
  CHECK_FALSE(is_b_morphism(c3, FiniteObject{{""}, {{0, 0, ""}}}, ObjMap{{0, 0, 0}, {0, 0, 0}}));
  CHECK(is_b_morphism(point, point, identity_map(point)));
}

TEST_CASE("object graph validation") {
  CHECK(validate_object_graph(*twisted_loop(1)).ok);
  CHECK(validate_object_graph(*trivial_objects(cycle(4))).ok);
  auto bad = std::make_shared<ObjectGraph>(*twisted_loop(0));
  bad->edge_object[1] = cycle_object(4);
  bad->edge_map[1] = rotation(4, 0);
  auto r = validate_object_graph(*bad);
  CHECK_FALSE(r.ok);
  CHECK(r.violations.front().find("differs from that of its reverse") != std::string::npos);
  auto bad2 = std::make_shared<ObjectGraph>(*twisted_loop(0));
  bad2->edge_map[0] = ObjMap{{0, 2, 1}, {2, 1, 0}};
  CHECK_FALSE(validate_object_graph(*bad2).ok);
}

TEST_CASE("identity seeds give back the object graph") {
  auto x = twisted_loop(1);
  std::vector<StarMap> seeds{{0, 1, {2, 3}, {rotation(3, 0), rotation(3, 0)}, std::nullopt}};
  ObjectSystem s = close_star_maps(x, x, seeds);
  REQUIRE(s.local.axioms.all());
  CHECK(s.groupoid.size() == 4);
  CHECK(s.local.out_size[0] == 2);
  CHECK(s.local.orbit_size[0] == 2);
  ObjectCover oc = build_object_cover(s);
  CHECK(oc.cover.degree1 == 1);
  CHECK(oc.cover.degree2 == 1);
  CHECK(isomorphic(oc.w->graph, rose(1)));
  CHECK(verify_object_covering(oc.mu1).ok);
  CHECK(verify_object_covering(oc.mu2).ok);
  CHECK(verify_object_covering(identity_object_morphism(x)).ok);
}

TEST_CASE("rotation holonomy forces a threefold cover") {
  auto x1 = twisted_loop(0);
  auto x2 = twisted_loop(1);
  // A compatible vertex map needs c = a - 1 (mod 3).
  std::vector<StarMap> seeds{loop_seed(0, 2), loop_seed(1, 0)};
  ObjectSystem s = close_star_maps(x1, x2, seeds);
  REQUIRE(s.local.axioms.all());
  CHECK(s.local.out_size[0] == 6);
  CHECK(s.local.orbit_size[0] == 6);
  CHECK(s.isotropy[0] == 3);
  CHECK(verify_groupoid(s.groupoid).ok);
  ObjectCover oc = build_object_cover(s);
  CHECK(oc.cover.N == 6);
  CHECK(oc.w->graph->num_vertices() == 3);
  CHECK(isomorphic(oc.w->graph, cycle(3)));
  CHECK(oc.cover.degree1 == 3);
  CHECK(oc.cover.degree2 == 3);
  CHECK(verify_object_covering(oc.mu2).ok);

  SUBCASE("a single seed is insufficient") {
    ObjectSystem one = close_star_maps(x1, x2, {loop_seed(0, 2)});
    CHECK(one.groupoid.size() == 4);
    CHECK(3 % one.isotropy[0] == 0);
    CHECK_FALSE(one.local.axioms.bar_closure);
    CHECK(one.local.axioms.failure.rfind("insufficient seeds", 0) == 0);
    CHECK_THROWS_AS(build_object_cover(one), AxiomError);
  }
  SUBCASE("a broken edge morphism names the failing square") {
    ObjectMorphism m = oc.mu2;
    const Graph& g = *oc.w->graph;
    m.edge[0] = compose(rotation(3, 1), m.edge[0]);
    m.edge[g.reverse(0)] = m.edge[0];
    auto v = verify_object_covering(m);
    CHECK_FALSE(v.ok);
    CHECK(v.failure.find("square") != std::string::npos);
  }
}

TEST_CASE("a seed without a compatible vertex morphism is rejected") {
  auto x = std::make_shared<ObjectGraph>();
  x->graph = rose(1);
  FiniteObject pair{{"p", "p"}, {}};
  x->vertex_object = {pair};
  x->edge_object = {pair, pair};
  x->edge_map.assign(2, identity_map(pair));
  ObjMap swap{{1, 0}, {}};
  StarMap seed{0, 1, {2, 3}, {swap, identity_map(pair)}, std::nullopt};
  try {
    close_star_maps(x, x, {seed});
    FAIL("seed accepted");
  } catch (const InputError& e) {
    std::string msg = e.what();
    CHECK(msg.find("rejected") != std::string::npos);
    CHECK(msg.find("square at dart 1:e0-") != std::string::npos);
  }
  seed.edge = {swap, swap};
  seed.vertex = identity_map(pair);
  CHECK_THROWS_WITH_AS(close_star_maps(x, x, {seed}),
                       doctest::Contains("square at dart 1:e0+ fails on vertex 0"), InputError);
  seed.vertex.reset();
  ObjectSystem ok = close_star_maps(x, x, {seed});
  CHECK(*ok.seeds[0].vertex == swap);
}

TEST_CASE("full seeds on trivial objects reproduce the star backend") {
  for (auto [a, b] : {std::pair{cycle(3), cycle(4)}, std::pair{complete(4), theta(3)}}) {
    auto x1 = trivial_objects(a);
    auto x2 = trivial_objects(b);
    ObjectSystem s = close_star_maps(x1, x2, full_trivial_seeds(x1, x2));
    REQUIRE(s.local.axioms.all());
    StarSystem star = build_star_system(a, b, StarStrategy::dr_full);
    CHECK(s.groupoid.size() == star.groupoid.size());
    ObjectCover oc = build_object_cover(s);
    BuiltCover sc = build_cover(star.local);
    CHECK(*oc.cover.graph == *sc.graph);
    CHECK(oc.cover.degree1 == sc.degree1);
    CHECK(oc.cover.degree2 == sc.degree2);
    for (int v = 0; v < s.uni->graph->num_vertices(); ++v) {
      std::int64_t loops = 0;
      for (int g : s.groupoid.out(v)) loops += s.groupoid.target(g) == v;
      CHECK(loops >= 1);
    }
  }
}
