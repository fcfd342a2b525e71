#include <set>

#include "doctest.h"
#include "leighton/cover_builder.hpp"
#include "leighton/errors.hpp"
#include "leighton/star_system.hpp"

using namespace leighton;

namespace {

GraphPtr coloured_cycle(int n, const std::set<int>& red) {
  GraphBuilder gb;
  for (int i = 0; i < n; ++i)
    gb.add_vertex("v" + padded(i, n), red.count(i) ? Colour("red") : Colour("blue"));
  for (int k = 0; k < n; ++k) {
    std::string e = "e" + padded(k, n);
    gb.add_edge(e + "+", e + "-", "v" + padded(k, n), "v" + padded((k + 1) % n, n));
  }
  return gb.build();
}

void check_cover(const BuiltCover& bc, const LocalSystem& sys) {
  REQUIRE(is_covering(bc.mu1).ok);
  REQUIRE(is_covering(bc.mu2).ok);
  CHECK(is_connected(*bc.graph));
  const Graph& g = *bc.graph;
  for (int d = 0; d < g.num_darts(); ++d) {
    const auto& l = bc.dart_label[d];
    const auto& r = bc.dart_label[g.reverse(d)];
    CHECK(r.atom == sys.atoms[l.atom].bar);
    CHECK(r.k == l.k);
  }
  for (const auto& v : bc.vertex_label) {
    std::int64_t out = sys.out_size[sys.arrows[v.arrow].x];
    CHECK(v.j >= 1);
    CHECK(BigInt(v.j) <= bc.N / out);
  }
}

}  // namespace

TEST_CASE("dr_full on two cycles") {
  auto s = build_star_system(cycle(3), cycle(4), StarStrategy::dr_full);
  // 7 objects in one block, two star bijections between any two of them.
  CHECK(s.groupoid.size() == 7 * 7 * 2);
  CHECK(s.orbits.size() == 1);
  CHECK(s.orbits[0].size() == 14);
  CHECK(s.local.axioms.all());
  CHECK(check_local_system(s.local).empty());
  CHECK(s.local.arrows.size() == 24);

  BuildOptions all;
  all.component = ComponentChoice::all;
  auto full = build_cover(s.local, all);
  CHECK(full.N == 14);
  CHECK(full.total_vertices == 24);
  CHECK(full.graph->num_vertices() == 24);

  auto bc = build_cover(s.local);
  CHECK(bc.graph->num_vertices() == 12);
  CHECK(bc.degree1 == 4);
  CHECK(bc.degree2 == 3);
  CHECK(isomorphic(bc.graph, cycle(12)));
  check_cover(bc, s.local);
}

TEST_CASE("dr_full on K4 and theta") {
  auto s = build_star_system(complete(4), theta(3), StarStrategy::dr_full);
  CHECK(s.groupoid.size() == 6 * 6 * 6);
  CHECK(s.local.axioms.all());
  auto bc = build_cover(s.local);
  check_cover(bc, s.local);
  CHECK(bc.graph->num_vertices() % 4 == 0);
}

TEST_CASE("theta generated systems") {
  SUBCASE("identity alignment gives the graph back") {
    for (auto g : {complete(4), cycle(5), theta(3)}) {
      auto s = build_star_system(g, g, StarStrategy::theta_generated, default_radius(g, g));
      REQUIRE(s.local.axioms.all());
      CHECK(s.transition_failure.empty());
      auto bc = build_cover(s.local);
      CHECK(bc.degree1 == 1);
      CHECK(bc.degree2 == 1);
      CHECK(isomorphic(bc.graph, g));
    }
  }
  SUBCASE("radius zero sees one atom and fails coverage") {
    auto s = build_star_system(cycle(3), cycle(4), StarStrategy::theta_generated, 0);
    CHECK(s.atoms.size() == 1);
    CHECK_FALSE(s.local.axioms.coverage);
    CHECK_THROWS_WITH_AS(require_axioms(s.local), doctest::Contains("closure axioms unmet at radius 0"),
                         AxiomError);
    CHECK_THROWS_AS(build_cover(s.local), AxiomError);
  }
  SUBCASE("C3 against itself at radius 1 has all three atoms") {
    auto s = build_star_system(cycle(3), cycle(3), StarStrategy::theta_generated, 1);
    CHECK(s.atoms.size() == 3);
  }
  SUBCASE("atom sets grow with the radius") {
    std::set<std::string> prev;
    for (int rho = 0; rho <= 6; ++rho) {
      auto s = build_star_system(complete(4), theta(3), StarStrategy::theta_generated, rho);
      std::set<std::string> cur;
      for (const auto& a : s.atoms) cur.insert(star_key(a));
      for (const auto& k : prev) CHECK(cur.count(k) == 1);
      prev = cur;
    }
  }
  SUBCASE("auto radius on mixed pairs") {
    std::vector<std::pair<GraphPtr, GraphPtr>> pairs{{cycle(3), cycle(4)}, {complete(4), theta(3)},
                                                     {complete_bipartite(3, 3), complete(4)}};
    for (auto& [a, b] : pairs) {
      auto s = build_star_system_auto(a, b, StarStrategy::theta_generated, default_radius(a, b));
      CHECK(s.transition_failure.empty());
      auto bc = build_cover(s.local);
      check_cover(bc, s.local);
    }
  }
}

TEST_CASE("colours are respected") {
  auto g1 = coloured_cycle(6, {0, 3});
  auto g2 = coloured_cycle(3, {0});
  for (auto strat : {StarStrategy::dr_full, StarStrategy::theta_generated}) {
    auto s = build_star_system_auto(g1, g2, strat, default_radius(g1, g2));
    const Graph& u = *s.uni;
    for (int i = 0; i < s.groupoid.size(); ++i) {
      const auto& a = s.groupoid.arrow(i);
      CHECK(u.vertex_colour(a.source) == u.vertex_colour(a.target));
    }
    auto bc = build_cover(s.local);
    check_cover(bc, s.local);
    CHECK(bc.graph->num_vertices() == 6);
  }
}

TEST_CASE("incompatible pairs are rejected") {
  CHECK_THROWS_WITH_AS(build_star_system(cycle(3), complete(4), StarStrategy::dr_full),
                       doctest::Contains("no common universal cover"), InputError);
}
