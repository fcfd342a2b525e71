#include <cstdio>
#include <filesystem>

#include "doctest.h"
#include "fixtures.hpp"
#include "leighton/errors.hpp"
#include "leighton/io.hpp"
#include "leighton/star_system.hpp"

using namespace leighton;

namespace {

std::vector<GraphPtr> all_fixtures() {
  GraphBuilder b;
  b.add_vertex("a", "red");
  b.add_vertex("b");
  b.add_edge("x", "x'", "a", "b", "blue", std::nullopt);
  b.add_edge("l", "l'", "a", "a");
  return {cycle(3), cycle(4), rose(2), theta(3), complete(4), complete_bipartite(3, 3), path(3), b.build()};
}

}  // namespace

TEST_CASE("graph round trip") {
  for (const auto& g : all_fixtures()) {
    Json j = graph_to_json(*g);
    GraphPtr back = graph_from_json(j);
    CHECK(*back == *g);
    CHECK(dump(graph_to_json(*back)) == dump(j));
    CHECK(dump(j).find("\"to\"") == std::string::npos);
  }
}

TEST_CASE("schema errors carry locations") {
  Json j = graph_to_json(*cycle(3));
  Json bad = j;
  bad["darts"][2]["reverse"] = 7;
  CHECK_THROWS_WITH_AS(graph_from_json(bad, "c3.json"), "c3.json: /darts/2/reverse: expected a string",
                       InputError);
  bad = j;
  bad["darts"][1].erase("from");
  CHECK_THROWS_WITH_AS(graph_from_json(bad, "c3.json"), "c3.json: /darts/1: missing member 'from'",
                       InputError);
  bad = j;
  bad["darts"][0]["from"] = "nowhere";
  CHECK_THROWS_AS(graph_from_json(bad, "c3.json"), InputError);
  bad = j;
  bad.erase("vertices");
  CHECK_THROWS_WITH_AS(graph_from_json(bad, "c3.json"), "c3.json: /: missing member 'vertices'",
                       InputError);
}

TEST_CASE("morphism round trip") {
  GraphMorphism f = testing::wrap(12, 3);
  Json j = morphism_to_json(f);
  CHECK(j["vmap"]["v04"] == "v1");
  GraphMorphism back = morphism_from_json(j, f.source, f.target);
  CHECK(back.vmap == f.vmap);
  CHECK(back.dmap == f.dmap);
  Json bad = j;
  bad["dmap"].erase(bad["dmap"].begin().key());
  CHECK_THROWS_AS(morphism_from_json(bad, f.source, f.target), InputError);
  bad = j;
  bad["vmap"]["v00"] = "v9";
  CHECK_THROWS_WITH_AS(morphism_from_json(bad, f.source, f.target, "m"),
                       "m: /vmap/v00: unknown target id 'v9'", InputError);
}

TEST_CASE("object graph round trip") {
  auto x = std::make_shared<ObjectGraph>();
  x->graph = rose(1);
  FiniteObject c3 = cycle_object(3);
  x->vertex_object = {c3};
  x->edge_object = {c3, c3};
  x->edge_map = {identity_map(c3), rotation(3, 1)};
  Json j = object_graph_to_json(*x);
  ObjectGraphPtr back = object_graph_from_json(j);
  CHECK(*back->graph == *x->graph);
  CHECK(back->vertex_object == x->vertex_object);
  CHECK(back->edge_object == x->edge_object);
  CHECK(back->edge_map == x->edge_map);
  CHECK(dump(object_graph_to_json(*back)) == dump(j));

  // Defaults: trivial objects and identity maps.
  ObjectGraphPtr plain = object_graph_from_json(graph_to_json(*cycle(3)));
  CHECK(plain->vertex_object[0].labels.size() == 1);
  CHECK(validate_object_graph(*plain).ok);

  Json bad = j;
  bad["edge_morphisms"]["e0-"] = Json{{"vmap", {0, 2, 1}}, {"amap", {2, 1, 0}}};
  CHECK_THROWS_AS(object_graph_from_json(bad), InputError);
}

TEST_CASE("seed round trip") {
  auto x = object_graph_from_json(graph_to_json(*cycle(3)));
  auto uni = object_union(*x, *x);
  auto seeds = full_trivial_seeds(x, x);
  REQUIRE_FALSE(seeds.empty());
  Json j = seeds_to_json(*uni, seeds);
  auto back = seeds_from_json(j, *uni);
  REQUIRE(back.size() == seeds.size());
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    CHECK(back[i].source == seeds[i].source);
    CHECK(back[i].target == seeds[i].target);
    CHECK(back[i].hat == seeds[i].hat);
    CHECK(back[i].edge == seeds[i].edge);
  }
  Json bad = j;
  bad["seeds"][0]["darts"][0]["to"] = "1:nope";
  CHECK_THROWS_WITH_AS(seeds_from_json(bad, *uni, "s"), "s: /seeds/0/darts/0/to: unknown dart '1:nope'",
                       InputError);
}

TEST_CASE("cover bundle round trip re-verifies") {
  StarSystem s = build_star_system(cycle(3), cycle(4), StarStrategy::dr_full);
  BuiltCover bc = build_cover(s.local);
  Provenance p{"star", {}, {}};
  for (const auto& a : s.local.arrows) p.arrow_text.push_back(a.key);
  for (const auto& a : s.local.atoms) p.atom_text.push_back(a.key);
  Json j = cover_to_json(bc, p);
  CHECK(j["summary"]["vertices"] == 12);
  std::string text = dump(j);
  StoredCover c = stored_cover_from_json(Json::parse(text), cycle(3), cycle(4));
  CHECK(*c.graph == *bc.graph);
  CHECK(is_covering(c.mu1).ok);
  CHECK(is_covering(c.mu2).ok);
  CHECK(dump(cover_to_json(bc, p)) == text);

  auto dir = std::filesystem::temp_directory_path() / "leighton_io_test";
  std::filesystem::create_directories(dir);
  std::string path = (dir / "cover.json").string();
  write_text_file(path, text);
  CHECK(*load_graph(path) == *bc.graph);
  write_text_file(path, "{\"vertices\": [");
  CHECK_THROWS_AS(read_json_file(path), InputError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("dot export") {
  std::string dot = to_dot(*all_fixtures().back(), "g");
  CHECK(dot.rfind("graph \"g\" {\n", 0) == 0);
  CHECK(dot.find("\"a\" [colour=\"red\"];") != std::string::npos);
  CHECK(dot.find("\"a\" -- \"b\" [darts=\"x/x'\", colour=\"blue\"];") != std::string::npos);
  CHECK(dot.find("\"a\" -- \"a\" [darts=\"l/l'\"];") != std::string::npos);
  std::size_t edges = 0;
  for (std::size_t p = dot.find(" -- "); p != std::string::npos; p = dot.find(" -- ", p + 1)) ++edges;
  CHECK(edges == 2);
}
