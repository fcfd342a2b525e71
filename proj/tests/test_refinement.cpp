#include <algorithm>

#include "doctest.h"
#include "leighton/errors.hpp"
#include "leighton/refinement.hpp"

using namespace leighton;

namespace {

GraphPtr c6_with_red_vertex() {
  GraphBuilder b;
  for (int i = 0; i < 6; ++i)
    b.add_vertex("v" + std::to_string(i), i == 0 ? Colour("red") : std::nullopt);
  for (int i = 0; i < 6; ++i)
    b.add_edge("e" + std::to_string(i) + "+", "e" + std::to_string(i) + "-",
               "v" + std::to_string(i), "v" + std::to_string((i + 1) % 6));
  return b.build();
}

// Merging two same-colour blocks must break equitability.
void check_coarsest(const Partition& p) {
  for (int a = 0; a < p.num_blocks; ++a)
    for (int b = a + 1; b < p.num_blocks; ++b) {
      int va = p.members(a).front(), vb = p.members(b).front();
      auto colour = [&](int global) {
        int k = global >= p.offset.back() ? static_cast<int>(p.offset.size()) - 1 : 0;
        for (int i = 0; i < static_cast<int>(p.offset.size()); ++i)
          if (global >= p.offset[i]) k = i;
        return p.graphs[k]->vertex_colour(global - p.offset[k]);
      };
      if (colour(va) != colour(vb)) continue;
      Partition merged = p;
      for (int& x : merged.block)
        if (x == b) x = a;
      // compact numbering
      for (int& x : merged.block)
        if (x > b) --x;
      merged.num_blocks = p.num_blocks - 1;
      CHECK_FALSE(is_equitable(merged));
    }
}

}  // namespace

TEST_CASE("degree refinement examples") {
  auto p3 = degree_refinement(path(3));
  CHECK(p3.num_blocks == 2);
  CHECK(p3.block[0] == p3.block[2]);
  CHECK(p3.block[0] != p3.block[1]);
  // endpoints see one middle vertex, the middle sees two endpoints
  CHECK(p3.counts[p3.block[0]][p3.block[1]] == 1);
  CHECK(p3.counts[p3.block[1]][p3.block[0]] == 2);

  CHECK(degree_refinement(complete(4)).num_blocks == 1);

  auto c6 = degree_refinement(c6_with_red_vertex());
  auto sizes = c6.block_sizes();
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<int>{1, 1, 2, 2});
  // blocks are distance classes from the red vertex
  CHECK(c6.block[1] == c6.block[5]);
  CHECK(c6.block[2] == c6.block[4]);
  CHECK(c6.block[3] != c6.block[0]);
}

TEST_CASE("refinement is equitable, coarsest and idempotent") {
  for (auto g : {path(3), path(6), complete(4), c6_with_red_vertex(), theta(3),
                 graph_from_edges(5, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}, {4, 4}})}) {
    auto p = degree_refinement(g);
    CHECK(is_equitable(p));
    auto again = refine_once(p);
    CHECK(again.block == p.block);
    CHECK(again.counts == p.counts);
    check_coarsest(p);
  }
}

TEST_CASE("disconnected input is rejected") {
  auto two = graph_from_edges(4, {{0, 1}, {2, 3}});
  CHECK_THROWS_AS(degree_refinement(two), InputError);
  CHECK_THROWS_AS(common_cover_exists(two, cycle(3)), InputError);
}

TEST_CASE("common universal cover decision") {
  auto kt = common_cover_exists(complete(4), theta(3));
  CHECK(kt.exists);
  CHECK(kt.blocks.size() == 1);
  CHECK_FALSE(common_cover_exists(cycle(3), complete(4)).exists);
  CHECK(common_cover_exists(cycle(3), cycle(4)).exists);
  // a path and a cycle: degree-1 vertices have no partner
  CHECK_FALSE(common_cover_exists(path(3), cycle(3)).exists);
  // P4 covers P2 in the dart sense? No: P4 has degree-2 vertices.
  CHECK_FALSE(common_cover_exists(path(4), path(2)).exists);
  CHECK(common_cover_exists(path(3), path(3)).exists);
  CHECK_THROWS_AS(require_common_cover(cycle(3), complete(4)), InputError);
}
