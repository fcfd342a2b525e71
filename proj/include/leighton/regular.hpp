#pragma once

#include <optional>
#include <vector>

#include "leighton/graph.hpp"

namespace leighton {

struct Factorization {
  int degree = 0;
  bool odd = false;
  GraphPtr cover;                        // the input graph, or its bipartite double cover
  std::optional<GraphMorphism> to_input; // double cover -> input (odd degree only)
  GraphMorphism to_base;                 // cover -> rose(k/2) or theta(k)
  // Each factor as a list of darts of `cover`, one per geometric edge.
  // Even degree: 2-factors, each dart oriented along an Euler circuit.
  // Odd degree: perfect matchings, each dart leaving the side-0 vertex.
  std::vector<std::vector<int>> factors;
};

// Throws InputError "regular graph required" unless g is connected, uncoloured
// and regular of positive degree.
Factorization factorize_regular(const GraphPtr& g);

// Spanning and 2-regular (counting a loop twice).
bool is_two_factor(const Graph& g, const std::vector<int>& darts);
// Every vertex meets exactly one of the edges.
bool is_perfect_matching(const Graph& g, const std::vector<int>& darts);
// Proper 2-colouring exists.
bool is_bipartite(const Graph& g);

struct RegularCover {
  GraphPtr graph;
  GraphMorphism mu1, mu2;
  std::int64_t total_vertices = 0;  // whole fibre product before component choice
  int num_components = 0;
};

// Fibre product of the factorizations over the common base, pushed down to the
// inputs; the least component when `least`, else all components. Asserts
// total size <= |V1|·|V2| (even) or 2|V1|·|V2| (odd).
RegularCover regular_common_cover(const GraphPtr& g1, const GraphPtr& g2, bool least = true);

}  // namespace leighton
