#pragma once

#include <cstdint>
#include <optional>

#include "leighton/graph.hpp"

namespace leighton {

struct OracleResult {
  std::optional<GraphPtr> cover;  // least common cover found, if any
  int degree_over_g1 = 0;         // sheet count over the first graph
  std::int64_t candidates = 0;    // voltage assignments examined
  GraphMorphism to_g1, to_g2;
};

// Connected covers of g1 of degree m = 1..max_degree, built from permutation
// voltages on the edges outside a breadth-first spanning tree, tested for a
// covering onto g2. Throws BudgetExceeded "budget exceeded" past `budget`
// candidates and InputError for disconnected inputs.
OracleResult brute_common_cover(const GraphPtr& g1, const GraphPtr& g2, int max_degree,
                                std::int64_t budget = 5'000'000);

// Largest lcm over all partitions of n, 1 <= n <= 30.
std::int64_t brute_landau(int n);

}  // namespace leighton
