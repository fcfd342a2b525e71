#pragma once

#include <vector>

#include "leighton/graph.hpp"

namespace leighton {

// Equitable vertex partition of one graph or of the disjoint union of several.
// Vertices are numbered globally: graph 0 first, then graph 1, ...
struct Partition {
  std::vector<GraphPtr> graphs;
  std::vector<int> offset;  // global index of each graph's first vertex
  std::vector<int> block;   // per global vertex
  int num_blocks = 0;
  // counts[i][j] = darts from a vertex of block i into block j
  std::vector<std::vector<int>> counts;

  int block_of(int graph, int v) const { return block[offset[graph] + v]; }
  std::vector<int> members(int b) const;  // global vertices, sorted
  std::vector<int> block_sizes() const;
};

Partition degree_refinement(const GraphPtr& g);
// Joint refinement of the disjoint union; graphs need not be connected here.
Partition joint_refinement(const std::vector<GraphPtr>& graphs);
// One more refinement round; returns a partition with the same blocks iff
// the input is equitable.
Partition refine_once(const Partition& p);
bool is_equitable(const Partition& p);

struct BlockMatch {
  std::vector<int> in_g1, in_g2;  // vertices of each graph in the block
};

struct CommonCoverCheck {
  bool exists = false;
  Partition partition;
  std::vector<BlockMatch> blocks;
};

CommonCoverCheck common_cover_exists(const GraphPtr& g1, const GraphPtr& g2);
// Throws InputError "no common universal cover" when the check fails.
CommonCoverCheck require_common_cover(const GraphPtr& g1, const GraphPtr& g2);

}  // namespace leighton
