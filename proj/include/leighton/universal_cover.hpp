#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "leighton/graph.hpp"
#include "leighton/refinement.hpp"

namespace leighton {

// A vertex of the universal cover: a reduced dart path from the basepoint.
struct TreeVertex {
  std::vector<int> path;
  auto operator<=>(const TreeVertex&) const = default;
};

// Reduced walks of length <= radius from a base vertex, in breadth-first
// order with children in star order. Node 0 is the empty walk. This is the
// labelled shape of every ball B_radius(z) with p(z) = root_vertex.
struct WalkTree {
  int root_vertex = 0;
  int radius = 0;
  std::vector<int> parent;  // -1 at the root
  std::vector<int> dart;    // last dart of the walk, -1 at the root
  std::vector<int> depth;
  std::vector<int> end;     // end vertex of the walk
  // children[n][i]: node reached by the i-th dart of star(end[n]), or -1
  std::vector<std::vector<int>> children;

  int size() const { return static_cast<int>(parent.size()); }
  std::vector<int> walk(int node) const;
  int find(const std::vector<int>& walk) const;  // -1 when absent
  int child(const Graph& g, int node, int d) const;
};

WalkTree walk_tree(const Graph& g, int x, int radius);

// Position of each dart inside the star of its origin.
std::vector<int> star_positions(const Graph& g);

// Free reduction of a dart sequence.
std::vector<int> reduce(const Graph& g, const std::vector<int>& darts);
// Reverse path: darts reversed and in reverse order.
std::vector<int> inverse_path(const Graph& g, const std::vector<int>& darts);

struct DeckLetter {
  int generator = 0;
  bool inverse = false;
  bool operator==(const DeckLetter&) const = default;
};
using DeckWord = std::vector<DeckLetter>;

struct Ball {
  TreeVertex root;
  int radius = 0;
  WalkTree shape;
  std::vector<TreeVertex> vertices;  // per shape node
};

class UniversalCover {
 public:
  UniversalCover(GraphPtr g, int basepoint);

  const Graph& graph() const { return *g_; }
  const GraphPtr& graph_ptr() const { return g_; }
  int basepoint() const { return basepoint_; }
  const std::vector<int>& positions() const { return pos_; }

  // Throws InputError "non-reduced path" (or a composition error).
  void check(const TreeVertex& z) const;
  int project(const TreeVertex& z) const;
  // Moves along a dart starting at p(z); backtracking pops.
  TreeVertex step(const TreeVertex& z, int dart) const;
  TreeVertex follow(const TreeVertex& z, const std::vector<int>& walk) const;

  TreeVertex canonical_lift(int v) const;
  int parent_dart(int v) const { return parent_dart_[v]; }
  bool is_tree_dart(int d) const { return tree_dart_[d] != 0; }
  const std::vector<int>& generators() const { return generators_; }

  std::vector<int> loop(const DeckLetter& l) const;
  TreeVertex deck_transport(const DeckWord& w, const TreeVertex& z) const;
  // The unique deck transformation taking `from` to `to` (same projection).
  DeckWord deck_between(const TreeVertex& from, const TreeVertex& to) const;
  DeckWord loop_word(const std::vector<int>& closed) const;

  Ball ball(const TreeVertex& z, int radius) const;
  int distance(const TreeVertex& a, const TreeVertex& b) const;

 private:
  GraphPtr g_;
  int basepoint_;
  std::vector<int> pos_;
  std::vector<int> parent_dart_;
  std::vector<char> tree_dart_;
  std::vector<int> generators_;
  std::vector<int> generator_of_;  // dart -> generator index or -1
};

using CoverPtr = std::shared_ptr<const UniversalCover>;

// Block-preserving isomorphism T1 -> T2 sending basepoint to basepoint,
// extended lazily. At each vertex the darts not yet matched are paired
// greedily: in star order, each source dart takes the least unused target
// dart of the same class (terminus block, dart colour, reverse colour).
// Memo tables are guarded, so concurrent callers see sequential results.
class TreeIso {
 public:
  TreeIso(CoverPtr t1, CoverPtr t2, const Partition& joint,
          std::size_t cap = 4'000'000);

  const UniversalCover& source() const { return *t1_; }
  const UniversalCover& target() const { return *t2_; }
  const CoverPtr& source_ptr() const { return t1_; }
  const CoverPtr& target_ptr() const { return t2_; }

  // Image darts of star(p1 z), aligned with star positions.
  std::vector<int> star_map(const TreeVertex& z);
  TreeVertex image(const TreeVertex& z);
  TreeVertex preimage(const TreeVertex& q);
  void extend(int radius);
  std::size_t constructed() const;
  // Star bijection, block and colour compatibility at every constructed
  // vertex; empty string when all hold.
  std::string verify_constructed();

  int block1(int v) const { return block1_[v]; }
  int block2(int v) const { return block2_[v]; }

 private:
  using Key = std::vector<int>;
  const std::vector<int>& star_map_locked(const TreeVertex& z);
  const TreeVertex& image_locked(const TreeVertex& z);

  CoverPtr t1_, t2_;
  std::vector<int> block1_, block2_;
  std::size_t cap_;
  std::recursive_mutex mu_;
  std::map<Key, std::vector<int>> stars_;
  std::map<Key, TreeVertex> images_;
};

struct CoverPair {
  CoverPtr t1, t2;
  std::shared_ptr<TreeIso> theta;
};

// Vertices of T1 within `radius` of the basepoint, breadth first, keeping
// one vertex per local picture: two vertices whose ancestors `depth` levels
// up agree in (projection, image projection, entering darts) and which are
// reached from there by the same darts get identical θ-neighbourhoods of
// radius `depth`, so only the first is kept and expanded.
std::vector<TreeVertex> theta_representatives(TreeIso& theta, int radius, int depth);

// Basepoints: least vertex of G1, and the least G2 vertex in its joint block.
// Throws InputError "no common universal cover" when blocks do not match.
CoverPair build_theta(const GraphPtr& g1, const GraphPtr& g2, int radius);

}  // namespace leighton
