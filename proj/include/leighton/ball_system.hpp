#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "leighton/graph.hpp"
#include "leighton/groupoid.hpp"
#include "leighton/local_system.hpp"
#include "leighton/universal_cover.hpp"

namespace leighton {

// Objects and darts are those of the disjoint union (G1 first). A ball arrow
// x -> y is a root-preserving isomorphism between the canonical R-balls,
// written as a node map WT(x, R) -> WT(y, R) of walk trees. Deck
// transformations act trivially in walk coordinates, so this node map is the
// canonical representative of its double coset.
struct BallArrow {
  int source = 0;
  int target = 0;
  std::vector<int> map;
};

// Isomorphism between edge neighbourhoods N(e) -> N(f) sending e to f, as the
// images (nodes of WT(origin f)) of the nodes of N(e) in walk-tree order.
struct EdgeMap {
  int source = 0;  // dart e
  int target = 0;  // dart f
  std::vector<int> map;
};

// Packed binary keys for interning; the text forms are for output.
std::string ball_key(const BallArrow& a);
std::string edge_key(const EdgeMap& a);
std::string ball_text(const BallArrow& a);
std::string edge_text(const EdgeMap& a);

// Walk trees of the disjoint union and the edge neighbourhoods inside them.
struct BallShapes {
  GraphPtr uni;
  int radius = 0;
  std::vector<WalkTree> tree;                 // per vertex
  std::vector<std::vector<int>> nbhd;         // per dart: nodes of N(e)
  std::vector<std::vector<int>> nbhd_pos;     // per dart: node -> position in N(e) or -1
  std::vector<std::vector<int>> reroot;       // per dart: position in N(e) -> position in N(ē)

  // δ ↦ r_f ∘ δ ∘ r_e⁻¹
  EdgeMap bar(const EdgeMap& d) const;
  // γ restricted to N(e); requires source(γ) = origin(e).
  EdgeMap restrict(const BallArrow& g, int e) const;
};

BallShapes ball_shapes(const GraphPtr& uni, int radius);
ArrowOps<BallArrow> ball_ops(const BallShapes& shapes);

struct BallSystem {
  GraphPtr g1, g2, uni;
  int R = 1;
  int rho = 0;
  CoverPair pair;
  BallShapes shapes;
  std::vector<BallArrow> atoms;         // distinct restrictions of θ
  std::vector<TreeVertex> atom_sites;   // a site in T1 for each atom
  FiniteGroupoid<BallArrow> groupoid;
  std::vector<EdgeMap> edge_atoms;
  std::unordered_map<std::string, int> edge_index;
  std::vector<std::vector<int>> orbit;  // per dart e: ids of the orbit of 1_e
  LocalSystem local;

  int find_edge(const EdgeMap& d) const;  // -1 when absent
  // Cross arrow (index in local.arrows) of the atom at the basepoint.
  int root_arrow() const;
};

struct DiscoveredAtoms {
  CoverPair pair;
  std::vector<BallArrow> atoms;
  std::vector<TreeVertex> sites;
  std::vector<int> depth;  // least site depth per atom
};

// Restrictions of θ to B_R(z) for d(z, basepoint) <= rho, deduplicated.
DiscoveredAtoms discover_atoms(const GraphPtr& g1, const GraphPtr& g2, int R, int rho);

// Saturation, edge orbits of the identities, bar, and axiom checks. Failing
// axioms are reported in local.axioms rather than thrown.
BallSystem build_ball_system(const GraphPtr& g1, const GraphPtr& g2, int R, int rho);

// Doubles rho until the axioms hold; throws AxiomError past `cap`.
BallSystem build_ball_system_auto(const GraphPtr& g1, const GraphPtr& g2, int R, int rho,
                                  int cap = 64);

// Evaluates the witness word with deck transformations and θ on actual tree
// vertices and compares the result with the node map. `why` receives the
// first disagreement.
bool verify_witness(const BallSystem& s, const BallArrow& arrow, const Word& witness,
                    std::string* why = nullptr);

// Smallest rho below `max_rho` such that radius rho + 1 adds no atom; -1 if none.
int stability_horizon(const GraphPtr& g1, const GraphPtr& g2, int R, int max_rho);

}  // namespace leighton
