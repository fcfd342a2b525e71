#pragma once

#include <string>
#include <vector>

#include "leighton/graph.hpp"
#include "leighton/groupoid.hpp"
#include "leighton/local_system.hpp"
#include "leighton/universal_cover.hpp"

namespace leighton {

// Objects and darts live in the disjoint union: G1 first, then G2.
// map[i] is the image of the i-th dart of star(source).
struct StarArrow {
  int source = 0;
  int target = 0;
  std::vector<int> map;
};

ArrowOps<StarArrow> star_ops(const GraphPtr& uni);
std::string star_key(const StarArrow& a);

enum class StarStrategy { dr_full, theta_generated };

struct StarSystem {
  GraphPtr g1, g2, uni;
  StarStrategy strategy = StarStrategy::dr_full;
  int radius = 0;
  FiniteGroupoid<StarArrow> groupoid;
  std::vector<StarArrow> atoms;         // theta_generated only
  std::vector<TreeVertex> atom_sites;   // first tree vertex giving each atom
  std::vector<int> orbit_of;            // per union dart
  std::vector<std::vector<int>> orbits;
  std::string transition_failure;       // empty when the transition identity holds
  LocalSystem local;
};

// Does not throw on failing axioms; see local.axioms and require_axioms.
// Throws InputError "no common universal cover" on incompatible inputs.
StarSystem build_star_system(const GraphPtr& g1, const GraphPtr& g2, StarStrategy strategy,
                             int radius = 0);

// theta_generated starting at `radius` and doubling until the axioms hold or
// `cap` is passed; dr_full ignores the radius. Throws AxiomError on failure.
StarSystem build_star_system_auto(const GraphPtr& g1, const GraphPtr& g2,
                                  StarStrategy strategy, int radius, int cap = 64);

int default_radius(const GraphPtr& g1, const GraphPtr& g2, int R = 0);

}  // namespace leighton
