#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "leighton/graph.hpp"
#include "leighton/groupoid.hpp"

namespace leighton {

// Cross arrow x -> y with x in G1 and y in G2. star_atoms[i] is the atom
// reached by acting with the arrow on the identity atom of the i-th dart of
// star(x).
struct CrossArrow {
  int x = 0;
  int y = 0;
  std::string key;
  std::vector<int> star_atoms;
  int payload = -1;  // arrow id inside the backend groupoid
};

// Orbit element of the edge action whose G1 end is dart e and G2 end is dart f.
struct CrossAtom {
  int e = 0;
  int f = 0;
  int bar = 0;
  std::string key;
  int payload = -1;
};

struct AxiomFlags {
  bool coverage = false;     // AX1
  bool bar_closure = false;  // AX2
  bool action = false;       // AX3
  bool action_exhaustive = true;
  std::string failure;
  bool all() const { return coverage && bar_closure && action; }
};

// What the cover builder needs from any backend. Arrows are sorted by key.
struct LocalSystem {
  std::string backend;
  GraphPtr g1, g2;
  std::vector<std::int64_t> out_size;    // |Γ(x,-)| for x in G1
  std::vector<std::int64_t> orbit_size;  // |Δ(e,-)| for darts e of G1
  std::vector<CrossArrow> arrows;
  std::vector<CrossAtom> atoms;
  AxiomFlags axioms;
  int radius = 0;  // exploration radius the system was built at, if any
};

// Consistency of the plumbing: atoms project to the right darts, bar is an
// involution compatible with reversal, star maps are bijections. Empty
// string when consistent.
std::string check_local_system(const LocalSystem& sys);

// Throws AxiomError "closure axioms unmet at radius ρ" with the failure.
void require_axioms(const LocalSystem& sys);

}  // namespace leighton
