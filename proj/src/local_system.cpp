#include "leighton/local_system.hpp"

#include <set>

#include "leighton/errors.hpp"

namespace leighton {

std::string check_local_system(const LocalSystem& s) {
  const Graph& g1 = *s.g1;
  const Graph& g2 = *s.g2;
  if (static_cast<int>(s.out_size.size()) != g1.num_vertices())
    return "out_size does not cover the vertices of G1";
  if (static_cast<int>(s.orbit_size.size()) != g1.num_darts())
    return "orbit_size does not cover the darts of G1";
  int na = static_cast<int>(s.atoms.size());
  for (int a = 0; a < na; ++a) {
    const auto& A = s.atoms[a];
    if (A.e < 0 || A.e >= g1.num_darts() || A.f < 0 || A.f >= g2.num_darts())
      return "atom " + A.key + " projects outside the graphs";
    if (A.bar < 0 || A.bar >= na || s.atoms[A.bar].bar != a)
      return "bar is not an involution at atom " + A.key;
    const auto& B = s.atoms[A.bar];
    if (B.e != g1.reverse(A.e) || B.f != g2.reverse(A.f))
      return "bar of atom " + A.key + " does not project to the reversed darts";
    if (s.orbit_size[A.e] != s.orbit_size[B.e])
      return "orbit sizes of dart " + g1.dart_id(A.e) + " and its reverse differ";
  }
  for (std::size_t i = 0; i < s.arrows.size(); ++i) {
    const auto& c = s.arrows[i];
    if (i > 0 && !(s.arrows[i - 1].key < c.key)) return "arrows are not sorted by key";
    if (c.x < 0 || c.x >= g1.num_vertices() || c.y < 0 || c.y >= g2.num_vertices())
      return "arrow " + c.key + " has endpoints outside the graphs";
    const auto& st = g1.star(c.x);
    if (c.star_atoms.size() != st.size() ||
        static_cast<int>(st.size()) != g2.degree(c.y))
      return "arrow " + c.key + " has a star map of the wrong size";
    std::set<int> image;
    for (std::size_t p = 0; p < st.size(); ++p) {
      int a = c.star_atoms[p];
      if (a < 0 || a >= na) return "arrow " + c.key + " acts outside the atom set";
      if (s.atoms[a].e != st[p])
        return "arrow " + c.key + " sends dart " + g1.dart_id(st[p]) + " to a foreign atom";
      if (g2.origin(s.atoms[a].f) != c.y)
        return "arrow " + c.key + " induces a map off star(y)";
      image.insert(s.atoms[a].f);
    }
    if (image.size() != st.size()) return "arrow " + c.key + " induces a non-injective star map";
  }
  return {};
}

void require_axioms(const LocalSystem& s) {
  if (s.axioms.all()) return;
  throw AxiomError("closure axioms unmet at radius " + std::to_string(s.radius) + ": " +
                   s.axioms.failure);
}

}  // namespace leighton
