#pragma once

#include <string>
#include <vector>

#include "leighton/ball_system.hpp"
#include "leighton/cover_builder.hpp"

namespace leighton {

struct PhiEntry {
  TreeVertex z;           // vertex of T1
  TreeVertex image;       // φ(z) in T2
  int cover_vertex = -1;  // ν1(z)
  int arrow = -1;         // groupoid arrow equal to φ on B_R(z), -1 if none
  bool witness_ok = false;
};

struct PhiCertificate {
  int test_radius = 0;
  bool based = false;
  std::vector<PhiEntry> entries;
  int mismatches = 0;
  bool fixes_base_ball = false;  // meaningful when based
  std::string first_failure;
  bool ok() const { return mismatches == 0 && (!based || fixes_base_ball); }
};

// φ = ν2 ∘ ν1⁻¹ by path lifting through μ1 and μ2. Each restriction
// φ|B_R(z) with d(z, z0) <= test_radius is matched to a groupoid arrow by key
// and its witness is evaluated. With `based`, ν1(z0) is the vertex
// (basepoint arrow, 1) and φ(z0) = θ(z0), and the certificate records
// whether φ agrees with θ on B_R(z0). The cover must have been built with
// based_at = root_arrow() in that case.
PhiCertificate extract_phi(const BuiltCover& bc, const BallSystem& sys, int test_radius,
                           bool based = false);

}  // namespace leighton
