#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "leighton/graph.hpp"
#include "leighton/groupoid.hpp"
#include "leighton/local_system.hpp"

namespace leighton {

enum class ComponentChoice { all, least, containing };

struct BuildOptions {
  ComponentChoice component = ComponentChoice::least;
  int containing_arrow = -1;     // index into LocalSystem::arrows
  std::optional<int> based_at;   // selects the component of (arrow, 1)
  std::int64_t max_vertices = 4'000'000;
};

struct VertexLabel {
  int arrow = 0;  // index into LocalSystem::arrows
  std::int64_t j = 1;
};

struct DartLabel {
  int atom = 0;  // index into LocalSystem::atoms
  std::int64_t k = 1;
};

struct BuiltCover {
  GraphPtr graph;
  GraphMorphism mu1, mu2;
  std::vector<VertexLabel> vertex_label;
  std::vector<DartLabel> dart_label;
  BigInt N;
  std::int64_t degree1 = 0, degree2 = 0;
  std::int64_t total_vertices = 0;  // before component selection
  int num_components = 0;
};

// Vertices (γ, j), darts (a, k), canonical matching, reversal by bar.
// Refuses systems with failing axioms. Throws VerificationError when the
// assembled graph is not a common cover (never expected).
BuiltCover build_cover(const LocalSystem& sys, const BuildOptions& options = {});

}  // namespace leighton
