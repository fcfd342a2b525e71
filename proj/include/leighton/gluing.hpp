#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "leighton/graph.hpp"
#include "leighton/groupoid.hpp"
#include "leighton/local_system.hpp"

namespace leighton {

// Class of an admissible pair of centred balls: a cross arrow of the system.
struct PolyhedralPair {
  int arrow = 0;  // index into LocalSystem::arrows
  int x = 0, y = 0;
};

// Class of an admissible face pair, directed by its positive centre dart.
struct FacePair {
  int atom = 0;  // index into LocalSystem::atoms; the G1 dart is positive
  int e = 0, f = 0;
};

struct GluingData {
  const LocalSystem* sys = nullptr;
  std::vector<char> positive1, positive2;  // per dart of G1 and G2
  std::vector<PolyhedralPair> pairs;
  std::vector<FacePair> faces;
  std::vector<std::vector<int>> left, right;  // per face: pairs on the origin / terminus side
};

// Throws OrientationError "orientation required: subdivide" when no choice of
// positive darts is compatible with every atom.
GluingData enumerate_pairs(const LocalSystem& sys);

// ω(P) = scale / denominator(P), integral for scale = N.
struct WeightFn {
  BigInt scale;
  std::vector<std::int64_t> denominator;  // |Γ(x,-)| per pair
  std::vector<BigInt> weight;
};

struct FaceBalance {
  BigInt left, right, expected;  // expected = N / |Δ(e)|
};

// Checks both sides of every gluing equation against N / |Δ(e)|; throws
// VerificationError on any imbalance.
WeightFn gluing_weights(const GluingData& data, std::vector<FaceBalance>* balance = nullptr);

struct Glued {
  GraphPtr graph;
  GraphMorphism mu1, mu2;
  std::int64_t total_vertices = 0;
  std::vector<std::int64_t> component_sizes;  // of the whole assembly
  bool subdivided = false;
};

// ω(P)·multiplier copies of each pair, faces matched left to right in slot
// order. Every component is checked to cover both targets.
Glued assemble(const GluingData& data, const WeightFn& weights, std::int64_t multiplier = 1,
               bool least = false, std::int64_t max_vertices = 4'000'000);

// Every geometric edge split by a midpoint vertex of a reserved colour.
struct Subdivision {
  GraphPtr original, graph;
  std::vector<int> original_dart;  // per dart leaving an original vertex, else -1
};
Subdivision subdivide(const GraphPtr& g);
bool is_midpoint(const Graph& g, int v);

// Inverse of subdivision on a common cover of two subdivided graphs.
Glued smooth(const Glued& g, const Subdivision& s1, const Subdivision& s2);

// Ball system at radius R, enumerate, weigh, assemble. On an orientation
// conflict the inputs are subdivided, the radius doubled, and the result
// smoothed back.
Glued glue_cover(const GraphPtr& g1, const GraphPtr& g2, int R, bool least = true);

}  // namespace leighton
