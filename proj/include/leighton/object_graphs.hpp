#pragma once

#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "leighton/cover_builder.hpp"
#include "leighton/graph.hpp"
#include "leighton/groupoid.hpp"
#include "leighton/local_system.hpp"

namespace leighton {

// Objects are finite directed multigraphs with labelled vertices and arcs.
// A-morphisms preserve labels and incidence; B-morphisms are the bijective
// A-morphisms.
struct Arc {
  int from = 0;
  int to = 0;
  std::string label;
  bool operator==(const Arc&) const = default;
};

struct FiniteObject {
  std::vector<std::string> labels;  // per vertex
  std::vector<Arc> arcs;
  bool operator==(const FiniteObject&) const = default;
  int size() const { return static_cast<int>(labels.size() + arcs.size()); }
};

struct ObjMap {
  std::vector<int> vmap;
  std::vector<int> amap;
  bool operator==(const ObjMap&) const = default;
};

std::optional<std::string> a_morphism_problem(const FiniteObject& s, const FiniteObject& t,
                                              const ObjMap& m);
bool is_a_morphism(const FiniteObject& s, const FiniteObject& t, const ObjMap& m);
bool is_b_morphism(const FiniteObject& s, const FiniteObject& t, const ObjMap& m);
ObjMap identity_map(const FiniteObject& x);
ObjMap compose(const ObjMap& second, const ObjMap& first);
ObjMap inverse(const ObjMap& m);
std::string map_key(const ObjMap& m);

// Cyclic object: vertices 0..n-1 with arcs i -> i+1.
FiniteObject cycle_object(int n, const std::string& label = "");
// Rotation i -> i+k of cycle_object(n).
ObjMap rotation(int n, int k);

struct ObjectGraph {
  GraphPtr graph;
  std::vector<FiniteObject> vertex_object;  // per vertex
  std::vector<FiniteObject> edge_object;    // per dart; equal on reverse pairs
  std::vector<ObjMap> edge_map;             // per dart e: X_e -> X_{origin e}

  const ObjMap& phi0(int d) const { return edge_map[d]; }
  const ObjMap& phi1(int d) const { return edge_map[graph->reverse(d)]; }
};
using ObjectGraphPtr = std::shared_ptr<const ObjectGraph>;

// Every vertex and edge object a single unlabelled vertex.
ObjectGraphPtr trivial_objects(const GraphPtr& g);
ValidationReport validate_object_graph(const ObjectGraph& x);
ObjectGraphPtr object_union(const ObjectGraph& a, const ObjectGraph& b);

struct ObjectMorphism {
  ObjectGraphPtr source, target;
  GraphMorphism hat;
  std::vector<ObjMap> vertex;  // per source vertex
  std::vector<ObjMap> edge;    // per source dart
};

struct CoveringVerdict {
  bool ok = true;
  std::string failure;  // first failing condition, with the square instance
};

CoveringVerdict verify_object_covering(const ObjectMorphism& f);
ObjectMorphism identity_object_morphism(const ObjectGraphPtr& x);

// Star map between vertices of the disjoint union X1 ⊔ X2. hat[i] and
// edge[i] belong to the i-th dart of star(source). vertex is one chosen
// compatible vertex morphism; it is not part of the identity of the map.
struct StarMap {
  int source = 0;
  int target = 0;
  std::vector<int> hat;
  std::vector<ObjMap> edge;
  std::optional<ObjMap> vertex;
};

// Edge datum (e, f, b) with b: X_e -> X_f.
struct EdgeDatum {
  int e = 0;
  int f = 0;
  ObjMap b;
};

struct ObjectSystem {
  ObjectGraphPtr x1, x2, uni;
  std::vector<StarMap> seeds;  // with resolved vertex morphisms
  FiniteGroupoid<StarMap> groupoid;
  std::vector<EdgeDatum> delta;
  std::unordered_map<std::string, int> delta_index;
  std::vector<std::vector<int>> delta_of;   // per union dart e: Δ(e)
  std::vector<std::int64_t> isotropy;       // per union dart: |Υ_e|
  LocalSystem local;

  int find_delta(const EdgeDatum& d) const;  // -1 when absent
};

// Rejects a seed with no compatible vertex morphism (InputError naming the
// failing square). Axiom failures are reported in local.axioms with the
// prefix "insufficient seeds".
ObjectSystem close_star_maps(const ObjectGraphPtr& x1, const ObjectGraphPtr& x2,
                             std::vector<StarMap> seeds, std::size_t cap = 2'000'000);

// A compatible vertex morphism for a star map, or the failing square.
struct VertexSearch {
  std::optional<ObjMap> vertex;
  std::string failure;
};
VertexSearch find_vertex_morphism(const ObjectGraph& uni, const StarMap& s);

// Seeds that mirror every block-preserving star bijection, with identity
// edge morphisms. Intended for graphs with trivial objects.
std::vector<StarMap> full_trivial_seeds(const ObjectGraphPtr& x1, const ObjectGraphPtr& x2);

struct ObjectCover {
  BuiltCover cover;
  ObjectGraphPtr w;
  ObjectMorphism mu1, mu2;
};

ObjectCover build_object_cover(const ObjectSystem& sys, const BuildOptions& options = {});

}  // namespace leighton
