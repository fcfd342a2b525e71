#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace leighton {

using Colour = std::optional<std::string>;

// Half-edge graph. Vertices and darts are indexed by the position of their
// identifier in sorted order, so index order is the canonical order.
class Graph {
 public:
  Graph() = default;

  int num_vertices() const { return static_cast<int>(vertex_ids_.size()); }
  int num_darts() const { return static_cast<int>(dart_ids_.size()); }
  int num_edges() const { return num_darts() / 2; }

  const std::string& vertex_id(int v) const { return vertex_ids_[v]; }
  const std::string& dart_id(int d) const { return dart_ids_[d]; }
  const std::vector<std::string>& vertex_ids() const { return vertex_ids_; }
  const std::vector<std::string>& dart_ids() const { return dart_ids_; }

  int origin(int d) const { return origin_[d]; }
  int reverse(int d) const { return reverse_[d]; }
  int terminus(int d) const { return origin_[reverse_[d]]; }

  const Colour& vertex_colour(int v) const { return vertex_colour_[v]; }
  const Colour& dart_colour(int d) const { return dart_colour_[d]; }

  // Darts with origin v, in canonical order.
  const std::vector<int>& star(int v) const { return stars_[v]; }
  int degree(int v) const { return static_cast<int>(stars_[v].size()); }
  int max_degree() const;

  std::optional<int> find_vertex(const std::string& id) const;
  std::optional<int> find_dart(const std::string& id) const;
  int vertex_index(const std::string& id) const;  // throws "vertex not in graph"
  int dart_index(const std::string& id) const;

  bool operator==(const Graph& other) const;

 private:
  friend class GraphBuilder;

  std::vector<std::string> vertex_ids_;
  std::vector<std::string> dart_ids_;
  std::vector<int> origin_;
  std::vector<int> reverse_;
  std::vector<Colour> vertex_colour_;
  std::vector<Colour> dart_colour_;
  std::vector<std::vector<int>> stars_;
  std::unordered_map<std::string, int> vertex_index_;
  std::unordered_map<std::string, int> dart_index_;
};

using GraphPtr = std::shared_ptr<const Graph>;

// Collects identifiers in any order; build() sorts them and resolves
// references. Unknown or duplicate identifiers raise InputError. Structural
// problems (fixed points of reversal etc.) are left for validate_graph.
class GraphBuilder {
 public:
  void add_vertex(std::string id, Colour colour = std::nullopt);
  void add_dart(std::string id, std::string reverse, std::string from,
                Colour colour = std::nullopt);
  // Adds the dart pair (d: from -> to, dbar: to -> from).
  void add_edge(std::string d, std::string dbar, std::string from,
                std::string to, Colour colour = std::nullopt,
                Colour colour_bar = std::nullopt);
  GraphPtr build() const;

 private:
  struct VertexSpec {
    std::string id;
    Colour colour;
  };
  struct DartSpec {
    std::string id, reverse, from;
    Colour colour;
  };
  std::vector<VertexSpec> vertices_;
  std::vector<DartSpec> darts_;
};

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> violations;
};

ValidationReport validate_graph(const Graph& g);
// Throws InputError listing the violations.
void require_valid(const Graph& g);

// Star of a vertex given by identifier; throws InputError "vertex not in graph".
const std::vector<int>& star(const Graph& g, const std::string& vertex);
const std::vector<int>& star(const Graph& g, int vertex);

struct GraphMorphism {
  GraphPtr source;
  GraphPtr target;
  std::vector<int> vmap;
  std::vector<int> dmap;
};

// Empty when m is a graph morphism, otherwise the first problem found.
std::optional<std::string> morphism_problem(const GraphMorphism& m);

struct CoveringFailure {
  int vertex = -1;         // source vertex whose star map fails
  int target_vertex = -1;  // uncovered target vertex
  int target_dart = -1;    // uncovered target dart
  std::string reason;
};

struct CoveringCheck {
  bool ok = true;
  std::vector<CoveringFailure> failures;
  explicit operator bool() const { return ok; }
};

// Throws InputError "not a graph morphism" on malformed input.
CoveringCheck is_covering(const GraphMorphism& m);

GraphMorphism identity_morphism(const GraphPtr& g);
// second ∘ first
GraphMorphism compose(const GraphMorphism& second, const GraphMorphism& first);

struct FiberProduct {
  GraphPtr graph;
  GraphMorphism proj1, proj2;
};

FiberProduct fiber_product(const GraphMorphism& m1, const GraphMorphism& m2);

// Vertex sets of connected components, each sorted; components ordered by
// their least vertex.
std::vector<std::vector<int>> components(const Graph& g);
bool is_connected(const Graph& g);
int diameter(const Graph& g);

struct Subgraph {
  GraphPtr graph;
  GraphMorphism inclusion;  // subgraph -> original
};

// Subgraph on a union of components (ids are kept).
Subgraph induced_subgraph(const GraphPtr& g, const std::vector<int>& vertices);

// Backtracking search for a covering h -> g with h connected. Throws
// BudgetExceeded after `budget` search steps.
std::optional<GraphMorphism> find_covering(const GraphPtr& h, const GraphPtr& g,
                                           std::int64_t budget = 20'000'000);
bool isomorphic(const GraphPtr& a, const GraphPtr& b);

// Disjoint union with ids prefixed "1:" and "2:", so the vertices and darts
// of the first graph come first and keep their order.
GraphPtr disjoint_union(const GraphPtr& a, const GraphPtr& b);

// Standard fixtures. Edge k becomes darts "e<k>+" (u -> w) and "e<k>-".
GraphPtr graph_from_edges(int n, const std::vector<std::pair<int, int>>& edges);
GraphPtr cycle(int n);
GraphPtr path(int n);
GraphPtr rose(int d);
GraphPtr theta(int d);
GraphPtr complete(int n);
GraphPtr complete_bipartite(int a, int b);

// Zero-padded decimal, wide enough for values below `bound`.
std::string padded(std::int64_t value, std::int64_t bound);

}  // namespace leighton
