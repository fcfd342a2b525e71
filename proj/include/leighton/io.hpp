#pragma once

#include <functional>
#include <string>
#include <vector>

#include "json.hpp"
#include "leighton/cover_builder.hpp"
#include "leighton/graph.hpp"
#include "leighton/object_graphs.hpp"
#include "leighton/phi.hpp"

namespace leighton {

using Json = nlohmann::json;

// Schema problems are InputErrors of the form "<where>: <json pointer>: <problem>".

// Whole file as JSON; InputError on unreadable or unparsable files.
Json read_json_file(const std::string& path);
// Canonical text: two-space indentation, keys sorted, trailing newline.
std::string dump(const Json& j);
void write_text_file(const std::string& path, const std::string& text);

// {"vertices":[{"id","colour"?}],"darts":[{"id","reverse","from","colour"?}]}
Json graph_to_json(const Graph& g);
GraphPtr graph_from_json(const Json& j, const std::string& where = "graph");
// Accepts a bare graph or any document with a "graph" member.
GraphPtr load_graph(const std::string& path);

// {"vmap":{id:id},"dmap":{id:id}}. With `check`, tables that do not form a
// graph morphism are rejected as input errors.
Json morphism_to_json(const GraphMorphism& m);
GraphMorphism morphism_from_json(const Json& j, const GraphPtr& source, const GraphPtr& target,
                                 const std::string& where = "morphism", bool check = true);

// {"vmap":[int],"amap":[int]}
Json obj_map_to_json(const ObjMap& m);
ObjMap obj_map_from_json(const Json& j, const std::string& where);
// {"labels":[str],"arcs":[{"from","to","label"}]}
Json finite_object_to_json(const FiniteObject& x);
FiniteObject finite_object_from_json(const Json& j, const std::string& where);

// Graph schema plus
//   "objects": {"vertices": {vertex id: object}, "edges": {dart id: object}}
//   "edge_morphisms": {dart id: map from the edge object to the origin's object}
// An edge object may be given on either dart of its pair. Missing objects
// are single unlabelled points; a missing edge morphism is the identity when
// the two objects coincide.
Json object_graph_to_json(const ObjectGraph& x);
ObjectGraphPtr object_graph_from_json(const Json& j, const std::string& where = "object graph");

// {"seeds":[{"source":uid,"target":uid,"darts":[{"from":uid,"to":uid,"map":m}],"vertex":m?}]}
// where uid are ids of the disjoint union ("1:..." for X1, "2:..." for X2).
Json seeds_to_json(const ObjectGraph& uni, const std::vector<StarMap>& seeds);
std::vector<StarMap> seeds_from_json(const Json& j, const ObjectGraph& uni,
                                     const std::string& where = "seeds");

// {"hat":morphism,"vertex":{id:map},"edge":{id:map}}
Json object_morphism_to_json(const ObjectMorphism& f);
ObjectMorphism object_morphism_from_json(const Json& j, const ObjectGraphPtr& source,
                                         const ObjectGraphPtr& target, const std::string& where);

// Provenance text per cross arrow and per cross atom of the system.
struct Provenance {
  std::string backend;
  std::vector<std::string> arrow_text;
  std::vector<std::string> atom_text;
};

// {"graph","mu1","mu2","provenance":{"backend","vertices":{id:{"arrow","j"}},
//  "darts":{id:{"atom","k"}}},"summary":{...}}
Json cover_to_json(const BuiltCover& bc, const Provenance& p);

struct StoredCover {
  GraphPtr graph;
  GraphMorphism mu1, mu2;
};
StoredCover stored_cover_from_json(const Json& j, const GraphPtr& g1, const GraphPtr& g2,
                                   const std::string& where = "cover", bool check = true);

// Tree vertices are written as dart-id paths from the basepoints; `arrow_text`
// renders a groupoid arrow id.
Json phi_to_json(const PhiCertificate& c, const Graph& g1, const Graph& g2, const Graph& cover,
                 const std::function<std::string(int)>& arrow_text);

// One undirected edge per dart pair; colours become attributes.
std::string to_dot(const Graph& g, const std::string& name = "G");

}  // namespace leighton
