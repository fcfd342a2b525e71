#include "leighton/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "leighton/errors.hpp"

namespace leighton {

namespace {

[[noreturn]] void schema_error(const std::string& where, const std::string& pointer,
                               const std::string& problem) {
  throw InputError(where + ": " + (pointer.empty() ? "/" : pointer) + ": " + problem);
}

const Json& member(const Json& j, const std::string& name, const std::string& where,
                   const std::string& at) {
  if (!j.is_object()) schema_error(where, at, "expected an object");
  auto it = j.find(name);
  if (it == j.end()) schema_error(where, at, "missing member '" + name + "'");
  return *it;
}

std::string string_at(const Json& j, const std::string& where, const std::string& at) {
  if (!j.is_string()) schema_error(where, at, "expected a string");
  return j.get<std::string>();
}

int int_at(const Json& j, const std::string& where, const std::string& at) {
  if (!j.is_number_integer()) schema_error(where, at, "expected an integer");
  return j.get<int>();
}

const Json& array_at(const Json& j, const std::string& where, const std::string& at) {
  if (!j.is_array()) schema_error(where, at, "expected an array");
  return j;
}

const Json& object_at(const Json& j, const std::string& where, const std::string& at) {
  if (!j.is_object()) schema_error(where, at, "expected an object");
  return j;
}

Colour colour_at(const Json& j, const std::string& where, const std::string& at) {
  auto it = j.find("colour");
  if (it == j.end() || it->is_null()) return std::nullopt;
  return string_at(*it, where, at + "/colour");
}

std::string escape_pointer(const std::string& key) {
  std::string r;
  for (char c : key) {
    if (c == '~') r += "~0";
    else if (c == '/') r += "~1";
    else r += c;
  }
  return r;
}

// Builder errors carry no location; attach the document name.
template <typename F>
auto located(const std::string& where, F&& f) {
  try {
    return f();
  } catch (const InputError& e) {
    throw InputError(where + ": " + e.what());
  }
}

std::vector<std::string> path_ids(const Graph& g, const std::vector<int>& path) {
  std::vector<std::string> r;
  for (int d : path) r.push_back(g.dart_id(d));
  return r;
}

}  // namespace

Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const Json::parse_error& e) {
    throw InputError(path + ": parse error at byte " + std::to_string(e.byte));
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError(path + ": cannot write file");
  out << text;
  if (!out) throw InputError(path + ": write failed");
}

Json graph_to_json(const Graph& g) {
  Json vertices = Json::array();
  for (int v = 0; v < g.num_vertices(); ++v) {
    Json o{{"id", g.vertex_id(v)}};
    if (g.vertex_colour(v)) o["colour"] = *g.vertex_colour(v);
    vertices.push_back(std::move(o));
  }
  Json darts = Json::array();
  for (int d = 0; d < g.num_darts(); ++d) {
    Json o{{"id", g.dart_id(d)},
           {"reverse", g.dart_id(g.reverse(d))},
           {"from", g.vertex_id(g.origin(d))}};
    if (g.dart_colour(d)) o["colour"] = *g.dart_colour(d);
    darts.push_back(std::move(o));
  }
  return Json{{"vertices", std::move(vertices)}, {"darts", std::move(darts)}};
}

GraphPtr graph_from_json(const Json& j, const std::string& where) {
  GraphBuilder b;
  const Json& vs = array_at(member(j, "vertices", where, ""), where, "/vertices");
  for (std::size_t i = 0; i < vs.size(); ++i) {
    std::string at = "/vertices/" + std::to_string(i);
    b.add_vertex(string_at(member(vs[i], "id", where, at), where, at + "/id"),
                 colour_at(vs[i], where, at));
  }
  const Json& ds = array_at(member(j, "darts", where, ""), where, "/darts");
  for (std::size_t i = 0; i < ds.size(); ++i) {
    std::string at = "/darts/" + std::to_string(i);
    b.add_dart(string_at(member(ds[i], "id", where, at), where, at + "/id"),
               string_at(member(ds[i], "reverse", where, at), where, at + "/reverse"),
               string_at(member(ds[i], "from", where, at), where, at + "/from"),
               colour_at(ds[i], where, at));
  }
  GraphPtr g = located(where, [&] { return b.build(); });
  located(where, [&] {
    require_valid(*g);
    return 0;
  });
  return g;
}

GraphPtr load_graph(const std::string& path) {
  Json j = read_json_file(path);
  if (j.is_object() && j.contains("graph")) return graph_from_json(j["graph"], path + ": /graph");
  return graph_from_json(j, path);
}

Json morphism_to_json(const GraphMorphism& m) {
  Json vmap = Json::object(), dmap = Json::object();
  for (int v = 0; v < m.source->num_vertices(); ++v)
    vmap[m.source->vertex_id(v)] = m.target->vertex_id(m.vmap[v]);
  for (int d = 0; d < m.source->num_darts(); ++d)
    dmap[m.source->dart_id(d)] = m.target->dart_id(m.dmap[d]);
  return Json{{"vmap", std::move(vmap)}, {"dmap", std::move(dmap)}};
}

GraphMorphism morphism_from_json(const Json& j, const GraphPtr& source, const GraphPtr& target,
                                 const std::string& where, bool check) {
  GraphMorphism m{source, target, std::vector<int>(source->num_vertices(), -1),
                  std::vector<int>(source->num_darts(), -1)};
  auto table = [&](const char* name, bool vertices, std::vector<int>& out) {
    std::string at = std::string("/") + name;
    const Json& t = object_at(member(j, name, where, ""), where, at);
    for (auto it = t.begin(); it != t.end(); ++it) {
      std::string kat = at + "/" + escape_pointer(it.key());
      std::string val = string_at(it.value(), where, kat);
      auto from = vertices ? source->find_vertex(it.key()) : source->find_dart(it.key());
      if (!from) schema_error(where, kat, "unknown source id '" + it.key() + "'");
      auto to = vertices ? target->find_vertex(val) : target->find_dart(val);
      if (!to) schema_error(where, kat, "unknown target id '" + val + "'");
      out[*from] = *to;
    }
    for (std::size_t i = 0; i < out.size(); ++i)
      if (out[i] < 0)
        schema_error(where, at,
                     "no image for '" + (vertices ? source->vertex_id(static_cast<int>(i))
                                                  : source->dart_id(static_cast<int>(i))) +
                         "'");
  };
  table("vmap", true, m.vmap);
  table("dmap", false, m.dmap);
  if (!check) return m;
  if (auto p = morphism_problem(m)) schema_error(where, "", "not a graph morphism: " + *p);
  return m;
}

Json obj_map_to_json(const ObjMap& m) { return Json{{"vmap", m.vmap}, {"amap", m.amap}}; }

ObjMap obj_map_from_json(const Json& j, const std::string& where) {
  ObjMap m;
  for (const char* name : {"vmap", "amap"}) {
    std::string at = std::string("/") + name;
    const Json& a = array_at(member(j, name, where, ""), where, at);
    auto& out = std::string(name) == "vmap" ? m.vmap : m.amap;
    for (std::size_t i = 0; i < a.size(); ++i)
      out.push_back(int_at(a[i], where, at + "/" + std::to_string(i)));
  }
  return m;
}

Json finite_object_to_json(const FiniteObject& x) {
  Json arcs = Json::array();
  for (const Arc& a : x.arcs) arcs.push_back(Json{{"from", a.from}, {"to", a.to}, {"label", a.label}});
  return Json{{"labels", x.labels}, {"arcs", std::move(arcs)}};
}

FiniteObject finite_object_from_json(const Json& j, const std::string& where) {
  FiniteObject x;
  const Json& ls = array_at(member(j, "labels", where, ""), where, "/labels");
  for (std::size_t i = 0; i < ls.size(); ++i)
    x.labels.push_back(string_at(ls[i], where, "/labels/" + std::to_string(i)));
  auto it = j.find("arcs");
  if (it != j.end()) {
    const Json& as = array_at(*it, where, "/arcs");
    for (std::size_t i = 0; i < as.size(); ++i) {
      std::string at = "/arcs/" + std::to_string(i);
      Arc a{int_at(member(as[i], "from", where, at), where, at + "/from"),
            int_at(member(as[i], "to", where, at), where, at + "/to"), ""};
      if (auto l = as[i].find("label"); l != as[i].end()) a.label = string_at(*l, where, at + "/label");
      int n = static_cast<int>(x.labels.size());
      if (a.from < 0 || a.from >= n || a.to < 0 || a.to >= n)
        schema_error(where, at, "arc endpoint out of range");
      x.arcs.push_back(std::move(a));
    }
  }
  return x;
}

Json object_graph_to_json(const ObjectGraph& x) {
  const Graph& g = *x.graph;
  Json j = graph_to_json(g);
  Json vo = Json::object(), eo = Json::object(), em = Json::object();
  for (int v = 0; v < g.num_vertices(); ++v) vo[g.vertex_id(v)] = finite_object_to_json(x.vertex_object[v]);
  for (int d = 0; d < g.num_darts(); ++d) {
    if (d < g.reverse(d)) eo[g.dart_id(d)] = finite_object_to_json(x.edge_object[d]);
    em[g.dart_id(d)] = obj_map_to_json(x.edge_map[d]);
  }
  j["objects"] = Json{{"vertices", std::move(vo)}, {"edges", std::move(eo)}};
  j["edge_morphisms"] = std::move(em);
  return j;
}

ObjectGraphPtr object_graph_from_json(const Json& j, const std::string& where) {
  auto x = std::make_shared<ObjectGraph>();
  x->graph = graph_from_json(j, where);
  const Graph& g = *x->graph;
  FiniteObject point{{""}, {}};
  x->vertex_object.assign(g.num_vertices(), point);
  x->edge_object.assign(g.num_darts(), point);
  std::vector<char> given(g.num_darts(), 0);
  if (auto it = j.find("objects"); it != j.end()) {
    const Json& objs = object_at(*it, where, "/objects");
    if (auto v = objs.find("vertices"); v != objs.end()) {
      const Json& t = object_at(*v, where, "/objects/vertices");
      for (auto e = t.begin(); e != t.end(); ++e) {
        std::string at = "/objects/vertices/" + escape_pointer(e.key());
        auto id = g.find_vertex(e.key());
        if (!id) schema_error(where, at, "unknown vertex '" + e.key() + "'");
        x->vertex_object[*id] = finite_object_from_json(e.value(), where + ": " + at);
      }
    }
    if (auto d = objs.find("edges"); d != objs.end()) {
      const Json& t = object_at(*d, where, "/objects/edges");
      for (auto e = t.begin(); e != t.end(); ++e) {
        std::string at = "/objects/edges/" + escape_pointer(e.key());
        auto id = g.find_dart(e.key());
        if (!id) schema_error(where, at, "unknown dart '" + e.key() + "'");
        FiniteObject o = finite_object_from_json(e.value(), where + ": " + at);
        int r = g.reverse(*id);
        if (given[r] && !(x->edge_object[r] == o))
          schema_error(where, at, "edge object differs from that of its reverse");
        x->edge_object[*id] = o;
        x->edge_object[r] = o;
        given[*id] = given[r] = 1;
      }
    }
  }
  std::vector<char> mapped(g.num_darts(), 0);
  if (auto it = j.find("edge_morphisms"); it != j.end()) {
    const Json& t = object_at(*it, where, "/edge_morphisms");
    for (auto e = t.begin(); e != t.end(); ++e) {
      std::string at = "/edge_morphisms/" + escape_pointer(e.key());
      auto id = g.find_dart(e.key());
      if (!id) schema_error(where, at, "unknown dart '" + e.key() + "'");
      x->edge_map.resize(g.num_darts());
      x->edge_map[*id] = obj_map_from_json(e.value(), where + ": " + at);
      mapped[*id] = 1;
    }
  }
  x->edge_map.resize(g.num_darts());
  for (int d = 0; d < g.num_darts(); ++d) {
    if (mapped[d]) continue;
    if (!(x->edge_object[d] == x->vertex_object[g.origin(d)]))
      schema_error(where, "/edge_morphisms", "missing edge morphism at dart '" + g.dart_id(d) + "'");
    x->edge_map[d] = identity_map(x->edge_object[d]);
  }
  auto report = validate_object_graph(*x);
  if (!report.ok) schema_error(where, "", report.violations.front());
  return x;
}

Json seeds_to_json(const ObjectGraph& uni, const std::vector<StarMap>& seeds) {
  const Graph& g = *uni.graph;
  Json list = Json::array();
  for (const StarMap& s : seeds) {
    Json darts = Json::array();
    const auto& st = g.star(s.source);
    for (std::size_t i = 0; i < st.size(); ++i)
      darts.push_back(Json{{"from", g.dart_id(st[i])},
                           {"to", g.dart_id(s.hat[i])},
                           {"map", obj_map_to_json(s.edge[i])}});
    Json o{{"source", g.vertex_id(s.source)}, {"target", g.vertex_id(s.target)}, {"darts", std::move(darts)}};
    if (s.vertex) o["vertex"] = obj_map_to_json(*s.vertex);
    list.push_back(std::move(o));
  }
  return Json{{"seeds", std::move(list)}};
}

std::vector<StarMap> seeds_from_json(const Json& j, const ObjectGraph& uni, const std::string& where) {
  const Graph& g = *uni.graph;
  const Json& list = array_at(member(j, "seeds", where, ""), where, "/seeds");
  std::vector<StarMap> out;
  for (std::size_t k = 0; k < list.size(); ++k) {
    std::string at = "/seeds/" + std::to_string(k);
    const Json& s = list[k];
    auto vertex = [&](const char* name) {
      std::string id = string_at(member(s, name, where, at), where, at + "/" + name);
      auto v = g.find_vertex(id);
      if (!v) schema_error(where, at + "/" + name, "unknown vertex '" + id + "'");
      return *v;
    };
    StarMap m;
    m.source = vertex("source");
    m.target = vertex("target");
    const auto& st = g.star(m.source);
    m.hat.assign(st.size(), -1);
    m.edge.assign(st.size(), ObjMap{});
    const Json& ds = array_at(member(s, "darts", where, at), where, at + "/darts");
    for (std::size_t i = 0; i < ds.size(); ++i) {
      std::string dat = at + "/darts/" + std::to_string(i);
      auto dart = [&](const char* name) {
        std::string id = string_at(member(ds[i], name, where, dat), where, dat + "/" + name);
        auto d = g.find_dart(id);
        if (!d) schema_error(where, dat + "/" + name, "unknown dart '" + id + "'");
        return *d;
      };
      int from = dart("from");
      int to = dart("to");
      auto pos = std::find(st.begin(), st.end(), from);
      if (pos == st.end()) schema_error(where, dat + "/from", "dart does not leave the source vertex");
      if (g.origin(to) != m.target) schema_error(where, dat + "/to", "dart does not leave the target vertex");
      std::size_t p = static_cast<std::size_t>(pos - st.begin());
      if (m.hat[p] >= 0) schema_error(where, dat + "/from", "dart listed twice");
      m.hat[p] = to;
      m.edge[p] = obj_map_from_json(member(ds[i], "map", where, dat), where + ": " + dat + "/map");
    }
    for (std::size_t i = 0; i < st.size(); ++i)
      if (m.hat[i] < 0) schema_error(where, at + "/darts", "no image for dart '" + g.dart_id(st[i]) + "'");
    if (auto v = s.find("vertex"); v != s.end() && !v->is_null())
      m.vertex = obj_map_from_json(*v, where + ": " + at + "/vertex");
    out.push_back(std::move(m));
  }
  return out;
}

Json object_morphism_to_json(const ObjectMorphism& f) {
  const Graph& s = *f.source->graph;
  Json vertex = Json::object(), edge = Json::object();
  for (int v = 0; v < s.num_vertices(); ++v) vertex[s.vertex_id(v)] = obj_map_to_json(f.vertex[v]);
  for (int d = 0; d < s.num_darts(); ++d) edge[s.dart_id(d)] = obj_map_to_json(f.edge[d]);
  return Json{{"hat", morphism_to_json(f.hat)}, {"vertex", std::move(vertex)}, {"edge", std::move(edge)}};
}

ObjectMorphism object_morphism_from_json(const Json& j, const ObjectGraphPtr& source,
                                         const ObjectGraphPtr& target, const std::string& where) {
  ObjectMorphism f;
  f.source = source;
  f.target = target;
  f.hat = morphism_from_json(member(j, "hat", where, ""), source->graph, target->graph, where + ": /hat");
  const Graph& s = *source->graph;
  f.vertex.resize(s.num_vertices());
  f.edge.resize(s.num_darts());
  const Json& vt = object_at(member(j, "vertex", where, ""), where, "/vertex");
  for (int v = 0; v < s.num_vertices(); ++v) {
    std::string at = "/vertex/" + escape_pointer(s.vertex_id(v));
    auto it = vt.find(s.vertex_id(v));
    if (it == vt.end()) schema_error(where, at, "missing vertex morphism");
    f.vertex[v] = obj_map_from_json(*it, where + ": " + at);
  }
  const Json& et = object_at(member(j, "edge", where, ""), where, "/edge");
  for (int d = 0; d < s.num_darts(); ++d) {
    std::string at = "/edge/" + escape_pointer(s.dart_id(d));
    auto it = et.find(s.dart_id(d));
    if (it == et.end()) schema_error(where, at, "missing edge morphism");
    f.edge[d] = obj_map_from_json(*it, where + ": " + at);
  }
  return f;
}

Json cover_to_json(const BuiltCover& bc, const Provenance& p) {
  const Graph& g = *bc.graph;
  Json vertices = Json::object(), darts = Json::object();
  for (int v = 0; v < g.num_vertices(); ++v) {
    const VertexLabel& l = bc.vertex_label[v];
    vertices[g.vertex_id(v)] = Json{{"arrow", p.arrow_text.at(l.arrow)}, {"j", l.j}};
  }
  for (int d = 0; d < g.num_darts(); ++d) {
    const DartLabel& l = bc.dart_label[d];
    darts[g.dart_id(d)] = Json{{"atom", p.atom_text.at(l.atom)}, {"k", l.k}};
  }
  Json summary{{"N", bc.N.str()},
               {"degree1", bc.degree1},
               {"degree2", bc.degree2},
               {"total_vertices", bc.total_vertices},
               {"num_components", bc.num_components},
               {"vertices", g.num_vertices()},
               {"darts", g.num_darts()}};
  return Json{{"graph", graph_to_json(g)},
              {"mu1", morphism_to_json(bc.mu1)},
              {"mu2", morphism_to_json(bc.mu2)},
              {"provenance", Json{{"backend", p.backend}, {"vertices", std::move(vertices)}, {"darts", std::move(darts)}}},
              {"summary", std::move(summary)}};
}

StoredCover stored_cover_from_json(const Json& j, const GraphPtr& g1, const GraphPtr& g2,
                                   const std::string& where, bool check) {
  StoredCover c;
  c.graph = graph_from_json(member(j, "graph", where, ""), where + ": /graph");
  c.mu1 = morphism_from_json(member(j, "mu1", where, ""), c.graph, g1, where + ": /mu1", check);
  c.mu2 = morphism_from_json(member(j, "mu2", where, ""), c.graph, g2, where + ": /mu2", check);
  return c;
}

Json phi_to_json(const PhiCertificate& c, const Graph& g1, const Graph& g2, const Graph& cover,
                 const std::function<std::string(int)>& arrow_text) {
  Json entries = Json::array();
  for (const PhiEntry& e : c.entries) {
    Json o{{"z", path_ids(g1, e.z.path)},
           {"image", path_ids(g2, e.image.path)},
           {"cover_vertex", e.cover_vertex >= 0 ? Json(cover.vertex_id(e.cover_vertex)) : Json(nullptr)},
           {"arrow", e.arrow >= 0 ? Json(arrow_text(e.arrow)) : Json(nullptr)},
           {"witness_ok", e.witness_ok}};
    entries.push_back(std::move(o));
  }
  Json j{{"test_radius", c.test_radius},
         {"based", c.based},
         {"mismatches", c.mismatches},
         {"ok", c.ok()},
         {"entries", std::move(entries)}};
  if (c.based) j["fixes_base_ball"] = c.fixes_base_ball;
  if (!c.first_failure.empty()) j["first_failure"] = c.first_failure;
  return j;
}

std::string to_dot(const Graph& g, const std::string& name) {
  auto quote = [](const std::string& s) {
    std::string r = "\"";
    for (char ch : s) {
      if (ch == '"' || ch == '\\') r += '\\';
      r += ch;
    }
    return r + "\"";
  };
  std::ostringstream out;
  out << "graph " << quote(name) << " {\n";
  for (int v = 0; v < g.num_vertices(); ++v) {
    out << "  " << quote(g.vertex_id(v));
    if (g.vertex_colour(v)) out << " [colour=" << quote(*g.vertex_colour(v)) << "]";
    out << ";\n";
  }
  for (int d = 0; d < g.num_darts(); ++d) {
    int r = g.reverse(d);
    if (r < d) continue;
    out << "  " << quote(g.vertex_id(g.origin(d))) << " -- " << quote(g.vertex_id(g.terminus(d)))
        << " [darts=" << quote(g.dart_id(d) + "/" + g.dart_id(r));
    if (g.dart_colour(d)) out << ", colour=" << quote(*g.dart_colour(d));
    if (g.dart_colour(r)) out << ", reverse_colour=" << quote(*g.dart_colour(r));
    out << "];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace leighton
