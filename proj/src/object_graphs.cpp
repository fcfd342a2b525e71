#include "leighton/object_graphs.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <tuple>

#include "leighton/errors.hpp"
#include "leighton/star_system.hpp"
#include "leighton/universal_cover.hpp"

namespace leighton {

namespace {

bool is_bijection(const std::vector<int>& m, std::size_t n) {
  if (m.size() != n) return false;
  std::vector<char> seen(n, 0);
  for (int x : m) {
    if (x < 0 || static_cast<std::size_t>(x) >= n || seen[x]) return false;
    seen[x] = 1;
  }
  return true;
}

std::string object_problem(const FiniteObject& x) {
  int n = static_cast<int>(x.labels.size());
  for (std::size_t i = 0; i < x.arcs.size(); ++i)
    if (x.arcs[i].from < 0 || x.arcs[i].from >= n || x.arcs[i].to < 0 || x.arcs[i].to >= n)
      return "arc " + std::to_string(i) + " has an endpoint outside the object";
  return {};
}

// First element where outer1∘inner1 and outer2∘inner2 disagree, or empty.
std::string square_mismatch(const ObjMap& outer1, const ObjMap& inner1, const ObjMap& outer2,
                            const ObjMap& inner2) {
  for (std::size_t i = 0; i < inner1.vmap.size(); ++i)
    if (outer1.vmap[inner1.vmap[i]] != outer2.vmap[inner2.vmap[i]])
      return "vertex " + std::to_string(i);
  for (std::size_t i = 0; i < inner1.amap.size(); ++i)
    if (outer1.amap[inner1.amap[i]] != outer2.amap[inner2.amap[i]])
      return "arc " + std::to_string(i);
  return {};
}

using ArcClass = std::tuple<int, int, std::string>;

// Extends a partial assignment to an isomorphism s -> t; -1 marks free slots.
std::optional<ObjMap> extend_isomorphism(const FiniteObject& s, const FiniteObject& t,
                                         ObjMap partial) {
  int n = static_cast<int>(s.labels.size());
  int m = static_cast<int>(s.arcs.size());
  if (t.labels.size() != s.labels.size() || t.arcs.size() != s.arcs.size()) return std::nullopt;
  std::vector<char> vused(n, 0), aused(m, 0);
  for (int v = 0; v < n; ++v)
    if (partial.vmap[v] >= 0) {
      int w = partial.vmap[v];
      if (vused[w] || s.labels[v] != t.labels[w]) return std::nullopt;
      vused[w] = 1;
    }
  for (int a = 0; a < m; ++a)
    if (partial.amap[a] >= 0) {
      int b = partial.amap[a];
      if (aused[b] || s.arcs[a].label != t.arcs[b].label) return std::nullopt;
      aused[b] = 1;
    }
  // Arc multiplicities between vertex pairs, to prune partial vertex maps.
  std::map<ArcClass, int> scount, tcount;
  for (const auto& a : s.arcs) ++scount[{a.from, a.to, a.label}];
  for (const auto& a : t.arcs) ++tcount[{a.from, a.to, a.label}];
  auto consistent = [&](const std::vector<int>& vm) {
    for (const auto& [c, k] : scount) {
      auto [f, to, l] = c;
      if (vm[f] < 0 || vm[to] < 0) continue;
      auto it = tcount.find({vm[f], vm[to], l});
      if (it == tcount.end() || it->second != k) return false;
    }
    for (int a = 0; a < m; ++a) {
      int b = partial.amap[a];
      if (b < 0) continue;
      const auto& A = s.arcs[a];
      if (vm[A.from] >= 0 && vm[A.from] != t.arcs[b].from) return false;
      if (vm[A.to] >= 0 && vm[A.to] != t.arcs[b].to) return false;
    }
    return true;
  };
  std::vector<int> vm = partial.vmap;
  if (!consistent(vm)) return std::nullopt;
  std::optional<ObjMap> found;
  std::function<void(int)> rec = [&](int v) {
    if (found) return;
    while (v < n && vm[v] >= 0) ++v;
    if (v == n) {
      ObjMap r{vm, partial.amap};
      std::vector<char> used = aused;
      for (int a = 0; a < m; ++a) {
        if (r.amap[a] >= 0) continue;
        const auto& A = s.arcs[a];
        for (int b = 0; b < m; ++b)
          if (!used[b] && t.arcs[b].label == A.label && t.arcs[b].from == vm[A.from] &&
              t.arcs[b].to == vm[A.to]) {
            used[b] = 1;
            r.amap[a] = b;
            break;
          }
        if (r.amap[a] < 0) return;
      }
      found = std::move(r);
      return;
    }
    for (int w = 0; w < n && !found; ++w)
      if (!vused[w] && s.labels[v] == t.labels[w]) {
        vused[w] = 1;
        vm[v] = w;
        if (consistent(vm)) rec(v + 1);
        vm[v] = -1;
        vused[w] = 0;
      }
  };
  rec(0);
  return found;
}

std::string hat_key(const StarMap& a) {
  std::string k = std::to_string(a.source) + ">" + std::to_string(a.target) + ":";
  for (std::size_t i = 0; i < a.hat.size(); ++i) {
    if (i) k += ",";
    k += std::to_string(a.hat[i]);
  }
  k += ";";
  for (const auto& m : a.edge) k += map_key(m) + "/";
  return k;
}

ArrowOps<StarMap> object_ops(const ObjectGraphPtr& uni) {
  auto pos = std::make_shared<std::vector<int>>(star_positions(*uni->graph));
  ArrowOps<StarMap> ops;
  ops.source = [](const StarMap& a) { return a.source; };
  ops.target = [](const StarMap& a) { return a.target; };
  ops.identity = [uni](int x) {
    StarMap r{x, x, uni->graph->star(x), {}, identity_map(uni->vertex_object[x])};
    for (int d : r.hat) r.edge.push_back(identity_map(uni->edge_object[d]));
    return r;
  };
  ops.compose = [pos](const StarMap& g, const StarMap& f) {
    if (f.target != g.source) throw InputError("star maps are not composable");
    StarMap r{f.source, g.target, std::vector<int>(f.hat.size()), std::vector<ObjMap>(f.hat.size()),
              leighton::compose(*g.vertex, *f.vertex)};
    for (std::size_t i = 0; i < f.hat.size(); ++i) {
      int j = (*pos)[f.hat[i]];
      r.hat[i] = g.hat[j];
      r.edge[i] = leighton::compose(g.edge[j], f.edge[i]);
    }
    return r;
  };
  ops.inverse = [uni, pos](const StarMap& f) {
    StarMap r{f.target, f.source, std::vector<int>(f.hat.size()), std::vector<ObjMap>(f.hat.size()),
              leighton::inverse(*f.vertex)};
    const auto& st = uni->graph->star(f.source);
    for (std::size_t i = 0; i < f.hat.size(); ++i) {
      int j = (*pos)[f.hat[i]];
      r.hat[j] = st[i];
      r.edge[j] = leighton::inverse(f.edge[i]);
    }
    return r;
  };
  ops.key = hat_key;
  return ops;
}

std::string delta_key(int e, int f, const ObjMap& b) {
  return std::to_string(e) + ">" + std::to_string(f) + ";" + map_key(b);
}

}  // namespace

std::optional<std::string> a_morphism_problem(const FiniteObject& s, const FiniteObject& t,
                                              const ObjMap& m) {
  if (m.vmap.size() != s.labels.size() || m.amap.size() != s.arcs.size())
    return "map size does not match the source object";
  for (std::size_t v = 0; v < m.vmap.size(); ++v) {
    int w = m.vmap[v];
    if (w < 0 || static_cast<std::size_t>(w) >= t.labels.size())
      return "vertex " + std::to_string(v) + " maps outside the target";
    if (s.labels[v] != t.labels[w]) return "vertex " + std::to_string(v) + " changes label";
  }
  for (std::size_t a = 0; a < m.amap.size(); ++a) {
    int b = m.amap[a];
    if (b < 0 || static_cast<std::size_t>(b) >= t.arcs.size())
      return "arc " + std::to_string(a) + " maps outside the target";
    const auto& A = s.arcs[a];
    const auto& B = t.arcs[b];
    if (A.label != B.label) return "arc " + std::to_string(a) + " changes label";
    if (m.vmap[A.from] != B.from || m.vmap[A.to] != B.to)
      return "arc " + std::to_string(a) + " does not respect incidence";
  }
  return std::nullopt;
}

bool is_a_morphism(const FiniteObject& s, const FiniteObject& t, const ObjMap& m) {
  return !a_morphism_problem(s, t, m);
}

bool is_b_morphism(const FiniteObject& s, const FiniteObject& t, const ObjMap& m) {
  return is_a_morphism(s, t, m) && s.labels.size() == t.labels.size() &&
         s.arcs.size() == t.arcs.size() && is_bijection(m.vmap, t.labels.size()) &&
         is_bijection(m.amap, t.arcs.size());
}

ObjMap identity_map(const FiniteObject& x) {
  ObjMap m{std::vector<int>(x.labels.size()), std::vector<int>(x.arcs.size())};
  for (std::size_t i = 0; i < m.vmap.size(); ++i) m.vmap[i] = static_cast<int>(i);
  for (std::size_t i = 0; i < m.amap.size(); ++i) m.amap[i] = static_cast<int>(i);
  return m;
}

ObjMap compose(const ObjMap& second, const ObjMap& first) {
  ObjMap r{std::vector<int>(first.vmap.size()), std::vector<int>(first.amap.size())};
  for (std::size_t i = 0; i < r.vmap.size(); ++i) r.vmap[i] = second.vmap[first.vmap[i]];
  for (std::size_t i = 0; i < r.amap.size(); ++i) r.amap[i] = second.amap[first.amap[i]];
  return r;
}

ObjMap inverse(const ObjMap& m) {
  ObjMap r{std::vector<int>(m.vmap.size()), std::vector<int>(m.amap.size())};
  for (std::size_t i = 0; i < m.vmap.size(); ++i) r.vmap[m.vmap[i]] = static_cast<int>(i);
  for (std::size_t i = 0; i < m.amap.size(); ++i) r.amap[m.amap[i]] = static_cast<int>(i);
  return r;
}

std::string map_key(const ObjMap& m) {
  std::string k = "v";
  for (std::size_t i = 0; i < m.vmap.size(); ++i) k += (i ? "," : "") + std::to_string(m.vmap[i]);
  k += "a";
  for (std::size_t i = 0; i < m.amap.size(); ++i) k += (i ? "," : "") + std::to_string(m.amap[i]);
  return k;
}

FiniteObject cycle_object(int n, const std::string& label) {
  FiniteObject x;
  x.labels.assign(n, label);
  for (int i = 0; i < n; ++i) x.arcs.push_back({i, (i + 1) % n, label});
  return x;
}

ObjMap rotation(int n, int k) {
  ObjMap m{std::vector<int>(n), std::vector<int>(n)};
  for (int i = 0; i < n; ++i) m.vmap[i] = m.amap[i] = (((i + k) % n) + n) % n;
  return m;
}

ObjectGraphPtr trivial_objects(const GraphPtr& g) {
  auto x = std::make_shared<ObjectGraph>();
  x->graph = g;
  FiniteObject point{{""}, {}};
  x->vertex_object.assign(g->num_vertices(), point);
  x->edge_object.assign(g->num_darts(), point);
  x->edge_map.assign(g->num_darts(), ObjMap{{0}, {}});
  return x;
}

ValidationReport validate_object_graph(const ObjectGraph& x) {
  ValidationReport r;
  auto bad = [&](std::string s) {
    r.ok = false;
    r.violations.push_back(std::move(s));
  };
  if (!x.graph) {
    bad("missing underlying graph");
    return r;
  }
  const Graph& g = *x.graph;
  auto base = validate_graph(g);
  for (auto& v : base.violations) bad(v);
  if (static_cast<int>(x.vertex_object.size()) != g.num_vertices() ||
      static_cast<int>(x.edge_object.size()) != g.num_darts() ||
      static_cast<int>(x.edge_map.size()) != g.num_darts()) {
    bad("object lists do not match the underlying graph");
    return r;
  }
  for (int v = 0; v < g.num_vertices(); ++v)
    if (auto p = object_problem(x.vertex_object[v]); !p.empty())
      bad("object at vertex " + g.vertex_id(v) + ": " + p);
  for (int d = 0; d < g.num_darts(); ++d) {
    if (auto p = object_problem(x.edge_object[d]); !p.empty()) {
      bad("object at dart " + g.dart_id(d) + ": " + p);
      continue;
    }
    if (!(x.edge_object[d] == x.edge_object[g.reverse(d)]))
      bad("edge object at dart " + g.dart_id(d) + " differs from that of its reverse");
    if (auto p = a_morphism_problem(x.edge_object[d], x.vertex_object[g.origin(d)], x.edge_map[d]))
      bad("edge morphism at dart " + g.dart_id(d) + " is not a morphism: " + *p);
  }
  return r;
}

ObjectGraphPtr object_union(const ObjectGraph& a, const ObjectGraph& b) {
  auto u = std::make_shared<ObjectGraph>();
  u->graph = disjoint_union(a.graph, b.graph);
  u->vertex_object = a.vertex_object;
  u->vertex_object.insert(u->vertex_object.end(), b.vertex_object.begin(), b.vertex_object.end());
  u->edge_object = a.edge_object;
  u->edge_object.insert(u->edge_object.end(), b.edge_object.begin(), b.edge_object.end());
  u->edge_map = a.edge_map;
  u->edge_map.insert(u->edge_map.end(), b.edge_map.begin(), b.edge_map.end());
  return u;
}

CoveringVerdict verify_object_covering(const ObjectMorphism& f) {
  auto fail = [](std::string s) { return CoveringVerdict{false, std::move(s)}; };
  const ObjectGraph& s = *f.source;
  const ObjectGraph& t = *f.target;
  const Graph& gs = *s.graph;
  const Graph& gt = *t.graph;
  if (auto p = morphism_problem(f.hat)) return fail("underlying map is not a graph morphism: " + *p);
  if (static_cast<int>(f.vertex.size()) != gs.num_vertices() ||
      static_cast<int>(f.edge.size()) != gs.num_darts())
    return fail("object maps do not match the underlying graph");
  auto cov = is_covering(f.hat);
  if (!cov.ok) return fail("underlying map is not a covering: " + cov.failures.front().reason);
  for (int v = 0; v < gs.num_vertices(); ++v)
    if (!is_b_morphism(s.vertex_object[v], t.vertex_object[f.hat.vmap[v]], f.vertex[v]))
      return fail("vertex map at " + gs.vertex_id(v) + " is not a bijective morphism");
  for (int d = 0; d < gs.num_darts(); ++d) {
    int fd = f.hat.dmap[d];
    if (!is_b_morphism(s.edge_object[d], t.edge_object[fd], f.edge[d]))
      return fail("edge map at " + gs.dart_id(d) + " is not a bijective morphism");
    if (!(f.edge[d] == f.edge[gs.reverse(d)]))
      return fail("edge maps differ on dart " + gs.dart_id(d) + " and its reverse");
    auto m0 = square_mismatch(f.vertex[gs.origin(d)], s.phi0(d), t.phi0(fd), f.edge[d]);
    if (!m0.empty())
      return fail("square at origin of dart " + gs.dart_id(d) + " over " + gt.dart_id(fd) +
                  " fails on " + m0);
    auto m1 = square_mismatch(f.vertex[gs.terminus(d)], s.phi1(d), t.phi1(fd), f.edge[d]);
    if (!m1.empty())
      return fail("square at terminus of dart " + gs.dart_id(d) + " over " + gt.dart_id(fd) +
                  " fails on " + m1);
  }
  return {};
}

ObjectMorphism identity_object_morphism(const ObjectGraphPtr& x) {
  ObjectMorphism m{x, x, identity_morphism(x->graph), {}, {}};
  for (const auto& o : x->vertex_object) m.vertex.push_back(identity_map(o));
  for (const auto& o : x->edge_object) m.edge.push_back(identity_map(o));
  return m;
}

VertexSearch find_vertex_morphism(const ObjectGraph& uni, const StarMap& s) {
  const Graph& g = *uni.graph;
  const FiniteObject& X = uni.vertex_object[s.source];
  const FiniteObject& Y = uni.vertex_object[s.target];
  const auto& st = g.star(s.source);
  if (s.vertex) {
    if (!is_b_morphism(X, Y, *s.vertex)) return {std::nullopt, "vertex map is not a bijective morphism"};
    for (std::size_t i = 0; i < st.size(); ++i) {
      auto m = square_mismatch(*s.vertex, uni.phi0(st[i]), uni.phi0(s.hat[i]), s.edge[i]);
      if (!m.empty())
        return {std::nullopt, "square at dart " + g.dart_id(st[i]) + " fails on " + m};
    }
    return {s.vertex, {}};
  }
  ObjMap forced{std::vector<int>(X.labels.size(), -1), std::vector<int>(X.arcs.size(), -1)};
  for (std::size_t i = 0; i < st.size(); ++i) {
    const ObjMap& in = uni.phi0(st[i]);
    const ObjMap& out = uni.phi0(s.hat[i]);
    const ObjMap& b = s.edge[i];
    for (std::size_t x = 0; x < in.vmap.size(); ++x) {
      int want = out.vmap[b.vmap[x]];
      int& slot = forced.vmap[in.vmap[x]];
      if (slot >= 0 && slot != want)
        return {std::nullopt, "square at dart " + g.dart_id(st[i]) + " fails on vertex " +
                                  std::to_string(x) + " for every vertex map"};
      slot = want;
    }
    for (std::size_t x = 0; x < in.amap.size(); ++x) {
      int want = out.amap[b.amap[x]];
      int& slot = forced.amap[in.amap[x]];
      if (slot >= 0 && slot != want)
        return {std::nullopt, "square at dart " + g.dart_id(st[i]) + " fails on arc " +
                                  std::to_string(x) + " for every vertex map"};
      slot = want;
    }
  }
  auto m = extend_isomorphism(X, Y, forced);
  if (!m)
    return {std::nullopt, "no bijective vertex morphism " + g.vertex_id(s.source) + " -> " +
                              g.vertex_id(s.target) + " makes the squares commute"};
  return {m, {}};
}

int ObjectSystem::find_delta(const EdgeDatum& d) const {
  auto it = delta_index.find(delta_key(d.e, d.f, d.b));
  return it == delta_index.end() ? -1 : it->second;
}

ObjectSystem close_star_maps(const ObjectGraphPtr& x1, const ObjectGraphPtr& x2,
                             std::vector<StarMap> seeds, std::size_t cap) {
  for (const auto* x : {x1.get(), x2.get()}) {
    auto r = validate_object_graph(*x);
    if (!r.ok) throw InputError("invalid object graph: " + r.violations.front());
  }
  ObjectSystem s;
  s.x1 = x1;
  s.x2 = x2;
  s.uni = object_union(*x1, *x2);
  const ObjectGraph& U = *s.uni;
  const Graph& u = *U.graph;
  int nv = u.num_vertices();
  int n1 = x1->graph->num_vertices();
  int D1 = x1->graph->num_darts();
  auto pos = star_positions(u);

  for (std::size_t k = 0; k < seeds.size(); ++k) {
    StarMap& a = seeds[k];
    std::string name = "seed " + std::to_string(k);
    if (a.source < 0 || a.source >= nv || a.target < 0 || a.target >= nv)
      throw InputError(name + " has an endpoint outside the graphs");
    name += " (" + u.vertex_id(a.source) + " -> " + u.vertex_id(a.target) + ")";
    const auto& st = u.star(a.source);
    std::vector<int> img;
    for (int f : a.hat) {
      if (f < 0 || f >= u.num_darts() || u.origin(f) != a.target)
        throw InputError(name + " sends a dart outside the target star");
      img.push_back(pos[f]);
    }
    if (a.hat.size() != st.size() || !is_bijection(img, u.star(a.target).size()))
      throw InputError(name + " is not a bijection of stars");
    if (a.edge.size() != st.size()) throw InputError(name + " lacks edge morphisms");
    if (u.vertex_colour(a.source) != u.vertex_colour(a.target))
      throw InputError(name + " changes a vertex colour");
    for (std::size_t i = 0; i < st.size(); ++i) {
      if (u.dart_colour(st[i]) != u.dart_colour(a.hat[i]) ||
          u.dart_colour(u.reverse(st[i])) != u.dart_colour(u.reverse(a.hat[i])))
        throw InputError(name + " changes the colour of dart " + u.dart_id(st[i]));
      if (!is_b_morphism(U.edge_object[st[i]], U.edge_object[a.hat[i]], a.edge[i]))
        throw InputError(name + " has a non-bijective edge morphism at dart " + u.dart_id(st[i]));
    }
    auto found = find_vertex_morphism(U, a);
    if (!found.vertex) throw InputError(name + " rejected: " + found.failure);
    a.vertex = found.vertex;
  }
  s.seeds = seeds;
  auto ops = object_ops(s.uni);
  s.groupoid = saturate_groupoid(nv, seeds, ops, cap);

  // Δ(e) = Γ(origin e, -)·(e, e, 1).
  s.delta_of.assign(u.num_darts(), {});
  for (int e = 0; e < u.num_darts(); ++e) {
    for (int g : s.groupoid.out(u.origin(e))) {
      const StarMap& a = s.groupoid.arrow(g);
      EdgeDatum d{e, a.hat[pos[e]], a.edge[pos[e]]};
      std::string k = delta_key(d.e, d.f, d.b);
      if (s.delta_index.count(k)) continue;
      int id = static_cast<int>(s.delta.size());
      s.delta_index.emplace(std::move(k), id);
      s.delta.push_back(std::move(d));
      s.delta_of[e].push_back(id);
    }
    std::sort(s.delta_of[e].begin(), s.delta_of[e].end(), [&](int a, int b) {
      if (s.delta[a].f != s.delta[b].f) return s.delta[a].f < s.delta[b].f;
      return map_key(s.delta[a].b) < map_key(s.delta[b].b);
    });
  }
  auto act = [&](int g, int a) {
    const StarMap& m = s.groupoid.arrow(g);
    const EdgeDatum& d = s.delta[a];
    int id = s.find_delta({d.e, m.hat[pos[d.f]], compose(m.edge[pos[d.f]], d.b)});
    if (id < 0) throw VerificationError("edge action leaves the edge data at dart " + u.dart_id(d.e));
    return id;
  };

  // Isotropy; |Γ(u,u)| divides |Aut star(u)| · Π |Υ_e|.
  s.isotropy.assign(u.num_darts(), 0);
  for (int e = 0; e < u.num_darts(); ++e)
    for (int a : s.delta_of[e])
      if (s.delta[a].f == e) ++s.isotropy[e];
  for (int v = 0; v < nv; ++v) {
    BigInt bound = 1;
    for (int i = 2; i <= u.degree(v); ++i) bound *= i;
    for (int e : u.star(v)) bound *= s.isotropy[e];
    std::int64_t loops = 0;
    for (int g : s.groupoid.out(v)) loops += s.groupoid.target(g) == v;
    if (loops == 0 || bound % loops != 0)
      throw VerificationError("vertex group order at " + u.vertex_id(v) +
                              " does not divide the isotropy bound");
  }

  AxiomFlags& ax = s.local.axioms;
  std::vector<int> gens;
  for (const auto& a : seeds) {
    gens.push_back(s.groupoid.require(a));
    gens.push_back(s.groupoid.require(ops.inverse(a)));
  }
  GroupoidAction<StarMap> action{&s.groupoid, static_cast<int>(s.delta.size()),
                                 [&](int a) { return u.origin(s.delta[a].f); }, act};
  auto ar = verify_action(action, &gens);
  std::string f3 = ar.ok ? "" : "AX3 " + ar.axiom + ": " + ar.detail;
  for (int e = 0; e < u.num_darts() && f3.empty(); ++e) {
    std::vector<int> want = s.delta_of[e];
    std::sort(want.begin(), want.end());
    for (int a : s.delta_of[e]) {
      std::set<int> orbit;
      for (int g : s.groupoid.out(u.origin(s.delta[a].f))) orbit.insert(act(g, a));
      if (!std::equal(orbit.begin(), orbit.end(), want.begin(), want.end())) {
        f3 = "AX3 orbit law fails at dart " + u.dart_id(e);
        break;
      }
    }
  }
  std::string f1;
  for (int v = 0; v < nv && f1.empty(); ++v) {
    bool hit = false;
    for (int g : s.groupoid.out(v)) hit = hit || ((s.groupoid.target(g) < n1) != (v < n1));
    if (!hit) f1 = "AX1 coverage fails: vertex " + u.vertex_id(v) + " has no cross star map";
  }
  std::string f2;
  for (const auto& d : s.delta)
    if (s.find_delta({u.reverse(d.e), u.reverse(d.f), d.b}) < 0) {
      f2 = "AX2 bar-closure fails at dart " + u.dart_id(d.e) + " over " + u.dart_id(d.f);
      break;
    }
  ax.coverage = f1.empty();
  ax.bar_closure = f2.empty();
  ax.action = f3.empty();
  ax.action_exhaustive = ar.exhaustive;
  std::string first = !f1.empty() ? f1 : !f2.empty() ? f2 : f3;
  if (!first.empty()) ax.failure = "insufficient seeds: " + first;

  LocalSystem& L = s.local;
  L.backend = "objects";
  L.g1 = x1->graph;
  L.g2 = x2->graph;
  if (!(ax.coverage && ax.bar_closure)) return s;
  const Graph& g1 = *x1->graph;
  L.out_size.assign(n1, 0);
  L.orbit_size.assign(D1, 0);
  for (int x = 0; x < n1; ++x) L.out_size[x] = static_cast<std::int64_t>(s.groupoid.out(x).size());
  for (int e = 0; e < D1; ++e) L.orbit_size[e] = static_cast<std::int64_t>(s.delta_of[e].size());
  std::vector<int> atom_of(s.delta.size(), -1);
  for (int e = 0; e < D1; ++e)
    for (int a : s.delta_of[e])
      if (s.delta[a].f >= D1) {
        atom_of[a] = static_cast<int>(L.atoms.size());
        const EdgeDatum& d = s.delta[a];
        L.atoms.push_back({e, d.f - D1, -1, delta_key(e, d.f - D1, d.b), a});
      }
  for (auto& A : L.atoms) {
    const EdgeDatum& d = s.delta[A.payload];
    A.bar = atom_of[s.find_delta({g1.reverse(d.e), u.reverse(d.f), d.b})];
  }
  std::vector<int> cross;
  for (int x = 0; x < n1; ++x)
    for (int g : s.groupoid.out(x))
      if (s.groupoid.target(g) >= n1) cross.push_back(g);
  std::sort(cross.begin(), cross.end(),
            [&](int a, int b) { return s.groupoid.key(a) < s.groupoid.key(b); });
  for (int g : cross) {
    const StarMap& a = s.groupoid.arrow(g);
    CrossArrow c{a.source, a.target - n1, s.groupoid.key(g), {}, g};
    const auto& st = g1.star(a.source);
    for (std::size_t i = 0; i < st.size(); ++i)
      c.star_atoms.push_back(atom_of[s.find_delta({st[i], a.hat[i], a.edge[i]})]);
    L.arrows.push_back(std::move(c));
  }
  return s;
}

std::vector<StarMap> full_trivial_seeds(const ObjectGraphPtr& x1, const ObjectGraphPtr& x2) {
  StarSystem star = build_star_system(x1->graph, x2->graph, StarStrategy::dr_full);
  auto uni = object_union(*x1, *x2);
  std::vector<StarMap> out;
  for (int i = 0; i < star.groupoid.size(); ++i) {
    const StarArrow& a = star.groupoid.arrow(i);
    StarMap m{a.source, a.target, a.map, {}, std::nullopt};
    const auto& st = uni->graph->star(a.source);
    for (std::size_t j = 0; j < st.size(); ++j) {
      if (!(uni->edge_object[st[j]] == uni->edge_object[a.map[j]]))
        throw InputError("full seeds need equal edge objects along every star bijection");
      m.edge.push_back(identity_map(uni->edge_object[st[j]]));
    }
    out.push_back(std::move(m));
  }
  return out;
}

ObjectCover build_object_cover(const ObjectSystem& sys, const BuildOptions& options) {
  ObjectCover oc;
  oc.cover = build_cover(sys.local, options);
  const BuiltCover& bc = oc.cover;
  const ObjectGraph& x1 = *sys.x1;
  const auto& L = sys.local;
  auto w = std::make_shared<ObjectGraph>();
  w->graph = bc.graph;
  const Graph& gw = *bc.graph;
  ObjectMorphism mu1{nullptr, sys.x1, bc.mu1, {}, {}};
  ObjectMorphism mu2{nullptr, sys.x2, bc.mu2, {}, {}};
  for (int v = 0; v < gw.num_vertices(); ++v) {
    const CrossArrow& c = L.arrows[bc.vertex_label[v].arrow];
    w->vertex_object.push_back(x1.vertex_object[c.x]);
    mu1.vertex.push_back(identity_map(x1.vertex_object[c.x]));
    mu2.vertex.push_back(*sys.groupoid.arrow(c.payload).vertex);
  }
  for (int d = 0; d < gw.num_darts(); ++d) {
    const CrossAtom& A = L.atoms[bc.dart_label[d].atom];
    w->edge_object.push_back(x1.edge_object[A.e]);
    w->edge_map.push_back(x1.edge_map[A.e]);
    mu1.edge.push_back(identity_map(x1.edge_object[A.e]));
    mu2.edge.push_back(sys.delta[A.payload].b);
  }
  auto valid = validate_object_graph(*w);
  if (!valid.ok) throw VerificationError("assembled object graph invalid: " + valid.violations.front());
  oc.w = w;
  mu1.source = w;
  mu2.source = w;
  if (auto v = verify_object_covering(mu1); !v.ok) throw VerificationError("mu1: " + v.failure);
  if (auto v = verify_object_covering(mu2); !v.ok) throw VerificationError("mu2: " + v.failure);
  oc.mu1 = std::move(mu1);
  oc.mu2 = std::move(mu2);
  return oc;
}

}  // namespace leighton
