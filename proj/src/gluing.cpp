#include "leighton/gluing.hpp"

#include <algorithm>
#include <deque>

#include "leighton/ball_system.hpp"
#include "leighton/errors.hpp"
#include "leighton/star_system.hpp"

namespace leighton {

namespace {

const char* const kMidpoint = "~midpoint";

std::string component_problem(const GraphMorphism& m1, const GraphMorphism& m2,
                              const std::vector<int>& comp) {
  Subgraph s = induced_subgraph(m1.source, comp);
  for (const auto* m : {&m1, &m2}) {
    GraphMorphism r{s.graph, m->target, {}, {}};
    for (int v : s.inclusion.vmap) r.vmap.push_back(m->vmap[v]);
    for (int d : s.inclusion.dmap) r.dmap.push_back(m->dmap[d]);
    auto c = is_covering(r);
    if (!c.ok) return c.failures.front().reason;
  }
  return {};
}

// Component sizes, a per-component covering check, and the optional
// restriction to the least component.
void finish(Glued& out, bool least) {
  auto comps = components(*out.graph);
  out.total_vertices = out.graph->num_vertices();
  out.component_sizes.clear();
  for (const auto& c : comps) {
    out.component_sizes.push_back(static_cast<std::int64_t>(c.size()));
    if (auto p = component_problem(out.mu1, out.mu2, c); !p.empty())
      throw VerificationError("glued component fails to cover: " + p);
  }
  if (!least || comps.size() <= 1) return;
  auto best = *std::min_element(comps.begin(), comps.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a.front() < b.front();
  });
  Subgraph s = induced_subgraph(out.graph, best);
  out.graph = s.graph;
  out.mu1 = compose(out.mu1, s.inclusion);
  out.mu2 = compose(out.mu2, s.inclusion);
}

}  // namespace

GluingData enumerate_pairs(const LocalSystem& sys) {
  require_axioms(sys);
  const Graph& g1 = *sys.g1;
  const Graph& g2 = *sys.g2;
  int D1 = g1.num_darts();
  int D = D1 + g2.num_darts();
  // Signs on G1 ⊔ G2 darts: atoms join equal signs, reversal flips the sign.
  std::vector<std::vector<std::pair<int, int>>> link(D);
  auto rev = [&](int d) { return d < D1 ? g1.reverse(d) : D1 + g2.reverse(d - D1); };
  for (int d = 0; d < D; ++d) link[d].push_back({rev(d), 1});
  for (const auto& a : sys.atoms) {
    link[a.e].push_back({D1 + a.f, 0});
    link[D1 + a.f].push_back({a.e, 0});
  }
  std::vector<int> sign(D, -1);
  for (int s = 0; s < D; ++s) {
    if (sign[s] >= 0) continue;
    sign[s] = 1;
    std::deque<int> q{s};
    while (!q.empty()) {
      int d = q.front();
      q.pop_front();
      for (auto [w, flip] : link[d]) {
        int want = flip ? 1 - sign[d] : sign[d];
        if (sign[w] < 0) {
          sign[w] = want;
          q.push_back(w);
        } else if (sign[w] != want) {
          throw OrientationError("orientation required: subdivide");
        }
      }
    }
  }
  GluingData data;
  data.sys = &sys;
  data.positive1.assign(sign.begin(), sign.begin() + D1);
  data.positive2.assign(sign.begin() + D1, sign.end());
  std::vector<int> face_of(sys.atoms.size(), -1);
  for (int a = 0; a < static_cast<int>(sys.atoms.size()); ++a)
    if (data.positive1[sys.atoms[a].e]) {
      face_of[a] = static_cast<int>(data.faces.size());
      data.faces.push_back({a, sys.atoms[a].e, sys.atoms[a].f});
    }
  data.left.assign(data.faces.size(), {});
  data.right.assign(data.faces.size(), {});
  for (int i = 0; i < static_cast<int>(sys.arrows.size()); ++i) {
    const auto& c = sys.arrows[i];
    data.pairs.push_back({i, c.x, c.y});
    for (int a : c.star_atoms) {
      if (face_of[a] >= 0) data.left[face_of[a]].push_back(i);
      else data.right[face_of[sys.atoms[a].bar]].push_back(i);
    }
  }
  // Coset correspondence: |←F| = |Γ(x,-)| / |Δ(e)| on each side.
  for (std::size_t k = 0; k < data.faces.size(); ++k) {
    int e = data.faces[k].e;
    std::int64_t l = sys.out_size[g1.origin(e)] / sys.orbit_size[e];
    std::int64_t r = sys.out_size[g1.terminus(e)] / sys.orbit_size[g1.reverse(e)];
    if (static_cast<std::int64_t>(data.left[k].size()) != l ||
        static_cast<std::int64_t>(data.right[k].size()) != r)
      throw VerificationError("coset correspondence fails at face over " + g1.dart_id(e));
  }
  return data;
}

WeightFn gluing_weights(const GluingData& data, std::vector<FaceBalance>* balance) {
  const LocalSystem& sys = *data.sys;
  std::vector<std::int64_t> sizes(sys.out_size);
  sizes.insert(sizes.end(), sys.orbit_size.begin(), sys.orbit_size.end());
  WeightFn w;
  w.scale = schedule_N(sizes);
  for (const auto& p : data.pairs) {
    std::int64_t den = sys.out_size[p.x];
    if (w.scale % den != 0) throw VerificationError("weight is not integral");
    w.denominator.push_back(den);
    w.weight.push_back(w.scale / den);
  }
  if (balance) balance->clear();
  for (std::size_t k = 0; k < data.faces.size(); ++k) {
    FaceBalance b;
    for (int p : data.left[k]) b.left += w.weight[p];
    for (int p : data.right[k]) b.right += w.weight[p];
    b.expected = w.scale / sys.orbit_size[data.faces[k].e];
    if (b.left != b.right || b.left != b.expected)
      throw VerificationError("gluing equation unbalanced at face over " +
                              sys.g1->dart_id(data.faces[k].e));
    if (balance) balance->push_back(b);
  }
  return w;
}

Glued assemble(const GluingData& data, const WeightFn& weights, std::int64_t multiplier, bool least,
               std::int64_t max_vertices) {
  if (multiplier < 1) throw InputError("weight multiplier must be positive");
  const LocalSystem& sys = *data.sys;
  const Graph& g1 = *sys.g1;
  const Graph& g2 = *sys.g2;
  int np = static_cast<int>(data.pairs.size());
  std::vector<std::int64_t> base(np + 1, 0), copies(np);
  for (int p = 0; p < np; ++p) {
    BigInt c = weights.weight[p] * multiplier;
    copies[p] = checked_int(c, max_vertices, "pair copies");
    base[p + 1] = base[p] + copies[p];
    if (base[p + 1] > max_vertices)
      throw BudgetExceeded("assembly exceeds " + std::to_string(max_vertices) + " vertices");
  }
  std::int64_t nv = base[np];
  // Slots of a face side: (pair, copy) in pair order, then copy order.
  auto slots = [&](const std::vector<int>& side) {
    std::vector<std::int64_t> s;
    for (int p : side)
      for (std::int64_t j = 0; j < copies[p]; ++j) s.push_back(base[p] + j);
    return s;
  };
  struct Edge {
    std::int64_t from, to;
    int face;
  };
  std::vector<Edge> edges;
  for (std::size_t k = 0; k < data.faces.size(); ++k) {
    auto l = slots(data.left[k]);
    auto r = slots(data.right[k]);
    if (l.size() != r.size()) throw VerificationError("face slots cannot be matched");
    for (std::size_t i = 0; i < l.size(); ++i) edges.push_back({l[i], r[i], static_cast<int>(k)});
  }
  std::int64_t ne = static_cast<std::int64_t>(edges.size());
  auto vid = [&](std::int64_t v) { return "p" + padded(v, nv); };
  auto did = [&](std::int64_t i, bool back) { return "g" + padded(i, ne) + (back ? "-" : "+"); };
  GraphBuilder gb;
  std::vector<int> owner(nv);
  for (int p = 0; p < np; ++p)
    for (std::int64_t v = base[p]; v < base[p + 1]; ++v) {
      gb.add_vertex(vid(v), g1.vertex_colour(data.pairs[p].x));
      owner[v] = p;
    }
  for (std::int64_t i = 0; i < ne; ++i) {
    const FacePair& F = data.faces[edges[i].face];
    gb.add_edge(did(i, false), did(i, true), vid(edges[i].from), vid(edges[i].to),
                g1.dart_colour(F.e), g1.dart_colour(g1.reverse(F.e)));
  }
  Glued out;
  out.graph = gb.build();
  const Graph& h = *out.graph;
  out.mu1 = {out.graph, sys.g1, std::vector<int>(h.num_vertices()), std::vector<int>(h.num_darts())};
  out.mu2 = {out.graph, sys.g2, std::vector<int>(h.num_vertices()), std::vector<int>(h.num_darts())};
  for (std::int64_t v = 0; v < nv; ++v) {
    int i = h.vertex_index(vid(v));
    out.mu1.vmap[i] = data.pairs[owner[v]].x;
    out.mu2.vmap[i] = data.pairs[owner[v]].y;
  }
  for (std::int64_t i = 0; i < ne; ++i) {
    const FacePair& F = data.faces[edges[i].face];
    int fwd = h.dart_index(did(i, false)), back = h.dart_index(did(i, true));
    out.mu1.dmap[fwd] = F.e;
    out.mu1.dmap[back] = g1.reverse(F.e);
    out.mu2.dmap[fwd] = F.f;
    out.mu2.dmap[back] = g2.reverse(F.f);
  }
  finish(out, least);
  return out;
}

bool is_midpoint(const Graph& g, int v) {
  return g.vertex_colour(v) && *g.vertex_colour(v) == kMidpoint;
}

Subdivision subdivide(const GraphPtr& gp) {
  const Graph& g = *gp;
  for (int v = 0; v < g.num_vertices(); ++v)
    if (is_midpoint(g, v)) throw InputError("vertex colour is reserved for subdivision");
  GraphBuilder gb;
  for (int v = 0; v < g.num_vertices(); ++v) gb.add_vertex(g.vertex_id(v), g.vertex_colour(v));
  auto mid = [&](int d) { return "~" + g.dart_id(std::min(d, g.reverse(d))); };
  for (int d = 0; d < g.num_darts(); ++d) {
    if (d < g.reverse(d)) gb.add_vertex(mid(d), Colour(kMidpoint));
    gb.add_edge(g.dart_id(d), g.dart_id(d) + "~", g.vertex_id(g.origin(d)), mid(d),
                g.dart_colour(d), g.dart_colour(d));
  }
  Subdivision s;
  s.original = gp;
  s.graph = gb.build();
  s.original_dart.assign(s.graph->num_darts(), -1);
  for (int d = 0; d < g.num_darts(); ++d) s.original_dart[s.graph->dart_index(g.dart_id(d))] = d;
  return s;
}

Glued smooth(const Glued& in, const Subdivision& s1, const Subdivision& s2) {
  const Graph& h = *in.graph;
  GraphBuilder gb;
  for (int v = 0; v < h.num_vertices(); ++v)
    if (!is_midpoint(*s1.graph, in.mu1.vmap[v])) gb.add_vertex(h.vertex_id(v), h.vertex_colour(v));
  std::vector<int> kept;
  for (int d = 0; d < h.num_darts(); ++d) {
    int m = h.terminus(d);
    if (is_midpoint(*s1.graph, in.mu1.vmap[h.origin(d)])) continue;
    const auto& st = h.star(m);
    if (st.size() != 2) throw VerificationError("midpoint of degree other than 2");
    int other = st[0] == h.reverse(d) ? st[1] : st[0];
    gb.add_dart(h.dart_id(d), h.dart_id(h.reverse(other)), h.vertex_id(h.origin(d)), h.dart_colour(d));
    kept.push_back(d);
  }
  Glued out;
  out.subdivided = true;
  out.graph = gb.build();
  const Graph& g = *out.graph;
  out.mu1 = {out.graph, s1.original, std::vector<int>(g.num_vertices()), std::vector<int>(g.num_darts())};
  out.mu2 = {out.graph, s2.original, std::vector<int>(g.num_vertices()), std::vector<int>(g.num_darts())};
  for (int v = 0; v < h.num_vertices(); ++v) {
    if (is_midpoint(*s1.graph, in.mu1.vmap[v])) continue;
    int i = g.vertex_index(h.vertex_id(v));
    out.mu1.vmap[i] = s1.original->vertex_index(s1.graph->vertex_id(in.mu1.vmap[v]));
    out.mu2.vmap[i] = s2.original->vertex_index(s2.graph->vertex_id(in.mu2.vmap[v]));
  }
  for (int d : kept) {
    int i = g.dart_index(h.dart_id(d));
    out.mu1.dmap[i] = s1.original_dart[in.mu1.dmap[d]];
    out.mu2.dmap[i] = s2.original_dart[in.mu2.dmap[d]];
  }
  finish(out, false);
  return out;
}

Glued glue_cover(const GraphPtr& g1, const GraphPtr& g2, int R, bool least) {
  BallSystem s = build_ball_system_auto(g1, g2, R, default_radius(g1, g2, R));
  try {
    GluingData data = enumerate_pairs(s.local);
    return assemble(data, gluing_weights(data), 1, least);
  } catch (const OrientationError&) {
  }
  Subdivision s1 = subdivide(g1), s2 = subdivide(g2);
  BallSystem t = build_ball_system_auto(s1.graph, s2.graph, 2 * R,
                                        default_radius(s1.graph, s2.graph, 2 * R));
  GluingData data = enumerate_pairs(t.local);
  Glued sub = assemble(data, gluing_weights(data), 1, least);
  return smooth(sub, s1, s2);
}

}  // namespace leighton
