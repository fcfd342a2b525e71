#include "leighton/ball_system.hpp"

#include <algorithm>
#include <cstring>
#include <numeric>
#include <set>

#include "leighton/errors.hpp"

namespace leighton {

namespace {

std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s;
}

}  // namespace

namespace {

std::string pack(int source, int target, const std::vector<int>& map) {
  std::string k(sizeof(int) * (map.size() + 2), '\0');
  std::memcpy(k.data(), &source, sizeof(int));
  std::memcpy(k.data() + sizeof(int), &target, sizeof(int));
  if (!map.empty()) std::memcpy(k.data() + 2 * sizeof(int), map.data(), sizeof(int) * map.size());
  return k;
}

}  // namespace

std::string ball_key(const BallArrow& a) { return pack(a.source, a.target, a.map); }
std::string edge_key(const EdgeMap& a) { return pack(a.source, a.target, a.map); }

std::string ball_text(const BallArrow& a) {
  return std::to_string(a.source) + ">" + std::to_string(a.target) + ":" + join(a.map) + ";";
}

std::string edge_text(const EdgeMap& a) {
  return std::to_string(a.source) + ">" + std::to_string(a.target) + ":" + join(a.map) + ";";
}

BallShapes ball_shapes(const GraphPtr& uni, int radius) {
  if (radius < 1) throw InputError("ball radius must be at least 1");
  const Graph& g = *uni;
  BallShapes s;
  s.uni = uni;
  s.radius = radius;
  for (int v = 0; v < g.num_vertices(); ++v) s.tree.push_back(walk_tree(g, v, radius));
  s.nbhd.resize(g.num_darts());
  s.nbhd_pos.resize(g.num_darts());
  s.reroot.resize(g.num_darts());
  for (int e = 0; e < g.num_darts(); ++e) {
    const WalkTree& t = s.tree[g.origin(e)];
    std::vector<int> first(t.size(), -1);
    s.nbhd_pos[e].assign(t.size(), -1);
    for (int n = 0; n < t.size(); ++n) {
      if (n > 0) first[n] = t.parent[n] == 0 ? t.dart[n] : first[t.parent[n]];
      if (t.depth[n] <= radius - 1 || first[n] == e) {
        s.nbhd_pos[e][n] = static_cast<int>(s.nbhd[e].size());
        s.nbhd[e].push_back(n);
      }
    }
  }
  for (int e = 0; e < g.num_darts(); ++e) {
    int eb = g.reverse(e);
    const WalkTree& t = s.tree[g.origin(e)];
    const WalkTree& tb = s.tree[g.origin(eb)];
    for (int n : s.nbhd[e]) {
      std::vector<int> w = t.walk(n);
      if (!w.empty() && w.front() == e)
        w.erase(w.begin());
      else
        w.insert(w.begin(), eb);
      int m = tb.find(w);
      int p = m < 0 ? -1 : s.nbhd_pos[eb][m];
      if (p < 0) throw VerificationError("edge neighbourhoods do not reroot");
      s.reroot[e].push_back(p);
    }
  }
  return s;
}

EdgeMap BallShapes::bar(const EdgeMap& d) const {
  const Graph& g = *uni;
  int eb = g.reverse(d.source), fb = g.reverse(d.target);
  EdgeMap r{eb, fb, std::vector<int>(nbhd[eb].size(), -1)};
  for (std::size_t p = 0; p < d.map.size(); ++p) {
    int q = nbhd_pos[d.target][d.map[p]];
    r.map[reroot[d.source][p]] = nbhd[fb][reroot[d.target][q]];
  }
  return r;
}

EdgeMap BallShapes::restrict(const BallArrow& g, int e) const {
  const Graph& u = *uni;
  if (g.source != u.origin(e)) throw InputError("restriction to a dart outside the source star");
  int c = tree[g.source].child(u, 0, e);
  EdgeMap r{e, tree[g.target].dart[g.map[c]], {}};
  for (int n : nbhd[e]) r.map.push_back(g.map[n]);
  return r;
}

ArrowOps<BallArrow> ball_ops(const BallShapes& shapes) {
  auto sizes = std::make_shared<std::vector<int>>();
  for (const auto& t : shapes.tree) sizes->push_back(t.size());
  ArrowOps<BallArrow> ops;
  ops.source = [](const BallArrow& a) { return a.source; };
  ops.target = [](const BallArrow& a) { return a.target; };
  ops.identity = [sizes](int x) {
    BallArrow a{x, x, std::vector<int>((*sizes)[x])};
    std::iota(a.map.begin(), a.map.end(), 0);
    return a;
  };
  ops.compose = [](const BallArrow& g, const BallArrow& f) {
    if (f.target != g.source) throw InputError("ball arrows are not composable");
    BallArrow r{f.source, g.target, std::vector<int>(f.map.size())};
    for (std::size_t n = 0; n < f.map.size(); ++n) r.map[n] = g.map[f.map[n]];
    return r;
  };
  ops.inverse = [](const BallArrow& f) {
    BallArrow r{f.target, f.source, std::vector<int>(f.map.size())};
    for (std::size_t n = 0; n < f.map.size(); ++n) r.map[f.map[n]] = static_cast<int>(n);
    return r;
  };
  ops.key = ball_key;
  return ops;
}

int BallSystem::find_edge(const EdgeMap& d) const {
  auto it = edge_index.find(edge_key(d));
  return it == edge_index.end() ? -1 : it->second;
}

int BallSystem::root_arrow() const {
  auto id = groupoid.find(atoms.front());
  for (std::size_t i = 0; i < local.arrows.size(); ++i)
    if (id && local.arrows[i].payload == *id) return static_cast<int>(i);
  throw VerificationError("basepoint atom is not a cross arrow");
}

DiscoveredAtoms discover_atoms(const GraphPtr& g1, const GraphPtr& g2, int R, int rho) {
  if (rho < 0) throw InputError("explore radius must be non-negative");
  if (R < 1) throw InputError("ball radius must be at least 1");
  DiscoveredAtoms d;
  d.pair = build_theta(g1, g2, 0);
  GraphPtr uni = disjoint_union(g1, g2);
  int n1 = g1->num_vertices(), D1 = g1->num_darts();
  std::vector<WalkTree> trees;
  for (int v = 0; v < uni->num_vertices(); ++v) trees.push_back(walk_tree(*uni, v, R));
  TreeIso& th = *d.pair.theta;
  const UniversalCover& t1 = *d.pair.t1;
  const UniversalCover& t2 = *d.pair.t2;
  std::set<std::string> seen;
  for (const auto& z : theta_representatives(th, rho, R)) {
    int x = t1.project(z);
    int y = n1 + t2.project(th.image(z));
    const WalkTree& T = trees[x];
    const WalkTree& U = trees[y];
    std::vector<TreeVertex> vert(T.size());
    BallArrow a{x, y, std::vector<int>(T.size(), 0)};
    vert[0] = z;
    for (int n = 1; n < T.size(); ++n) {
      int p = T.parent[n], e = T.dart[n];
      int f = th.star_map(vert[p])[t1.positions()[e]];
      vert[n] = t1.step(vert[p], e);
      a.map[n] = U.child(*uni, a.map[p], D1 + f);
      if (a.map[n] < 0) throw VerificationError("theta leaves the target ball");
    }
    if (seen.insert(ball_key(a)).second) {
      d.atoms.push_back(std::move(a));
      d.sites.push_back(z);
      d.depth.push_back(static_cast<int>(z.path.size()));
    }
  }
  return d;
}

namespace {

std::string coverage_problem(const BallSystem& s) {
  int n1 = s.g1->num_vertices();
  for (int v = 0; v < s.uni->num_vertices(); ++v) {
    bool hit = false;
    for (int g : s.groupoid.out(v)) hit = hit || ((s.groupoid.target(g) < n1) != (v < n1));
    if (!hit) return "AX1 coverage fails: vertex " + s.uni->vertex_id(v) + " has no cross arrow";
  }
  return {};
}

EdgeMap act_on(const BallSystem& s, const BallArrow& g, const EdgeMap& d) {
  const Graph& u = *s.uni;
  if (g.source != u.origin(d.target)) throw InputError("arrow does not act on this edge atom");
  const WalkTree& src = s.shapes.tree[g.source];
  int c = src.child(u, 0, d.target);
  EdgeMap r{d.source, s.shapes.tree[g.target].dart[g.map[c]], std::vector<int>(d.map.size())};
  for (std::size_t p = 0; p < d.map.size(); ++p) r.map[p] = g.map[d.map[p]];
  return r;
}

void fill_local(BallSystem& s) {
  const Graph& g1 = *s.g1;
  int n1 = g1.num_vertices(), D1 = g1.num_darts();
  LocalSystem& L = s.local;
  L.out_size.assign(n1, 0);
  L.orbit_size.assign(D1, 0);
  for (int x = 0; x < n1; ++x) L.out_size[x] = static_cast<std::int64_t>(s.groupoid.out(x).size());
  std::vector<int> cross_of(s.edge_atoms.size(), -1);
  for (int e = 0; e < D1; ++e) {
    L.orbit_size[e] = static_cast<std::int64_t>(s.orbit[e].size());
    for (int id : s.orbit[e]) {
      const EdgeMap& d = s.edge_atoms[id];
      if (d.target < D1) continue;
      cross_of[id] = static_cast<int>(L.atoms.size());
      L.atoms.push_back({e, d.target - D1, -1, edge_key(d), id});
    }
  }
  for (auto& A : L.atoms) A.bar = cross_of[s.find_edge(s.shapes.bar(s.edge_atoms[A.payload]))];
  std::vector<int> cross;
  for (int x = 0; x < n1; ++x)
    for (int g : s.groupoid.out(x))
      if (s.groupoid.target(g) >= n1) cross.push_back(g);
  std::sort(cross.begin(), cross.end(),
            [&](int a, int b) { return s.groupoid.key(a) < s.groupoid.key(b); });
  for (int g : cross) {
    const BallArrow& a = s.groupoid.arrow(g);
    CrossArrow c{a.source, a.target - n1, s.groupoid.key(g), {}, g};
    for (int e : g1.star(a.source))
      c.star_atoms.push_back(cross_of[s.find_edge(s.shapes.restrict(a, e))]);
    L.arrows.push_back(std::move(c));
  }
}

}  // namespace

BallSystem build_ball_system(const GraphPtr& g1, const GraphPtr& g2, int R, int rho) {
  BallSystem s;
  DiscoveredAtoms d = discover_atoms(g1, g2, R, rho);
  s.g1 = g1;
  s.g2 = g2;
  s.uni = disjoint_union(g1, g2);
  s.R = R;
  s.rho = rho;
  s.pair = d.pair;
  s.shapes = ball_shapes(s.uni, R);
  s.atoms = std::move(d.atoms);
  s.atom_sites = std::move(d.sites);
  auto ops = ball_ops(s.shapes);
  s.groupoid = saturate_groupoid(s.uni->num_vertices(), s.atoms, ops);

  const Graph& u = *s.uni;
  s.orbit.resize(u.num_darts());
  for (int e = 0; e < u.num_darts(); ++e) {
    for (int g : s.groupoid.out(u.origin(e))) {
      EdgeMap r = s.shapes.restrict(s.groupoid.arrow(g), e);
      std::string k = edge_key(r);
      auto [it, inserted] = s.edge_index.emplace(k, static_cast<int>(s.edge_atoms.size()));
      if (inserted) {
        s.edge_atoms.push_back(std::move(r));
        s.orbit[e].push_back(it->second);
      }
    }
    std::sort(s.orbit[e].begin(), s.orbit[e].end(), [&](int a, int b) {
      return edge_key(s.edge_atoms[a]) < edge_key(s.edge_atoms[b]);
    });
  }

  AxiomFlags& ax = s.local.axioms;
  s.local.backend = "ball";
  s.local.g1 = g1;
  s.local.g2 = g2;
  s.local.radius = rho;

  std::string f1 = coverage_problem(s);
  ax.coverage = f1.empty();

  std::string f2;
  for (int e = 0; e < u.num_darts() && f2.empty(); ++e)
    for (int id : s.orbit[e]) {
      EdgeMap b = s.shapes.bar(s.edge_atoms[id]);
      int bid = s.find_edge(b);
      if (bid < 0) {
        f2 = "AX2 bar-closure fails at dart " + u.dart_id(e) + ": barred atom not reachable";
        break;
      }
      if (edge_key(s.shapes.bar(b)) != edge_key(s.edge_atoms[id])) {
        f2 = "AX2 bar is not an involution at dart " + u.dart_id(e);
        break;
      }
    }
  ax.bar_closure = f2.empty();

  std::vector<int> gens;
  for (const auto& a : s.atoms) {
    gens.push_back(*s.groupoid.find(a));
    gens.push_back(*s.groupoid.find(ops.inverse(a)));
  }
  GroupoidAction<BallArrow> act{
      &s.groupoid, static_cast<int>(s.edge_atoms.size()),
      [&](int a) { return u.origin(s.edge_atoms[a].target); },
      [&](int g, int a) {
        int id = s.find_edge(act_on(s, s.groupoid.arrow(g), s.edge_atoms[a]));
        if (id < 0) throw AxiomError("action leaves the edge atoms");
        return id;
      }};
  std::string f3;
  try {
    auto r = verify_action(act, &gens);
    if (!r.ok) f3 = "AX3 " + r.axiom + ": " + r.detail;
    ax.action_exhaustive = r.exhaustive;
  } catch (const AxiomError& e) {
    f3 = std::string("AX3 ") + e.what();
  }
  ax.action = f3.empty();
  ax.failure = !f1.empty() ? f1 : !f2.empty() ? f2 : f3;
  if (ax.all()) fill_local(s);
  return s;
}

BallSystem build_ball_system_auto(const GraphPtr& g1, const GraphPtr& g2, int R, int rho,
                                  int cap) {
  int r = std::max(rho, 0);
  while (true) {
    BallSystem s = build_ball_system(g1, g2, R, r);
    if (s.local.axioms.all()) return s;
    if (r >= cap) require_axioms(s.local);
    r = std::min(cap, std::max(1, 2 * r));
  }
}

bool verify_witness(const BallSystem& s, const BallArrow& arrow, const Word& witness,
                    std::string* why) {
  auto fail = [&](std::string m) {
    if (why) *why = std::move(m);
    return false;
  };
  int n1 = s.g1->num_vertices(), D1 = s.g1->num_darts();
  const UniversalCover& t1 = *s.pair.t1;
  const UniversalCover& t2 = *s.pair.t2;
  TreeIso& th = *s.pair.theta;
  auto cover = [&](int side) -> const UniversalCover& { return side == 1 ? t1 : t2; };
  auto local_vertex = [&](int v) { return v < n1 ? v : v - n1; };
  auto to_local = [&](int side, std::vector<int> w) {
    if (side == 2)
      for (int& d : w) d -= D1;
    return w;
  };

  int side = arrow.source < n1 ? 1 : 2;
  const WalkTree& src = s.shapes.tree[arrow.source];
  if (static_cast<int>(arrow.map.size()) != src.size()) return fail("node map has the wrong size");
  TreeVertex center = cover(side).canonical_lift(local_vertex(arrow.source));
  std::vector<TreeVertex> verts;
  for (int n = 0; n < src.size(); ++n)
    verts.push_back(cover(side).follow(center, to_local(side, src.walk(n))));

  auto move = [&](const UniversalCover& c, const TreeVertex& to) {
    DeckWord w = c.deck_between(center, to);
    for (auto& v : verts) v = c.deck_transport(w, v);
    center = to;
  };
  for (const Letter& l : witness) {
    if (l.atom < 0 || l.atom >= static_cast<int>(s.atoms.size())) return fail("unknown atom");
    const TreeVertex& z = s.atom_sites[l.atom];
    const BallArrow& a = s.atoms[l.atom];
    if (!l.inverse) {
      if (side != 1 || t1.project(center) != a.source) return fail("letter does not compose");
      move(t1, z);
      for (auto& v : verts) v = th.image(v);
      center = th.image(z);
      side = 2;
    } else {
      if (side != 2 || t2.project(center) != a.target - n1) return fail("letter does not compose");
      move(t2, th.image(z));
      for (auto& v : verts) v = th.preimage(v);
      center = z;
      side = 1;
    }
  }
  int tside = arrow.target < n1 ? 1 : 2;
  const UniversalCover& c = cover(tside);
  if (side != tside || c.project(center) != local_vertex(arrow.target))
    return fail("witness ends at the wrong object");
  TreeVertex cy = c.canonical_lift(local_vertex(arrow.target));
  move(c, cy);
  const WalkTree& dst = s.shapes.tree[arrow.target];
  std::vector<int> back = inverse_path(c.graph(), cy.path);
  for (int n = 0; n < src.size(); ++n) {
    std::vector<int> w = back;
    w.insert(w.end(), verts[n].path.begin(), verts[n].path.end());
    w = reduce(c.graph(), w);
    if (tside == 2)
      for (int& d : w) d += D1;
    int m = dst.find(w);
    if (m != arrow.map[n])
      return fail("node " + std::to_string(n) + " maps to " + std::to_string(m) +
                  " but the arrow says " + std::to_string(arrow.map[n]));
  }
  return true;
}

int stability_horizon(const GraphPtr& g1, const GraphPtr& g2, int R, int max_rho) {
  DiscoveredAtoms d = discover_atoms(g1, g2, R, max_rho);
  for (int rho = 0; rho < max_rho; ++rho)
    if (std::find(d.depth.begin(), d.depth.end(), rho + 1) == d.depth.end()) return rho;
  return -1;
}

}  // namespace leighton
