#include "leighton/star_system.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "leighton/errors.hpp"
#include "leighton/refinement.hpp"

namespace leighton {

std::string star_key(const StarArrow& a) {
  std::string k = std::to_string(a.source) + ">" + std::to_string(a.target) + ":";
  for (std::size_t i = 0; i < a.map.size(); ++i) {
    if (i) k += ",";
    k += std::to_string(a.map[i]);
  }
  return k + ";";
}

ArrowOps<StarArrow> star_ops(const GraphPtr& uni) {
  auto pos = std::make_shared<std::vector<int>>(star_positions(*uni));
  ArrowOps<StarArrow> ops;
  ops.source = [](const StarArrow& a) { return a.source; };
  ops.target = [](const StarArrow& a) { return a.target; };
  ops.identity = [uni](int x) { return StarArrow{x, x, uni->star(x)}; };
  ops.compose = [pos](const StarArrow& g, const StarArrow& f) {
    if (f.target != g.source) throw InputError("star arrows are not composable");
    StarArrow r{f.source, g.target, std::vector<int>(f.map.size())};
    for (std::size_t i = 0; i < f.map.size(); ++i) r.map[i] = g.map[(*pos)[f.map[i]]];
    return r;
  };
  ops.inverse = [uni, pos](const StarArrow& f) {
    StarArrow r{f.target, f.source, std::vector<int>(f.map.size())};
    const auto& st = uni->star(f.source);
    for (std::size_t i = 0; i < f.map.size(); ++i) r.map[(*pos)[f.map[i]]] = st[i];
    return r;
  };
  ops.key = star_key;
  return ops;
}

int default_radius(const GraphPtr& g1, const GraphPtr& g2, int R) {
  return R + diameter(*g1) + diameter(*g2);
}

namespace {

using DartClass = std::tuple<int, Colour, Colour>;

// All class-preserving bijections star(x) -> star(y), in lexicographic order
// of the image sequence.
void enumerate_bijections(const Graph& u, const std::vector<int>& block, int x, int y,
                          const std::function<void(std::vector<int>)>& emit) {
  auto cls = [&](int d) {
    return DartClass{block[u.terminus(d)], u.dart_colour(d), u.dart_colour(u.reverse(d))};
  };
  const auto& sx = u.star(x);
  const auto& sy = u.star(y);
  if (sx.size() != sy.size()) return;
  std::vector<int> img(sx.size(), -1);
  std::vector<char> used(sy.size(), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == sx.size()) {
      emit(img);
      return;
    }
    for (std::size_t j = 0; j < sy.size(); ++j)
      if (!used[j] && cls(sx[i]) == cls(sy[j])) {
        used[j] = 1;
        img[i] = sy[j];
        rec(i + 1);
        used[j] = 0;
      }
  };
  rec(0);
}

void compute_orbits(StarSystem& s, const std::vector<int>& pos) {
  const Graph& u = *s.uni;
  s.orbit_of.assign(u.num_darts(), -1);
  s.orbits.clear();
  for (int a = 0; a < u.num_darts(); ++a) {
    if (s.orbit_of[a] >= 0) continue;
    int id = static_cast<int>(s.orbits.size());
    s.orbits.emplace_back();
    for (int g : s.groupoid.out(u.origin(a))) {
      int b = s.groupoid.arrow(g).map[pos[a]];
      if (s.orbit_of[b] < 0) {
        s.orbit_of[b] = id;
        s.orbits[id].push_back(b);
      } else if (s.orbit_of[b] != id) {
        throw AxiomError("orbits overlap at dart " + u.dart_id(b));
      }
    }
    std::sort(s.orbits[id].begin(), s.orbits[id].end());
  }
}

std::string check_coverage(const StarSystem& s) {
  int n1 = s.g1->num_vertices();
  const Graph& u = *s.uni;
  for (int v = 0; v < u.num_vertices(); ++v) {
    bool hit = false;
    for (int g : s.groupoid.out(v)) hit = hit || ((s.groupoid.target(g) < n1) != (v < n1));
    if (!hit) return "AX1 coverage fails: vertex " + u.vertex_id(v) + " has no cross arrow";
  }
  return {};
}

std::string check_bar_closure(const StarSystem& s) {
  const Graph& u = *s.uni;
  for (const auto& orb : s.orbits) {
    std::vector<int> barred;
    for (int b : orb) barred.push_back(u.reverse(b));
    std::sort(barred.begin(), barred.end());
    if (barred != s.orbits[s.orbit_of[u.reverse(orb.front())]])
      return "AX2 bar-closure fails at dart " + u.dart_id(orb.front());
  }
  return {};
}

void fill_local(StarSystem& s) {
  const Graph& g1 = *s.g1;
  int n1 = g1.num_vertices();
  int D1 = g1.num_darts();
  LocalSystem& L = s.local;
  L.backend = "star";
  L.g1 = s.g1;
  L.g2 = s.g2;
  L.radius = s.radius;
  L.out_size.assign(n1, 0);
  L.orbit_size.assign(D1, 0);
  for (int x = 0; x < n1; ++x) L.out_size[x] = static_cast<std::int64_t>(s.groupoid.out(x).size());
  for (int e = 0; e < D1; ++e) L.orbit_size[e] = static_cast<std::int64_t>(s.orbits[s.orbit_of[e]].size());
  std::map<std::pair<int, int>, int> atom_index;
  for (int e = 0; e < D1; ++e)
    for (int b : s.orbits[s.orbit_of[e]])
      if (b >= D1) {
        int id = static_cast<int>(L.atoms.size());
        atom_index[{e, b - D1}] = id;
        L.atoms.push_back({e, b - D1, -1, std::to_string(e) + ">" + std::to_string(b - D1) + ";", -1});
      }
  for (auto& A : L.atoms) {
    auto it = atom_index.find({g1.reverse(A.e), s.g2->reverse(A.f)});
    A.bar = it == atom_index.end() ? -1 : it->second;
  }
  std::vector<int> cross;
  for (int x = 0; x < n1; ++x)
    for (int g : s.groupoid.out(x))
      if (s.groupoid.target(g) >= n1) cross.push_back(g);
  std::sort(cross.begin(), cross.end(),
            [&](int a, int b) { return s.groupoid.key(a) < s.groupoid.key(b); });
  for (int g : cross) {
    const StarArrow& a = s.groupoid.arrow(g);
    CrossArrow c{a.source, a.target - n1, s.groupoid.key(g), {}, g};
    const auto& st = g1.star(a.source);
    for (std::size_t i = 0; i < st.size(); ++i) c.star_atoms.push_back(atom_index.at({st[i], a.map[i] - D1}));
    L.arrows.push_back(std::move(c));
  }
}

}  // namespace

StarSystem build_star_system(const GraphPtr& g1, const GraphPtr& g2, StarStrategy strategy,
                             int radius) {
  auto check = require_common_cover(g1, g2);
  StarSystem s;
  s.g1 = g1;
  s.g2 = g2;
  s.uni = disjoint_union(g1, g2);
  s.strategy = strategy;
  s.radius = radius;
  const Graph& u = *s.uni;
  int n1 = g1->num_vertices();
  int D1 = g1->num_darts();
  auto ops = star_ops(s.uni);
  auto pos = star_positions(u);
  std::vector<int> gens;

  if (strategy == StarStrategy::dr_full) {
    const auto& block = check.partition.block;
    s.groupoid = FiniteGroupoid<StarArrow>(u.num_vertices(), ops);
    for (int x = 0; x < u.num_vertices(); ++x)
      for (int y = 0; y < u.num_vertices(); ++y) {
        if (block[x] != block[y]) continue;
        enumerate_bijections(u, block, x, y, [&](std::vector<int> m) {
          s.groupoid.add(StarArrow{x, y, std::move(m)});
        });
      }
    // Arrows into and out of the least vertex of each block generate.
    std::vector<int> least(check.partition.num_blocks, -1);
    for (int v = u.num_vertices() - 1; v >= 0; --v) least[block[v]] = v;
    for (int i = 0; i < s.groupoid.size(); ++i)
      if (s.groupoid.target(i) == least[block[s.groupoid.source(i)]] ||
          s.groupoid.source(i) == least[block[s.groupoid.source(i)]])
        gens.push_back(i);
  } else {
    if (radius < 0) throw InputError("explore radius must be non-negative");
    CoverPair pair = build_theta(g1, g2, 0);
    TreeIso& th = *pair.theta;
    const UniversalCover& t1 = *pair.t1;
    std::set<std::string> keys;
    for (const auto& z : theta_representatives(th, radius, 0)) {
      auto sm = th.star_map(z);
      int x = t1.project(z);
      StarArrow a{x, n1 + g2->origin(sm.front()), {}};
      for (int f : sm) a.map.push_back(D1 + f);
      if (keys.insert(star_key(a)).second) {
        s.atoms.push_back(std::move(a));
        s.atom_sites.push_back(z);
      }
    }
    // Transition identity at every listed site strictly inside the radius.
    for (const auto& z : theta_representatives(th, std::max(radius - 1, 0), 0)) {
      if (static_cast<int>(z.path.size()) > radius - 1) continue;
      auto sz = th.star_map(z);
      const auto& st = g1->star(t1.project(z));
      for (std::size_t i = 0; i < st.size() && s.transition_failure.empty(); ++i) {
        auto sy = th.star_map(t1.step(z, st[i]));
        int back = g1->reverse(st[i]);
        if (sy[t1.positions()[back]] != g2->reverse(sz[i]))
          s.transition_failure = "transition identity fails along dart " + g1->dart_id(st[i]);
      }
    }
    s.groupoid = saturate_groupoid(u.num_vertices(), s.atoms, ops);
    for (const auto& a : s.atoms) {
      gens.push_back(*s.groupoid.find(a));
      gens.push_back(*s.groupoid.find(ops.inverse(a)));
    }
  }

  compute_orbits(s, pos);
  AxiomFlags& ax = s.local.axioms;
  GroupoidAction<StarArrow> act{&s.groupoid, u.num_darts(), [&u](int a) { return u.origin(a); },
                                [&](int g, int a) { return s.groupoid.arrow(g).map[pos[a]]; }};
  auto ar = verify_action(act, &gens);
  ax.action = ar.ok;
  ax.action_exhaustive = ar.exhaustive;
  std::string f1 = check_coverage(s);
  std::string f2 = check_bar_closure(s);
  ax.coverage = f1.empty();
  ax.bar_closure = f2.empty();
  ax.failure = !f1.empty() ? f1 : !f2.empty() ? f2 : ar.ok ? "" : "AX3 " + ar.axiom + ": " + ar.detail;
  if (strategy == StarStrategy::dr_full && !ax.all())
    throw VerificationError("complete star system violates " + ax.failure);
  if (ax.coverage && ax.bar_closure) fill_local(s);
  else {
    s.local.backend = "star";
    s.local.g1 = g1;
    s.local.g2 = g2;
    s.local.radius = radius;
  }
  return s;
}

StarSystem build_star_system_auto(const GraphPtr& g1, const GraphPtr& g2, StarStrategy strategy,
                                  int radius, int cap) {
  int rho = std::max(radius, 0);
  while (true) {
    StarSystem s = build_star_system(g1, g2, strategy, rho);
    if (s.local.axioms.all() || strategy == StarStrategy::dr_full) return s;
    if (rho >= cap) require_axioms(s.local);
    rho = std::min(cap, std::max(1, 2 * rho));
  }
}

}  // namespace leighton
