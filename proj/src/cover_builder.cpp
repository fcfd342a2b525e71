#include "leighton/cover_builder.hpp"

#include <algorithm>

#include "leighton/errors.hpp"

namespace leighton {

namespace {

std::string covering_problem(const GraphMorphism& m, const std::string& which) {
  auto c = is_covering(m);
  if (c.ok) return {};
  const auto& f = c.failures.front();
  std::string where;
  if (f.vertex >= 0) where = "star of " + m.source->vertex_id(f.vertex);
  else if (f.target_vertex >= 0) where = "target vertex " + m.target->vertex_id(f.target_vertex);
  else where = "target dart " + m.target->dart_id(f.target_dart);
  return which + " fails at " + where + ": " + f.reason;
}

GraphMorphism restrict(const GraphMorphism& m, const Subgraph& s) {
  GraphMorphism r{s.graph, m.target, {}, {}};
  for (int v : s.inclusion.vmap) r.vmap.push_back(m.vmap[v]);
  for (int d : s.inclusion.dmap) r.dmap.push_back(m.dmap[d]);
  return r;
}

}  // namespace

BuiltCover build_cover(const LocalSystem& sys, const BuildOptions& opt) {
  require_axioms(sys);
  if (auto p = check_local_system(sys); !p.empty())
    throw VerificationError("inconsistent local system: " + p);
  const Graph& g1 = *sys.g1;
  const Graph& g2 = *sys.g2;

  std::vector<std::int64_t> sizes(sys.out_size);
  sizes.insert(sizes.end(), sys.orbit_size.begin(), sys.orbit_size.end());
  BuiltCover bc;
  bc.N = schedule_N(sizes);
  std::int64_t N = checked_int(bc.N, opt.max_vertices, "N");

  int na = static_cast<int>(sys.arrows.size());
  std::vector<std::int64_t> vbase(na + 1, 0);
  for (int i = 0; i < na; ++i) {
    std::int64_t out = sys.out_size[sys.arrows[i].x];
    if (N % out != 0) throw VerificationError("N is not a multiple of |Γ(x,-)|");
    vbase[i + 1] = vbase[i] + N / out;
    if (vbase[i + 1] > opt.max_vertices)
      throw BudgetExceeded("cover exceeds " + std::to_string(opt.max_vertices) + " vertices");
  }
  std::int64_t nv = vbase[na];
  bc.total_vertices = nv;

  // Fibre of each atom over the vertex list, in vertex order.
  int nt = static_cast<int>(sys.atoms.size());
  std::vector<std::vector<std::int64_t>> fibre(nt);
  for (int i = 0; i < na; ++i)
    for (std::int64_t v = vbase[i]; v < vbase[i + 1]; ++v)
      for (int a : sys.arrows[i].star_atoms) fibre[a].push_back(v);
  std::vector<std::int64_t> dbase(nt + 1, 0);
  for (int a = 0; a < nt; ++a) {
    std::int64_t orb = sys.orbit_size[sys.atoms[a].e];
    if (N % orb != 0 || static_cast<std::int64_t>(fibre[a].size()) != N / orb)
      throw VerificationError("matching count fails at atom " + sys.atoms[a].key + ": " +
                              std::to_string(fibre[a].size()) + " vertices for " +
                              std::to_string(N / orb) + " indices");
    dbase[a + 1] = dbase[a] + static_cast<std::int64_t>(fibre[a].size());
  }
  std::int64_t nd = dbase[nt];
  std::int64_t star_total = 0;
  for (int i = 0; i < na; ++i)
    star_total += (vbase[i + 1] - vbase[i]) * static_cast<std::int64_t>(sys.arrows[i].star_atoms.size());
  if (star_total != nd) throw VerificationError("dart accounting mismatch");

  auto vid = [&](std::int64_t v) { return "w" + padded(v, nv); };
  auto did = [&](std::int64_t d) { return "d" + padded(d, nd); };
  GraphBuilder gb;
  std::vector<VertexLabel> vlabel(nv);
  std::vector<DartLabel> dlabel(nd);
  for (int i = 0; i < na; ++i)
    for (std::int64_t v = vbase[i]; v < vbase[i + 1]; ++v) {
      gb.add_vertex(vid(v), g1.vertex_colour(sys.arrows[i].x));
      vlabel[v] = {i, v - vbase[i] + 1};
    }
  for (int a = 0; a < nt; ++a) {
    const auto& A = sys.atoms[a];
    for (std::int64_t k = 0; k < dbase[a + 1] - dbase[a]; ++k) {
      gb.add_dart(did(dbase[a] + k), did(dbase[A.bar] + k), vid(fibre[a][k]),
                  g1.dart_colour(A.e));
      dlabel[dbase[a] + k] = {a, k + 1};
    }
  }
  GraphPtr full = gb.build();
  require_valid(*full);

  GraphMorphism mu1{full, sys.g1, std::vector<int>(nv), std::vector<int>(nd)};
  GraphMorphism mu2{full, sys.g2, std::vector<int>(nv), std::vector<int>(nd)};
  for (std::int64_t v = 0; v < nv; ++v) {
    mu1.vmap[v] = sys.arrows[vlabel[v].arrow].x;
    mu2.vmap[v] = sys.arrows[vlabel[v].arrow].y;
  }
  for (std::int64_t d = 0; d < nd; ++d) {
    mu1.dmap[d] = sys.atoms[dlabel[d].atom].e;
    mu2.dmap[d] = sys.atoms[dlabel[d].atom].f;
  }
  if (auto p = covering_problem(mu1, "mu1"); !p.empty()) throw VerificationError(p);
  if (auto p = covering_problem(mu2, "mu2"); !p.empty()) throw VerificationError(p);

  auto comps = components(*full);
  bc.num_components = static_cast<int>(comps.size());
  std::vector<int> keep;
  auto containing = [&](std::int64_t v) {
    for (const auto& c : comps)
      if (std::binary_search(c.begin(), c.end(), static_cast<int>(v))) return c;
    throw VerificationError("vertex missing from every component");
  };
  std::optional<int> seed = opt.based_at;
  if (!seed && opt.component == ComponentChoice::containing) seed = opt.containing_arrow;
  if (seed) {
    if (*seed < 0 || *seed >= na) throw InputError("seed arrow out of range");
    keep = containing(vbase[*seed]);
  } else if (opt.component == ComponentChoice::least) {
    keep = *std::min_element(comps.begin(), comps.end(), [](const auto& a, const auto& b) {
      return a.size() != b.size() ? a.size() < b.size() : a.front() < b.front();
    });
  }

  if (keep.empty()) {
    bc.graph = full;
    bc.mu1 = std::move(mu1);
    bc.mu2 = std::move(mu2);
    bc.vertex_label = std::move(vlabel);
    bc.dart_label = std::move(dlabel);
  } else {
    Subgraph s = induced_subgraph(full, keep);
    bc.graph = s.graph;
    bc.mu1 = restrict(mu1, s);
    bc.mu2 = restrict(mu2, s);
    for (int v : s.inclusion.vmap) bc.vertex_label.push_back(vlabel[v]);
    for (int d : s.inclusion.dmap) bc.dart_label.push_back(dlabel[d]);
    if (auto p = covering_problem(bc.mu1, "mu1"); !p.empty()) throw VerificationError(p);
    if (auto p = covering_problem(bc.mu2, "mu2"); !p.empty()) throw VerificationError(p);
  }
  std::int64_t V = bc.graph->num_vertices();
  if (V % g1.num_vertices() != 0 || V % g2.num_vertices() != 0)
    throw VerificationError("component size is not a multiple of the base sizes");
  bc.degree1 = V / g1.num_vertices();
  bc.degree2 = V / g2.num_vertices();
  return bc;
}

}  // namespace leighton
