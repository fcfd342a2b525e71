#include "leighton/phi.hpp"

#include <map>

#include "leighton/errors.hpp"

namespace leighton {

PhiCertificate extract_phi(const BuiltCover& bc, const BallSystem& sys, int test_radius,
                           bool based) {
  if (test_radius < 0) throw InputError("test radius must be non-negative");
  const Graph& G = *bc.graph;
  const UniversalCover& t1 = *sys.pair.t1;
  const UniversalCover& t2 = *sys.pair.t2;
  TreeIso& th = *sys.pair.theta;
  int n1 = sys.g1->num_vertices(), D1 = sys.g1->num_darts();

  int v0 = -1;
  TreeVertex root_image;
  if (based) {
    int seed = sys.root_arrow();
    for (int v = 0; v < G.num_vertices() && v0 < 0; ++v)
      if (bc.vertex_label[v].arrow == seed && bc.vertex_label[v].j == 1) v0 = v;
    if (v0 < 0) throw InputError("cover does not contain the basepoint arrow");
    root_image = th.image(TreeVertex{});
  } else {
    for (int v = 0; v < G.num_vertices() && v0 < 0; ++v)
      if (bc.mu1.vmap[v] == t1.basepoint()) v0 = v;
    if (v0 < 0) throw VerificationError("cover misses the basepoint fibre");
    root_image = t2.canonical_lift(bc.mu2.vmap[v0]);
  }

  struct Lifted {
    int vertex;
    TreeVertex image;
  };
  std::map<std::vector<int>, Lifted> memo;
  memo.emplace(std::vector<int>{}, Lifted{v0, root_image});
  std::function<const Lifted&(const TreeVertex&)> lift = [&](const TreeVertex& z) -> const Lifted& {
    auto it = memo.find(z.path);
    if (it != memo.end()) return it->second;
    TreeVertex parent{std::vector<int>(z.path.begin(), z.path.end() - 1)};
    Lifted p = lift(parent);
    int d = z.path.back();
    int hit = -1;
    for (int delta : G.star(p.vertex))
      if (bc.mu1.dmap[delta] == d) hit = delta;
    if (hit < 0) throw VerificationError("path lifting fails: mu1 is not a covering");
    Lifted r{G.terminus(hit), t2.step(p.image, bc.mu2.dmap[hit])};
    return memo.emplace(z.path, std::move(r)).first->second;
  };

  PhiCertificate cert;
  cert.test_radius = test_radius;
  cert.based = based;
  auto note = [&](const std::string& m) {
    ++cert.mismatches;
    if (cert.first_failure.empty()) cert.first_failure = m;
  };
  for (const TreeVertex& z : t1.ball(TreeVertex{}, test_radius).vertices) {
    PhiEntry entry;
    entry.z = z;
    const Lifted& lz = lift(z);
    entry.cover_vertex = lz.vertex;
    entry.image = lz.image;
    int x = t1.project(z);
    int y = n1 + t2.project(lz.image);
    const WalkTree& src = sys.shapes.tree[x];
    const WalkTree& dst = sys.shapes.tree[y];
    BallArrow a{x, y, std::vector<int>(src.size())};
    for (int n = 0; n < src.size(); ++n) {
      const Lifted& ln = lift(t1.follow(z, src.walk(n)));
      std::vector<int> w = reduce(t2.graph(), [&] {
        auto v = inverse_path(t2.graph(), lz.image.path);
        v.insert(v.end(), ln.image.path.begin(), ln.image.path.end());
        return v;
      }());
      for (int& f : w) f += D1;
      a.map[n] = dst.find(w);
    }
    auto id = sys.groupoid.find(a);
    int label = sys.local.arrows[bc.vertex_label[lz.vertex].arrow].payload;
    if (!id) {
      note("phi escaped the discovered groupoid at a vertex of depth " +
           std::to_string(z.path.size()));
    } else {
      entry.arrow = *id;
      if (*id != label) note("phi disagrees with the arrow labelling its lift");
      std::string why;
      entry.witness_ok = verify_witness(sys, a, sys.groupoid.witness(*id), &why);
      if (!entry.witness_ok) note("witness fails: " + why);
    }
    cert.entries.push_back(std::move(entry));
  }
  if (based) {
    cert.fixes_base_ball = true;
    for (const TreeVertex& u : t1.ball(TreeVertex{}, sys.R).vertices)
      if (th.preimage(lift(u).image) != u) cert.fixes_base_ball = false;
    if (!cert.fixes_base_ball && cert.first_failure.empty())
      cert.first_failure = "phi moves the base ball";
  }
  return cert;
}

}  // namespace leighton
