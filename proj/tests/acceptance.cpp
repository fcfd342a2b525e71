// One line per acceptance criterion: "PASS <n> <summary>" or "FAIL <n> <reason>".
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "cli.hpp"
#include "leighton/ball_system.hpp"
#include "leighton/bounds.hpp"
#include "leighton/cover_builder.hpp"
#include "leighton/errors.hpp"
#include "leighton/gluing.hpp"
#include "leighton/io.hpp"
#include "leighton/object_graphs.hpp"
#include "leighton/oracle.hpp"
#include "leighton/phi.hpp"
#include "leighton/refinement.hpp"
#include "leighton/regular.hpp"
#include "leighton/star_system.hpp"

using namespace leighton;

namespace {

namespace fs = std::filesystem;

struct Failure {
  std::string why;
};

void expect(bool ok, const std::string& why) {
  if (!ok) throw Failure{why};
}

std::string data(const std::string& name) { return std::string(LEIGHTON_DATA_DIR) + "/" + name; }

// Connected multigraph on n vertices: a random spanning tree plus `extra`
// random edges, loops allowed.
GraphPtr random_base(std::mt19937& rng, int n, int extra) {
  std::vector<std::pair<int, int>> edges;
  for (int v = 1; v < n; ++v) edges.push_back({std::uniform_int_distribution<int>(0, v - 1)(rng), v});
  std::uniform_int_distribution<int> any(0, n - 1);
  for (int i = 0; i < extra; ++i) edges.push_back({any(rng), any(rng)});
  return graph_from_edges(n, edges);
}

// Permutation-voltage lift of `base` with `k` sheets; empty when disconnected.
GraphPtr random_lift(std::mt19937& rng, const GraphPtr& base, int k) {
  const Graph& b = *base;
  GraphBuilder gb;
  auto vid = [&](int v, int i) { return b.vertex_id(v) + "." + std::to_string(i); };
  auto did = [&](int d, int i) { return b.dart_id(d) + "." + std::to_string(i); };
  for (int v = 0; v < b.num_vertices(); ++v)
    for (int i = 0; i < k; ++i) gb.add_vertex(vid(v, i));
  for (int d = 0; d < b.num_darts(); ++d) {
    int r = b.reverse(d);
    if (r < d) continue;
    std::vector<int> perm(k);
    for (int i = 0; i < k; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    for (int i = 0; i < k; ++i)
      gb.add_edge(did(d, i), did(r, perm[i]), vid(b.origin(d), i), vid(b.terminus(d), perm[i]));
  }
  GraphPtr g = gb.build();
  return is_connected(*g) ? g : nullptr;
}

// Counting identities of the assembly, recomputed from the local system alone.
void check_counting(const LocalSystem& L, const BuiltCover& all) {
  BigInt N = all.N;
  for (std::int64_t s : L.out_size) expect(N % s == 0, "N not divisible by an out-size");
  for (std::int64_t s : L.orbit_size) expect(N % s == 0, "N not divisible by an orbit size");
  BigInt vertices = 0, darts = 0;
  for (const auto& a : L.arrows) vertices += N / L.out_size[a.x];
  for (const auto& a : L.atoms) darts += N / L.orbit_size[a.e];
  expect(vertices == all.graph->num_vertices(), "vertex count differs from the sum over arrows");
  expect(darts == all.graph->num_darts(), "dart count differs from the sum over atoms");
  auto pos = star_positions(*L.g1);
  std::vector<BigInt> hits(L.atoms.size(), 0);
  for (const auto& a : L.arrows)
    for (int d : L.g1->star(a.x)) hits[a.star_atoms[pos[d]]] += N / L.out_size[a.x];
  for (std::size_t i = 0; i < L.atoms.size(); ++i)
    expect(hits[i] == N / L.orbit_size[L.atoms[i].e], "an atom is hit a wrong number of times");
  std::int64_t V1 = L.g1->num_vertices(), V2 = L.g2->num_vertices();
  expect(all.graph->num_vertices() == all.degree1 * V1, "first degree inconsistent");
  expect(all.graph->num_vertices() == all.degree2 * V2, "second degree inconsistent");
}

std::string criterion1() {
  std::mt19937 rng(20261016);
  int pairs = 0, attempts = 0, unequal = 0;
  std::int64_t largest = 0;
  while (pairs < 60) {
    expect(++attempts < 10'000, "could not generate enough connected lifts");
    int n = std::uniform_int_distribution<int>(1, 8)(rng);
    int extra = std::uniform_int_distribution<int>(n == 1 ? 1 : 0, 2)(rng);
    GraphPtr base = random_base(rng, n, extra);
    if (base->max_degree() > 4) continue;
    int k1 = std::uniform_int_distribution<int>(1, 4)(rng);
    int k2 = std::uniform_int_distribution<int>(1, 4)(rng);
    GraphPtr a = random_lift(rng, base, k1), b = random_lift(rng, base, k2);
    if (!a || !b) continue;
    StarSystem s = build_star_system(a, b, StarStrategy::dr_full);
    expect(s.local.axioms.all(), "axioms fail on a random pair: " + s.local.axioms.failure);
    BuiltCover least = build_cover(s.local);
    expect(is_covering(least.mu1).ok && is_covering(least.mu2).ok, "least component is not a common cover");
    BuiltCover all = build_cover(s.local, {ComponentChoice::all});
    expect(is_covering(all.mu1).ok && is_covering(all.mu2).ok, "assembly is not a common cover");
    check_counting(s.local, all);
    largest = std::max<std::int64_t>(largest, all.graph->num_vertices());
    unequal += a->num_vertices() != b->num_vertices();
    ++pairs;
  }
  return std::to_string(pairs) + " random pairs (" + std::to_string(unequal) +
         " of unequal size) covered, counting identities exact, largest assembly " + std::to_string(largest) +
         " vertices";
}

std::string criterion2() {
  std::vector<GraphPtr> tiny{cycle(2), cycle(3), rose(1), rose(2), theta(3), path(2), path(3),
                             graph_from_edges(2, {{0, 0}, {0, 1}}), graph_from_edges(3, {{0, 1}, {1, 2}, {2, 2}})};
  int pairs = 0, positive = 0;
  for (const auto& a : tiny)
    for (const auto& b : tiny) {
      expect(a->num_darts() <= 6 && b->num_darts() <= 6, "fixture too large");
      bool exists = common_cover_exists(a, b).exists;
      auto r = brute_common_cover(a, b, 6);
      expect(static_cast<bool>(r.cover) == exists, "oracle and refinement disagree");
      if (r.cover) expect(is_covering(r.to_g1).ok && is_covering(r.to_g2).ok, "oracle cover fails");
      ++pairs;
      positive += exists;
    }
  auto r = brute_common_cover(cycle(3), cycle(4), 6);
  expect(r.cover && (*r.cover)->num_vertices() == 12, "oracle minimum for (C3,C4) is not 12");
  StarSystem s = build_star_system(cycle(3), cycle(4), StarStrategy::dr_full);
  BuiltCover bc = build_cover(s.local);
  expect(bc.graph->num_vertices() == 12, "built least component for (C3,C4) is not 12");
  return std::to_string(pairs) + " tiny pairs agree (" + std::to_string(positive) +
         " with a common cover); (C3,C4) minimum 12 = built 12";
}

struct Fixture {
  std::string name;
  GraphPtr a, b;
};

std::vector<Fixture> ball_fixtures() {
  return {{"C3/C3", cycle(3), cycle(3)}, {"C3/C4", cycle(3), cycle(4)}, {"K4/Theta3", complete(4), theta(3)}};
}

BallSystem ball(const GraphPtr& a, const GraphPtr& b, int R) {
  return build_ball_system_auto(a, b, R, default_radius(a, b, R));
}

std::int64_t loops_at(const FiniteGroupoid<BallArrow>& g, int v) {
  std::int64_t n = 0;
  for (int x : g.out(v)) n += g.target(x) == v;
  return n;
}

std::string criterion3() {
  std::ostringstream summary;
  for (const auto& f : ball_fixtures())
    for (int R : {1, 2}) {
      BallSystem s = ball(f.a, f.b, R);
      BuiltCover bc = build_cover(s.local);
      expect(is_covering(bc.mu1).ok && is_covering(bc.mu2).ok, f.name + " ball cover fails");
      PhiCertificate cert = extract_phi(bc, s, 3);
      expect(cert.mismatches == 0, f.name + " phi mismatch: " + cert.first_failure);
      for (const auto& e : cert.entries) expect(e.arrow >= 0 && e.witness_ok, f.name + " phi entry unmatched");
      BuildOptions o;
      o.based_at = s.root_arrow();
      BuiltCover based = build_cover(s.local, o);
      expect(is_covering(based.mu1).ok && is_covering(based.mu2).ok, f.name + " based cover fails");
      PhiCertificate bcert = extract_phi(based, s, 3, true);
      expect(bcert.mismatches == 0 && bcert.fixes_base_ball, f.name + " based phi does not fix the base ball");
      summary << f.name << " R" << R << ": " << bc.graph->num_vertices() << "v/" << cert.entries.size()
              << " balls; ";
    }
  return summary.str() + "zero mismatches, base ball fixed";
}

std::string criterion4() {
  int checked = 0;
  for (const auto& f : ball_fixtures())
    for (int R : {1, 2}) {
      BallSystem s = ball(f.a, f.b, R);
      BuiltCover all = build_cover(s.local, {ComponentChoice::all});
      int d = std::max(f.a->max_degree(), f.b->max_degree());
      std::int64_t V = f.a->num_vertices() + f.b->num_vertices();
      BigInt divisor = regular_ball_automorphisms(d, R);
      for (int v = 0; v < s.uni->num_vertices(); ++v)
        expect(divisor % loops_at(s.groupoid, v) == 0, f.name + " ball isotropy does not divide");
      auto r = bound_report(BoundKind::ball, {{{"V", V}, {"d", d}, {"R", R}}, all.graph->num_vertices()});
      expect(r.satisfied, f.name + " exceeds the ball bound");
      ++checked;
    }
  // Object systems: |Γ(u,u)| divides deg(u)!·Π|Υ_e|, recomputed here.
  auto x1 = object_graph_from_json(read_json_file(data("loop_plain.json")));
  auto x2 = object_graph_from_json(read_json_file(data("loop_twisted.json")));
  auto uni = object_union(*x1, *x2);
  ObjectSystem sys = close_star_maps(x1, x2, seeds_from_json(read_json_file(data("rotation_seeds.json")), *uni));
  for (int u = 0; u < uni->graph->num_vertices(); ++u) {
    std::int64_t loops = 0;
    for (int g : sys.groupoid.out(u)) loops += sys.groupoid.target(g) == u;
    BigInt bound = 1;
    for (int k = 2; k <= uni->graph->degree(u); ++k) bound *= k;
    for (int e : uni->graph->star(u)) bound *= sys.isotropy[e];
    expect(bound % loops == 0, "object vertex group does not divide");
    ++checked;
  }
  for (int n = 1; n <= 30; ++n) {
    expect(landau(n) == brute_landau(n), "landau differs from brute force at " + std::to_string(n));
    expect(landau(n) <= landau_bound(n).floor, "landau exceeds its bound at " + std::to_string(n));
  }
  return std::to_string(checked) + " systems within bounds and divisors; landau exact for n <= 30";
}

std::string criterion5() {
  for (const auto& g : {complete(4), complete_bipartite(3, 3), complete(5)}) {
    Factorization f = factorize_regular(g);
    for (const auto& fac : f.factors)
      expect(f.odd ? is_perfect_matching(*f.cover, fac) : is_two_factor(*f.cover, fac), "a factor fails its check");
    expect(is_covering(f.to_base).ok, "factorization base map fails");
  }
  auto odd = regular_common_cover(complete(4), complete_bipartite(3, 3));
  expect(is_covering(odd.mu1).ok && is_covering(odd.mu2).ok, "(K4,K33) cover fails");
  expect(odd.total_vertices <= 48 && odd.graph->num_vertices() <= 48, "(K4,K33) exceeds 48");
  auto even = regular_common_cover(complete(5), complete(5), false);
  expect(is_covering(even.mu1).ok && is_covering(even.mu2).ok, "(K5,K5) cover fails");
  expect(even.total_vertices <= 25, "(K5,K5) exceeds 25");
  return "(K4,K33) " + std::to_string(odd.graph->num_vertices()) + " vertices (whole product " +
         std::to_string(odd.total_vertices) + ") <= 48; (K5,K5) " + std::to_string(even.total_vertices) +
         " <= 25; all factors pass";
}

void check_components(const Glued& g, const std::string& name) {
  expect(is_covering(g.mu1).ok && is_covering(g.mu2).ok, name + " assembly fails to cover");
  for (const auto& comp : components(*g.graph)) {
    Subgraph sub = induced_subgraph(g.graph, comp);
    expect(is_covering(compose(g.mu1, sub.inclusion)).ok && is_covering(compose(g.mu2, sub.inclusion)).ok,
           name + " component fails to cover");
  }
}

void check_balance(const GluingData& d, const WeightFn& w, const std::vector<FaceBalance>& bal,
                   const std::string& name) {
  const LocalSystem& L = *d.sys;
  expect(bal.size() == d.faces.size(), name + " balance list incomplete");
  for (std::size_t k = 0; k < d.faces.size(); ++k) {
    BigInt left = 0, right = 0;
    for (int p : d.left[k]) left += w.scale / L.out_size[d.pairs[p].x];
    for (int p : d.right[k]) right += w.scale / L.out_size[d.pairs[p].x];
    BigInt expected = w.scale / L.orbit_size[d.faces[k].e];
    expect(left == right && left == expected, name + " gluing equation unbalanced");
  }
}

std::string criterion6() {
  std::ostringstream summary;
  std::vector<Fixture> fixtures = ball_fixtures();
  fixtures.push_back({"R1/C5", rose(1), cycle(5)});
  for (const auto& f : fixtures)
    for (int R : {1, 2}) {
      std::string name = f.name + " R" + std::to_string(R);
      BallSystem s = ball(f.a, f.b, R);
      expect(s.local.axioms.all(), name + " axioms fail");
      Glued g;
      try {
        GluingData d = enumerate_pairs(s.local);
        std::vector<FaceBalance> bal;
        WeightFn w = gluing_weights(d, &bal);
        check_balance(d, w, bal, name);
        g = assemble(d, w);
        BuiltCover bc = build_cover(s.local, {ComponentChoice::all});
        expect(g.total_vertices == bc.total_vertices, name + " total differs from the builder");
      } catch (const OrientationError&) {
        Subdivision s1 = subdivide(f.a), s2 = subdivide(f.b);
        BallSystem t = ball(s1.graph, s2.graph, 2 * R);
        GluingData d = enumerate_pairs(t.local);
        std::vector<FaceBalance> bal;
        WeightFn w = gluing_weights(d, &bal);
        check_balance(d, w, bal, name + " subdivided");
        Glued sub = assemble(d, w);
        check_components(sub, name + " subdivided");
        g = smooth(sub, s1, s2);
      }
      check_components(g, name);
      summary << name << (g.subdivided ? " (subdivided)" : "") << ": " << g.component_sizes.size()
              << " components [";
      for (std::size_t i = 0; i < g.component_sizes.size(); ++i)
        summary << (i ? "," : "") << g.component_sizes[i];
      summary << "]; ";
    }
  return summary.str() + "all equations balanced";
}

std::string criterion7() {
  auto x1 = object_graph_from_json(read_json_file(data("loop_plain.json")));
  auto x2 = object_graph_from_json(read_json_file(data("loop_twisted.json")));
  auto uni = object_union(*x1, *x2);
  ObjectSystem sys = close_star_maps(x1, x2, seeds_from_json(read_json_file(data("rotation_seeds.json")), *uni));
  expect(sys.local.axioms.all(), "rotation system axioms: " + sys.local.axioms.failure);
  ObjectCover oc = build_object_cover(sys, {ComponentChoice::all});
  auto v1 = verify_object_covering(oc.mu1), v2 = verify_object_covering(oc.mu2);
  expect(v1.ok && v2.ok, "rotation cover squares fail: " + v1.failure + v2.failure);
  std::ostringstream circuits;
  for (const auto& comp : components(*oc.w->graph)) {
    // A connected 2-regular component is a single circuit through all its vertices.
    Subgraph sub = induced_subgraph(oc.w->graph, comp);
    for (int v = 0; v < sub.graph->num_vertices(); ++v) expect(sub.graph->degree(v) == 2, "component not a circuit");
    expect(comp.size() % 3 == 0, "circuit length not divisible by 3");
    circuits << comp.size() << " ";
  }

  auto uni2 = object_union(*x2, *x2);
  ObjectSystem id = close_star_maps(x2, x2, seeds_from_json(read_json_file(data("identity_seeds.json")), *uni2));
  expect(id.local.axioms.all(), "identity system axioms fail");
  ObjectCover ic = build_object_cover(id);
  expect(isomorphic(ic.w->graph, x2->graph), "identity case is not isomorphic to the input");
  expect(ic.w->vertex_object == x2->vertex_object, "identity case changes vertex objects");
  expect(verify_object_covering(ic.mu1).ok && verify_object_covering(ic.mu2).ok, "identity case squares fail");
  expect(verify_object_covering(identity_object_morphism(x2)).ok, "identity morphism fails");

  ObjectMorphism broken = oc.mu2;
  broken.edge[0] = compose(rotation(3, 1), broken.edge[0]);
  expect(!verify_object_covering(broken).ok, "a mutated edge morphism passes");
  return "rotation cover circuits [" + circuits.str() + "] all = 0 mod 3; identity case isomorphic; squares exhaustive";
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string criterion8() {
  fs::path root = fs::temp_directory_path() / "leighton_acceptance_determinism";
  fs::remove_all(root);
  std::vector<std::vector<std::string>> commands{
      {"build", data("c3.json"), data("c4.json"), "--backend", "star", "--strategy", "dr", "--component", "all"},
      {"build", data("k4.json"), data("theta3.json"), "--backend", "star", "--strategy", "theta"},
      {"build", data("c3.json"), data("c4.json"), "--backend", "ball", "-R", "2", "--based"},
      {"build", data("k4.json"), data("theta3.json"), "--backend", "ball", "-R", "1"},
      {"build", data("k4.json"), data("theta3.json"), "--backend", "glue"},
      {"build-objects", data("loop_plain.json"), data("loop_twisted.json"), "--seeds", data("rotation_seeds.json")},
      {"regular", data("k4.json"), data("k33.json"), "--component", "all"}};
  int files = 0;
  for (std::size_t c = 0; c < commands.size(); ++c) {
    std::string outputs[2];
    for (int run = 0; run < 2; ++run) {
      auto args = commands[c];
      fs::path dir = root / (std::to_string(c) + "_" + std::to_string(run));
      args.push_back("-o");
      args.push_back(dir.string());
      std::ostringstream out, err;
      int code = run_cli(args, out, err);
      expect(code == 0, "command " + std::to_string(c) + " exited " + std::to_string(code) + ": " + err.str());
      outputs[run] = out.str();
    }
    expect(outputs[0] == outputs[1], "command " + std::to_string(c) + " printed different output");
    fs::path d0 = root / (std::to_string(c) + "_0"), d1 = root / (std::to_string(c) + "_1");
    for (const auto& entry : fs::directory_iterator(d0)) {
      fs::path other = d1 / entry.path().filename();
      expect(fs::exists(other), "artifact missing in the second run");
      expect(slurp(entry.path()) == slurp(other), entry.path().filename().string() + " differs between runs");
      ++files;
    }
  }
  fs::remove_all(root);
  return std::to_string(commands.size()) + " build commands, " + std::to_string(files) +
         " artifacts byte-identical across runs";
}

}  // namespace

int main() {
  std::vector<std::pair<int, std::function<std::string()>>> criteria{
      {1, criterion1}, {2, criterion2}, {3, criterion3}, {4, criterion4},
      {5, criterion5}, {6, criterion6}, {7, criterion7}, {8, criterion8}};
  int failed = 0;
  for (const auto& [n, run] : criteria) {
    auto start = std::chrono::steady_clock::now();
    std::string line;
    bool ok = false;
    try {
      line = run();
      ok = true;
    } catch (const Failure& f) {
      line = f.why;
    } catch (const std::exception& e) {
      line = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ostringstream t;
    t.precision(2);
    t << std::fixed << secs;
    std::cout << (ok ? "PASS " : "FAIL ") << n << " " << line << " (" << t.str() << " s)" << std::endl;
    failed += !ok;
  }
  return failed == 0 ? 0 : 1;
}
