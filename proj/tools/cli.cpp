#include "cli.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <tuple>

#include "CLI11.hpp"
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

namespace leighton {

namespace {

namespace fs = std::filesystem;

struct BuildFlags {
  std::string a, b, out;
  std::string backend = "star";
  std::string strategy = "dr";
  int R = 1;
  std::optional<int> explore;
  std::string component = "least";
  bool based = false;
  int phi_radius = 3;
};

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw InputError(dir + ": cannot create directory");
}

std::string join_path(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

void require_cover(const GraphMorphism& m, const std::string& which) {
  auto c = is_covering(m);
  if (!c.ok) throw VerificationError(which + " is not a covering: " + c.failures.front().reason);
}

// Reads the written bundle back and checks both maps from the file contents.
void reverify_from_disk(const std::string& path, const GraphPtr& g1, const GraphPtr& g2) {
  StoredCover c = stored_cover_from_json(read_json_file(path), g1, g2, path);
  require_cover(c.mu1, "stored first map");
  require_cover(c.mu2, "stored second map");
}

Json component_sizes(const Graph& g) {
  Json sizes = Json::array();
  for (const auto& c : components(g)) sizes.push_back(c.size());
  return sizes;
}

BuildOptions build_options(const BuildFlags& f) {
  BuildOptions o;
  if (f.component == "all") o.component = ComponentChoice::all;
  else if (f.component == "least") o.component = ComponentChoice::least;
  else throw InputError("--component must be least or all");
  return o;
}

int cmd_check(const std::string& a, const std::string& b, std::ostream& out) {
  auto r = common_cover_exists(load_graph(a), load_graph(b));
  out << (r.exists ? "common cover exists" : "no common cover") << "\n";
  out << "blocks " << r.partition.num_blocks << "\n";
  return r.exists ? 0 : 1;
}

int cmd_build(const BuildFlags& f, std::ostream& out) {
  GraphPtr g1 = load_graph(f.a), g2 = load_graph(f.b);
  BuildOptions options = build_options(f);
  ensure_dir(f.out);
  std::string cover_path = join_path(f.out, "cover.json");
  if (f.backend == "star") {
    StarStrategy strategy;
    if (f.strategy == "dr") strategy = StarStrategy::dr_full;
    else if (f.strategy == "theta") strategy = StarStrategy::theta_generated;
    else throw InputError("--strategy must be dr or theta");
    StarSystem s = build_star_system_auto(g1, g2, strategy, f.explore.value_or(default_radius(g1, g2)));
    BuiltCover bc = build_cover(s.local, options);
    require_cover(bc.mu1, "first map");
    require_cover(bc.mu2, "second map");
    Provenance p{"star/" + f.strategy, {}, {}};
    for (const auto& a : s.local.arrows) p.arrow_text.push_back(a.key);
    for (const auto& a : s.local.atoms) p.atom_text.push_back(a.key);
    Json j = cover_to_json(bc, p);
    j["summary"]["component_sizes"] = component_sizes(*bc.graph);
    write_text_file(cover_path, dump(j));
    reverify_from_disk(cover_path, g1, g2);
    out << "vertices " << bc.graph->num_vertices() << "\n";
    out << "total_vertices " << bc.total_vertices << "\n";
    out << "components " << bc.num_components << "\n";
    return 0;
  }
  if (f.backend == "ball") {
    BallSystem s = build_ball_system_auto(g1, g2, f.R, f.explore.value_or(default_radius(g1, g2, f.R)));
    if (f.based) options.based_at = s.root_arrow();
    BuiltCover bc = build_cover(s.local, options);
    require_cover(bc.mu1, "first map");
    require_cover(bc.mu2, "second map");
    Provenance p{"ball", {}, {}};
    for (const auto& a : s.local.arrows) p.arrow_text.push_back(ball_text(s.groupoid.arrow(a.payload)));
    for (const auto& a : s.local.atoms) p.atom_text.push_back(edge_text(s.edge_atoms[a.payload]));
    Json j = cover_to_json(bc, p);
    j["summary"]["component_sizes"] = component_sizes(*bc.graph);
    j["summary"]["R"] = f.R;
    j["summary"]["explore"] = s.rho;
    std::int64_t V = g1->num_vertices() + g2->num_vertices();
    int d = std::max(g1->max_degree(), g2->max_degree());
    BoundReport br = bound_report(BoundKind::ball, {{{"V", V}, {"d", d}, {"R", f.R}}, bc.graph->num_vertices()});
    j["summary"]["bound"] = br.bound.text;
    j["summary"]["bound_satisfied"] = br.satisfied;
    write_text_file(cover_path, dump(j));
    reverify_from_disk(cover_path, g1, g2);
    PhiCertificate cert = extract_phi(bc, s, f.phi_radius, f.based);
    auto arrow_text = [&](int id) { return ball_text(s.groupoid.arrow(id)); };
    write_text_file(join_path(f.out, "phi.json"),
                    dump(phi_to_json(cert, *g1, *g2, *bc.graph, arrow_text)));
    out << "vertices " << bc.graph->num_vertices() << "\n";
    out << "total_vertices " << bc.total_vertices << "\n";
    out << "components " << bc.num_components << "\n";
    out << "bound " << br.bound.text << (br.satisfied ? " satisfied" : " violated") << "\n";
    out << "phi mismatches " << cert.mismatches << "\n";
    if (!br.satisfied) throw VerificationError("size bound violated");
    if (!cert.ok()) throw VerificationError("phi certificate failed: " + cert.first_failure);
    return 0;
  }
  if (f.backend == "glue") {
    Glued g = glue_cover(g1, g2, f.R, options.component == ComponentChoice::least);
    require_cover(g.mu1, "first map");
    require_cover(g.mu2, "second map");
    Json sizes = Json::array();
    for (auto c : g.component_sizes) sizes.push_back(c);
    Json j{{"graph", graph_to_json(*g.graph)},
           {"mu1", morphism_to_json(g.mu1)},
           {"mu2", morphism_to_json(g.mu2)},
           {"provenance", Json{{"backend", "glue"}}},
           {"summary", Json{{"vertices", g.graph->num_vertices()},
                            {"darts", g.graph->num_darts()},
                            {"total_vertices", g.total_vertices},
                            {"assembly_component_sizes", std::move(sizes)},
                            {"component_sizes", component_sizes(*g.graph)},
                            {"subdivided", g.subdivided},
                            {"R", f.R}}}};
    write_text_file(cover_path, dump(j));
    reverify_from_disk(cover_path, g1, g2);
    out << "vertices " << g.graph->num_vertices() << "\n";
    out << "total_vertices " << g.total_vertices << "\n";
    out << "components " << g.component_sizes.size() << "\n";
    out << "subdivided " << (g.subdivided ? "yes" : "no") << "\n";
    return 0;
  }
  throw InputError("--backend must be star, ball or glue");
}

int cmd_build_objects(const std::string& x1p, const std::string& x2p, const std::string& seedp,
                      const std::string& outdir, const std::string& component, std::ostream& out) {
  ObjectGraphPtr x1 = object_graph_from_json(read_json_file(x1p), x1p);
  ObjectGraphPtr x2 = object_graph_from_json(read_json_file(x2p), x2p);
  ObjectGraphPtr uni = object_union(*x1, *x2);
  std::vector<StarMap> seeds = seeds_from_json(read_json_file(seedp), *uni, seedp);
  ObjectSystem sys = close_star_maps(x1, x2, seeds);
  if (!sys.local.axioms.all()) throw AxiomError(sys.local.axioms.failure);
  BuildFlags flags;
  flags.component = component;
  ObjectCover oc = build_object_cover(sys, build_options(flags));
  auto v1 = verify_object_covering(oc.mu1);
  auto v2 = verify_object_covering(oc.mu2);
  if (!v1.ok) throw VerificationError("first map: " + v1.failure);
  if (!v2.ok) throw VerificationError("second map: " + v2.failure);
  ensure_dir(outdir);
  Provenance p{"objects", {}, {}};
  for (const auto& a : sys.local.arrows) p.arrow_text.push_back(a.key);
  for (const auto& a : sys.local.atoms) p.atom_text.push_back(a.key);
  Json j = cover_to_json(oc.cover, p);
  j["w"] = object_graph_to_json(*oc.w);
  j["object_mu1"] = object_morphism_to_json(oc.mu1);
  j["object_mu2"] = object_morphism_to_json(oc.mu2);
  Json iso = Json::object();
  for (int d = 0; d < uni->graph->num_darts(); ++d) iso[uni->graph->dart_id(d)] = sys.isotropy[d];
  j["summary"]["isotropy"] = std::move(iso);
  j["summary"]["groupoid_size"] = sys.groupoid.size();
  j["summary"]["component_sizes"] = component_sizes(*oc.cover.graph);
  std::string path = join_path(outdir, "cover.json");
  write_text_file(path, dump(j));
  reverify_from_disk(path, x1->graph, x2->graph);
  out << "vertices " << oc.cover.graph->num_vertices() << "\n";
  out << "groupoid " << sys.groupoid.size() << "\n";
  out << "degrees " << oc.cover.degree1 << " " << oc.cover.degree2 << "\n";
  return 0;
}

int cmd_verify(const std::string& coverp, const std::string& a, const std::string& b, std::ostream& out) {
  Json j = read_json_file(coverp);
  if (j.is_object() && j.contains("w")) {
    ObjectGraphPtr x1 = object_graph_from_json(read_json_file(a), a);
    ObjectGraphPtr x2 = object_graph_from_json(read_json_file(b), b);
    ObjectGraphPtr w = object_graph_from_json(j["w"], coverp + ": /w");
    ObjectMorphism m1 = object_morphism_from_json(j.at("object_mu1"), w, x1, coverp + ": /object_mu1");
    ObjectMorphism m2 = object_morphism_from_json(j.at("object_mu2"), w, x2, coverp + ": /object_mu2");
    for (const auto& [name, m] : {std::pair{"first", &m1}, std::pair{"second", &m2}}) {
      auto v = verify_object_covering(*m);
      if (!v.ok) {
        out << "not a covering: " << name << " map: " << v.failure << "\n";
        return 1;
      }
    }
    out << "verified object covering, " << w->graph->num_vertices() << " vertices\n";
    return 0;
  }
  GraphPtr g1 = load_graph(a), g2 = load_graph(b);
  if (!j.is_object() || !j.contains("graph") || !j.contains("mu1") || !j.contains("mu2"))
    throw InputError(coverp + ": /: a cover needs graph, mu1 and mu2");
  GraphPtr graph = graph_from_json(j["graph"], coverp + ": /graph");
  // Tables that name elements missing from the given targets are a negative answer.
  StoredCover c{graph, {}, {}};
  for (const auto& [name, m, target] : {std::tuple{"mu1", &c.mu1, g1}, std::tuple{"mu2", &c.mu2, g2}}) {
    try {
      *m = morphism_from_json(j[name], graph, target, coverp + ": /" + name, false);
    } catch (const InputError& e) {
      out << "not a map onto the given graph: " << e.what() << "\n";
      return 1;
    }
  }
  for (const auto& [name, m] : {std::pair{"first", &c.mu1}, std::pair{"second", &c.mu2}}) {
    if (auto p = morphism_problem(*m)) {
      out << "not a morphism: " << name << " map: " << *p << "\n";
      return 1;
    }
    auto v = is_covering(*m);
    if (!v.ok) {
      out << "not a covering: " << name << " map: " << v.failures.front().reason << "\n";
      return 1;
    }
  }
  out << "verified common cover, " << c.graph->num_vertices() << " vertices\n";
  return 0;
}

int cmd_bounds(const std::string& kind, const std::map<std::string, std::int64_t>& given,
               std::optional<std::int64_t> actual, bool verbose, std::ostream& out) {
  BoundReport r = bound_report(parse_bound_kind(kind), {given, actual});
  if (!verbose) {
    out << r.bound.text << "\n";
  } else {
    out << "kind " << to_string(r.kind) << "\n";
    for (const auto& [k, v] : r.inputs) out << "input " << k << " " << v << "\n";
    out << "bound " << r.bound.text << "\n";
    out << "floor " << r.bound.floor << "\n";
    out << "ceil " << r.bound.ceil << "\n";
    if (r.actual) out << "actual " << *r.actual << "\n";
    out << "satisfied " << (r.satisfied ? "yes" : "no") << "\n";
  }
  return r.satisfied ? 0 : 1;
}

Json factor_json(const Factorization& f) {
  Json factors = Json::array();
  for (const auto& fac : f.factors) {
    Json darts = Json::array();
    for (int d : fac) darts.push_back(f.cover->dart_id(d));
    factors.push_back(std::move(darts));
  }
  return Json{{"degree", f.degree}, {"odd", f.odd}, {"cover_vertices", f.cover->num_vertices()},
              {"factors", std::move(factors)}};
}

int cmd_regular(const std::string& a, const std::string& b, const std::string& outdir,
                const std::string& component, std::ostream& out) {
  GraphPtr g1 = load_graph(a), g2 = load_graph(b);
  if (component != "least" && component != "all") throw InputError("--component must be least or all");
  RegularCover rc = regular_common_cover(g1, g2, component == "least");
  require_cover(rc.mu1, "first map");
  require_cover(rc.mu2, "second map");
  Factorization f1 = factorize_regular(g1), f2 = factorize_regular(g2);
  BoundReport br = bound_report(BoundKind::regular,
                                {{{"V1", g1->num_vertices()}, {"V2", g2->num_vertices()}, {"odd", f1.odd ? 1 : 0}},
                                 rc.total_vertices});
  Json j{{"graph", graph_to_json(*rc.graph)},
         {"mu1", morphism_to_json(rc.mu1)},
         {"mu2", morphism_to_json(rc.mu2)},
         {"provenance", Json{{"backend", "regular"}, {"factorization1", factor_json(f1)},
                             {"factorization2", factor_json(f2)}}},
         {"summary", Json{{"vertices", rc.graph->num_vertices()},
                          {"darts", rc.graph->num_darts()},
                          {"total_vertices", rc.total_vertices},
                          {"num_components", rc.num_components},
                          {"component_sizes", component_sizes(*rc.graph)},
                          {"bound", br.bound.text},
                          {"bound_satisfied", br.satisfied}}}};
  ensure_dir(outdir);
  std::string path = join_path(outdir, "cover.json");
  write_text_file(path, dump(j));
  reverify_from_disk(path, g1, g2);
  out << "vertices " << rc.graph->num_vertices() << "\n";
  out << "total_vertices " << rc.total_vertices << "\n";
  out << "bound " << br.bound.text << "\n";
  if (!br.satisfied) throw VerificationError("regular bound violated");
  return 0;
}

int cmd_export_dot(const std::string& file, const std::string& outp, std::ostream& out) {
  std::string dot = to_dot(*load_graph(file), fs::path(file).stem().string());
  if (outp.empty()) out << dot;
  else write_text_file(outp, dot);
  return 0;
}

int cmd_oracle(const std::string& a, const std::string& b, int max_degree, std::int64_t budget,
               const std::string& outdir, std::ostream& out) {
  GraphPtr g1 = load_graph(a), g2 = load_graph(b);
  OracleResult r = brute_common_cover(g1, g2, max_degree, budget);
  out << "candidates " << r.candidates << "\n";
  if (!r.cover) {
    out << "no common cover of degree <= " << max_degree << " over the first graph\n";
    return 1;
  }
  out << "least common cover " << (*r.cover)->num_vertices() << " vertices, degree " << r.degree_over_g1
      << " over the first graph\n";
  if (!outdir.empty()) {
    ensure_dir(outdir);
    Json j{{"graph", graph_to_json(**r.cover)},
           {"mu1", morphism_to_json(r.to_g1)},
           {"mu2", morphism_to_json(r.to_g2)},
           {"provenance", Json{{"backend", "oracle"}}},
           {"summary", Json{{"vertices", (*r.cover)->num_vertices()}, {"degree1", r.degree_over_g1}}}};
    std::string path = join_path(outdir, "cover.json");
    write_text_file(path, dump(j));
    reverify_from_disk(path, g1, g2);
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Common finite covers of graphs"};
  app.require_subcommand(1);
  std::function<int()> action;

  std::string a, b;
  auto* check = app.add_subcommand("check", "Decide whether two graphs have a common finite cover");
  check->add_option("A", a)->required();
  check->add_option("B", b)->required();
  check->callback([&] { action = [&] { return cmd_check(a, b, out); }; });

  BuildFlags bf;
  auto* build = app.add_subcommand("build", "Build, verify and write a common finite cover");
  build->add_option("A", bf.a)->required();
  build->add_option("B", bf.b)->required();
  build->add_option("--backend", bf.backend)->check(CLI::IsMember({"star", "ball", "glue"}));
  build->add_option("--strategy", bf.strategy)->check(CLI::IsMember({"dr", "theta"}));
  build->add_option("-R", bf.R)->check(CLI::Range(1, 8));
  build->add_option("--explore", bf.explore)->check(CLI::NonNegativeNumber);
  build->add_option("--component", bf.component)->check(CLI::IsMember({"least", "all"}));
  build->add_flag("--based", bf.based);
  build->add_option("--phi-radius", bf.phi_radius)->check(CLI::NonNegativeNumber);
  build->add_option("-o,--out", bf.out)->required();
  build->callback([&] { action = [&] { return cmd_build(bf, out); }; });

  std::string x1, x2, seeds, oout, ocomponent = "least";
  auto* bobj = app.add_subcommand("build-objects", "Build a common cover of two graphs of objects");
  bobj->add_option("X1", x1)->required();
  bobj->add_option("X2", x2)->required();
  bobj->add_option("--seeds", seeds)->required();
  bobj->add_option("--component", ocomponent)->check(CLI::IsMember({"least", "all"}));
  bobj->add_option("-o,--out", oout)->required();
  bobj->callback([&] { action = [&] { return cmd_build_objects(x1, x2, seeds, oout, ocomponent, out); }; });

  std::string coverp;
  auto* verify = app.add_subcommand("verify", "Re-verify a stored cover against its targets");
  verify->add_option("COVER", coverp)->required();
  verify->add_option("A", a)->required();
  verify->add_option("B", b)->required();
  verify->callback([&] { action = [&] { return cmd_verify(coverp, a, b, out); }; });

  std::string kind;
  std::map<std::string, std::optional<std::int64_t>> params;
  std::optional<std::int64_t> actual;
  bool odd = false, verbose = false;
  auto* bounds = app.add_subcommand("bounds", "Evaluate a closed-form size bound");
  bounds->add_option("--kind", kind)->required()->check(CLI::IsMember({"leighton", "ball", "objects", "regular"}));
  for (const auto& [name, flag] : std::vector<std::pair<std::string, std::string>>{
           {"E", "--E,--edges"}, {"V", "--V"}, {"V1", "--V1,--v1"}, {"V2", "--V2,--v2"},
           {"d", "-d,--degree"}, {"R", "-R"}, {"lcm", "--lcm"}})
    bounds->add_option(flag, params[name]);
  bounds->add_flag("--odd", odd);
  bounds->add_option("--actual", actual);
  bounds->add_flag("-v,--verbose", verbose);
  bounds->callback([&] {
    action = [&] {
      std::map<std::string, std::int64_t> given;
      for (const auto& [k, v] : params)
        if (v) given[k] = *v;
      if (kind == "regular") given["odd"] = odd ? 1 : 0;
      return cmd_bounds(kind, given, actual, verbose, out);
    };
  });

  std::string rout, rcomponent = "least";
  auto* regular = app.add_subcommand("regular", "Common cover of two regular graphs of equal degree");
  regular->add_option("A", a)->required();
  regular->add_option("B", b)->required();
  regular->add_option("--component", rcomponent)->check(CLI::IsMember({"least", "all"}));
  regular->add_option("-o,--out", rout)->required();
  regular->callback([&] { action = [&] { return cmd_regular(a, b, rout, rcomponent, out); }; });

  std::string dotfile, dotout;
  auto* dot = app.add_subcommand("export-dot", "Write a graph in dot format");
  dot->add_option("FILE", dotfile)->required();
  dot->add_option("-o,--out", dotout);
  dot->callback([&] { action = [&] { return cmd_export_dot(dotfile, dotout, out); }; });

  int max_degree = 6;
  std::int64_t budget = 5'000'000;
  std::string orout;
  auto* oracle = app.add_subcommand("oracle", "Brute-force search for a least common cover");
  oracle->add_option("A", a)->required();
  oracle->add_option("B", b)->required();
  oracle->add_option("--max", max_degree)->check(CLI::Range(1, 12));
  oracle->add_option("--budget", budget)->check(CLI::PositiveNumber);
  oracle->add_option("-o,--out", orout);
  oracle->callback([&] { action = [&] { return cmd_oracle(a, b, max_degree, budget, orout, out); }; });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  try {
    return action();
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  } catch (const VerificationError& e) {
    err << "verification failure: " << e.what() << "\n";
    return 3;
  } catch (const AxiomError& e) {
    err << "axioms unmet: " << e.what() << "\n";
    return 1;
  } catch (const BudgetExceeded& e) {
    err << "search abandoned: " << e.what() << "\n";
    return 1;
  } catch (const OrientationError& e) {
    err << "orientation: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace leighton
