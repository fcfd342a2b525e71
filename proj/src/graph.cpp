#include "leighton/graph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

#include "leighton/errors.hpp"

namespace leighton {

int Graph::max_degree() const {
  int d = 0;
  for (const auto& s : stars_) d = std::max(d, static_cast<int>(s.size()));
  return d;
}

std::optional<int> Graph::find_vertex(const std::string& id) const {
  auto it = vertex_index_.find(id);
  if (it == vertex_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> Graph::find_dart(const std::string& id) const {
  auto it = dart_index_.find(id);
  if (it == dart_index_.end()) return std::nullopt;
  return it->second;
}

int Graph::vertex_index(const std::string& id) const {
  auto v = find_vertex(id);
  if (!v) throw InputError("vertex not in graph: '" + id + "'");
  return *v;
}

int Graph::dart_index(const std::string& id) const {
  auto d = find_dart(id);
  if (!d) throw InputError("dart not in graph: '" + id + "'");
  return *d;
}

bool Graph::operator==(const Graph& o) const {
  return vertex_ids_ == o.vertex_ids_ && dart_ids_ == o.dart_ids_ &&
         origin_ == o.origin_ && reverse_ == o.reverse_ &&
         vertex_colour_ == o.vertex_colour_ && dart_colour_ == o.dart_colour_;
}

void GraphBuilder::add_vertex(std::string id, Colour colour) {
  vertices_.push_back({std::move(id), std::move(colour)});
}

void GraphBuilder::add_dart(std::string id, std::string reverse,
                            std::string from, Colour colour) {
  darts_.push_back(
      {std::move(id), std::move(reverse), std::move(from), std::move(colour)});
}

void GraphBuilder::add_edge(std::string d, std::string dbar, std::string from,
                            std::string to, Colour colour, Colour colour_bar) {
  add_dart(d, dbar, std::move(from), std::move(colour));
  add_dart(std::move(dbar), std::move(d), std::move(to), std::move(colour_bar));
}

GraphPtr GraphBuilder::build() const {
  auto g = std::make_shared<Graph>();
  std::vector<int> vorder(vertices_.size()), dorder(darts_.size());
  std::iota(vorder.begin(), vorder.end(), 0);
  std::iota(dorder.begin(), dorder.end(), 0);
  std::sort(vorder.begin(), vorder.end(),
            [&](int a, int b) { return vertices_[a].id < vertices_[b].id; });
  std::sort(dorder.begin(), dorder.end(),
            [&](int a, int b) { return darts_[a].id < darts_[b].id; });
  for (int i : vorder) {
    const auto& v = vertices_[i];
    if (!g->vertex_index_.emplace(v.id, g->num_vertices()).second)
      throw InputError("duplicate vertex id '" + v.id + "'");
    g->vertex_ids_.push_back(v.id);
    g->vertex_colour_.push_back(v.colour);
  }
  for (int i : dorder) {
    const auto& d = darts_[i];
    if (!g->dart_index_.emplace(d.id, g->num_darts()).second)
      throw InputError("duplicate dart id '" + d.id + "'");
    g->dart_ids_.push_back(d.id);
    g->dart_colour_.push_back(d.colour);
  }
  g->origin_.resize(darts_.size());
  g->reverse_.resize(darts_.size());
  g->stars_.assign(vertices_.size(), {});
  for (int k = 0; k < static_cast<int>(dorder.size()); ++k) {
    const auto& d = darts_[dorder[k]];
    auto from = g->find_vertex(d.from);
    if (!from)
      throw InputError("dart '" + d.id + "': unknown origin vertex '" + d.from + "'");
    auto rev = g->find_dart(d.reverse);
    if (!rev)
      throw InputError("dart '" + d.id + "': unknown reverse dart '" + d.reverse + "'");
    g->origin_[k] = *from;
    g->reverse_[k] = *rev;
    g->stars_[*from].push_back(k);
  }
  return g;
}

ValidationReport validate_graph(const Graph& g) {
  ValidationReport r;
  for (int d = 0; d < g.num_darts(); ++d) {
    int e = g.reverse(d);
    if (e == d) {
      r.violations.push_back("fixed point of reversal: dart '" + g.dart_id(d) + "'");
    } else if (g.reverse(e) != d) {
      r.violations.push_back("reversal not involutive: dart '" + g.dart_id(d) +
                             "' -> '" + g.dart_id(e) + "' -> '" +
                             g.dart_id(g.reverse(e)) + "'");
    }
  }
  r.ok = r.violations.empty();
  return r;
}

void require_valid(const Graph& g) {
  auto r = validate_graph(g);
  if (r.ok) return;
  std::string msg = "invalid graph:";
  for (const auto& v : r.violations) msg += " " + v + ";";
  throw InputError(msg);
}

const std::vector<int>& star(const Graph& g, const std::string& vertex) {
  return g.star(g.vertex_index(vertex));
}

const std::vector<int>& star(const Graph& g, int vertex) {
  if (vertex < 0 || vertex >= g.num_vertices())
    throw InputError("vertex not in graph: #" + std::to_string(vertex));
  return g.star(vertex);
}

namespace {

bool colours_clash(const Colour& a, const Colour& b) { return a && b && *a != *b; }

}  // namespace

std::optional<std::string> morphism_problem(const GraphMorphism& m) {
  if (!m.source || !m.target) return "missing source or target";
  const Graph& s = *m.source;
  const Graph& t = *m.target;
  if (static_cast<int>(m.vmap.size()) != s.num_vertices() ||
      static_cast<int>(m.dmap.size()) != s.num_darts())
    return "map sizes do not match the source graph";
  for (int v = 0; v < s.num_vertices(); ++v) {
    if (m.vmap[v] < 0 || m.vmap[v] >= t.num_vertices())
      return "vertex '" + s.vertex_id(v) + "' has no valid image";
    if (colours_clash(s.vertex_colour(v), t.vertex_colour(m.vmap[v])))
      return "vertex '" + s.vertex_id(v) + "' changes colour";
  }
  for (int d = 0; d < s.num_darts(); ++d) {
    int f = m.dmap[d];
    if (f < 0 || f >= t.num_darts())
      return "dart '" + s.dart_id(d) + "' has no valid image";
    if (t.origin(f) != m.vmap[s.origin(d)])
      return "dart '" + s.dart_id(d) + "' does not preserve origin";
    if (m.dmap[s.reverse(d)] != t.reverse(f))
      return "dart '" + s.dart_id(d) + "' does not preserve reversal";
    if (colours_clash(s.dart_colour(d), t.dart_colour(f)))
      return "dart '" + s.dart_id(d) + "' changes colour";
  }
  return std::nullopt;
}

CoveringCheck is_covering(const GraphMorphism& m) {
  if (auto p = morphism_problem(m)) throw InputError("not a graph morphism: " + *p);
  const Graph& s = *m.source;
  const Graph& t = *m.target;
  CoveringCheck c;
  std::vector<char> vhit(t.num_vertices(), 0), dhit(t.num_darts(), 0);
  for (int v = 0; v < s.num_vertices(); ++v) {
    vhit[m.vmap[v]] = 1;
    const auto& st = s.star(v);
    std::set<int> image;
    for (int d : st) {
      image.insert(m.dmap[d]);
      dhit[m.dmap[d]] = 1;
    }
    if (image.size() != st.size())
      c.failures.push_back({v, -1, -1, "star map not injective"});
    else if (image.size() != t.star(m.vmap[v]).size())
      c.failures.push_back({v, -1, -1, "star map not surjective"});
  }
  for (int w = 0; w < t.num_vertices(); ++w)
    if (!vhit[w]) c.failures.push_back({-1, w, -1, "vertex not covered"});
  for (int f = 0; f < t.num_darts(); ++f)
    if (!dhit[f]) c.failures.push_back({-1, -1, f, "dart not covered"});
  c.ok = c.failures.empty();
  return c;
}

GraphMorphism identity_morphism(const GraphPtr& g) {
  GraphMorphism m{g, g, std::vector<int>(g->num_vertices()),
                  std::vector<int>(g->num_darts())};
  std::iota(m.vmap.begin(), m.vmap.end(), 0);
  std::iota(m.dmap.begin(), m.dmap.end(), 0);
  return m;
}

GraphMorphism compose(const GraphMorphism& second, const GraphMorphism& first) {
  if (!(*first.target == *second.source))
    throw InputError("compose: target of the first map is not the source of the second");
  GraphMorphism m{first.source, second.target, {}, {}};
  for (int x : first.vmap) m.vmap.push_back(second.vmap[x]);
  for (int x : first.dmap) m.dmap.push_back(second.dmap[x]);
  return m;
}

FiberProduct fiber_product(const GraphMorphism& m1, const GraphMorphism& m2) {
  if (!(*m1.target == *m2.target))
    throw InputError("fiber product requires coverings onto the same graph");
  if (!is_covering(m1).ok || !is_covering(m2).ok)
    throw InputError("fiber product requires coverings");
  const Graph& a = *m1.source;
  const Graph& b = *m2.source;
  auto vid = [&](int u, int v) { return "(" + a.vertex_id(u) + "," + b.vertex_id(v) + ")"; };
  auto did = [&](int d, int e) { return "(" + a.dart_id(d) + "," + b.dart_id(e) + ")"; };
  GraphBuilder gb;
  struct Pair {
    int x, y;
  };
  std::vector<Pair> vpairs, dpairs;
  for (int u = 0; u < a.num_vertices(); ++u)
    for (int v = 0; v < b.num_vertices(); ++v)
      if (m1.vmap[u] == m2.vmap[v]) {
        gb.add_vertex(vid(u, v), a.vertex_colour(u) ? a.vertex_colour(u) : b.vertex_colour(v));
        vpairs.push_back({u, v});
      }
  for (int d = 0; d < a.num_darts(); ++d)
    for (int e = 0; e < b.num_darts(); ++e)
      if (m1.dmap[d] == m2.dmap[e]) {
        gb.add_dart(did(d, e), did(a.reverse(d), b.reverse(e)),
                    vid(a.origin(d), b.origin(e)),
                    a.dart_colour(d) ? a.dart_colour(d) : b.dart_colour(e));
        dpairs.push_back({d, e});
      }
  FiberProduct fp;
  fp.graph = gb.build();
  const Graph& g = *fp.graph;
  fp.proj1 = {fp.graph, m1.source, std::vector<int>(g.num_vertices()),
              std::vector<int>(g.num_darts())};
  fp.proj2 = {fp.graph, m2.source, std::vector<int>(g.num_vertices()),
              std::vector<int>(g.num_darts())};
  for (const auto& p : vpairs) {
    int i = g.vertex_index(vid(p.x, p.y));
    fp.proj1.vmap[i] = p.x;
    fp.proj2.vmap[i] = p.y;
  }
  for (const auto& p : dpairs) {
    int i = g.dart_index(did(p.x, p.y));
    fp.proj1.dmap[i] = p.x;
    fp.proj2.dmap[i] = p.y;
  }
  return fp;
}

std::vector<std::vector<int>> components(const Graph& g) {
  std::vector<int> comp(g.num_vertices(), -1);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < g.num_vertices(); ++s) {
    if (comp[s] >= 0) continue;
    int c = static_cast<int>(out.size());
    out.emplace_back();
    std::deque<int> q{s};
    comp[s] = c;
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      out[c].push_back(v);
      for (int d : g.star(v)) {
        int w = g.terminus(d);
        if (comp[w] < 0) {
          comp[w] = c;
          q.push_back(w);
        }
      }
    }
    std::sort(out[c].begin(), out[c].end());
  }
  return out;
}

bool is_connected(const Graph& g) { return components(g).size() <= 1; }

int diameter(const Graph& g) {
  int best = 0;
  for (int s = 0; s < g.num_vertices(); ++s) {
    std::vector<int> dist(g.num_vertices(), -1);
    std::deque<int> q{s};
    dist[s] = 0;
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      best = std::max(best, dist[v]);
      for (int d : g.star(v)) {
        int w = g.terminus(d);
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          q.push_back(w);
        }
      }
    }
  }
  return best;
}

Subgraph induced_subgraph(const GraphPtr& g, const std::vector<int>& vertices) {
  std::vector<char> in(g->num_vertices(), 0);
  for (int v : vertices) in[v] = 1;
  GraphBuilder gb;
  for (int v = 0; v < g->num_vertices(); ++v)
    if (in[v]) gb.add_vertex(g->vertex_id(v), g->vertex_colour(v));
  for (int d = 0; d < g->num_darts(); ++d) {
    if (!in[g->origin(d)]) continue;
    if (!in[g->terminus(d)])
      throw InputError("induced_subgraph: vertex set is not a union of components");
    gb.add_dart(g->dart_id(d), g->dart_id(g->reverse(d)),
                g->vertex_id(g->origin(d)), g->dart_colour(d));
  }
  Subgraph s;
  s.graph = gb.build();
  s.inclusion = {s.graph, g, {}, {}};
  for (const auto& id : s.graph->vertex_ids()) s.inclusion.vmap.push_back(g->vertex_index(id));
  for (const auto& id : s.graph->dart_ids()) s.inclusion.dmap.push_back(g->dart_index(id));
  return s;
}

namespace {

class CoveringSearch {
 public:
  CoveringSearch(const Graph& h, const Graph& g, std::int64_t budget)
      : h_(h), g_(g), budget_(budget), vimg_(h.num_vertices(), -1),
        dimg_(h.num_darts(), -1) {}

  bool run(int start, int image) {
    if (!vertex_ok(start, image)) return false;
    vimg_[start] = image;
    order_.push_back(start);
    if (search(0, 0)) return true;
    vimg_[start] = -1;
    order_.clear();
    return false;
  }

  const std::vector<int>& vimg() const { return vimg_; }
  const std::vector<int>& dimg() const { return dimg_; }

 private:
  bool vertex_ok(int u, int y) const {
    return h_.degree(u) == g_.degree(y) &&
           !colours_clash(h_.vertex_colour(u), g_.vertex_colour(y));
  }

  bool image_taken(int u, int f) const {
    for (int d : h_.star(u))
      if (dimg_[d] == f) return true;
    return false;
  }

  bool search(std::size_t oi, std::size_t pos) {
    if (--budget_ < 0) throw BudgetExceeded("covering search budget exceeded");
    if (oi == order_.size()) return true;
    int u = order_[oi];
    const auto& st = h_.star(u);
    if (pos == st.size()) return search(oi + 1, 0);
    int d = st[pos];
    if (dimg_[d] >= 0) return search(oi, pos + 1);
    int y = vimg_[u];
    for (int f : g_.star(y)) {
      if (image_taken(u, f)) continue;
      if (colours_clash(h_.dart_colour(d), g_.dart_colour(f))) continue;
      int rd = h_.reverse(d), rf = g_.reverse(f);
      if (colours_clash(h_.dart_colour(rd), g_.dart_colour(rf))) continue;
      int v = h_.terminus(d), w = g_.terminus(f);
      bool new_vertex = vimg_[v] < 0;
      if (new_vertex) {
        if (!vertex_ok(v, w)) continue;
      } else if (vimg_[v] != w) {
        continue;
      }
      if (dimg_[rd] >= 0 && rd != d) continue;
      // reverse dart lands in star(v); its image must be free there
      if (!new_vertex && rd != d && image_taken(v, rf)) continue;
      dimg_[d] = f;
      dimg_[rd] = rf;
      if (new_vertex) {
        vimg_[v] = w;
        order_.push_back(v);
      }
      if (search(oi, pos + 1)) return true;
      if (new_vertex) {
        vimg_[v] = -1;
        order_.pop_back();
      }
      dimg_[d] = -1;
      dimg_[rd] = -1;
    }
    return false;
  }

  const Graph& h_;
  const Graph& g_;
  std::int64_t budget_;
  std::vector<int> vimg_, dimg_, order_;
};

}  // namespace

std::optional<GraphMorphism> find_covering(const GraphPtr& h, const GraphPtr& g,
                                           std::int64_t budget) {
  if (h->num_vertices() == 0 || g->num_vertices() == 0) return std::nullopt;
  if (!is_connected(*h)) throw InputError("find_covering: source must be connected");
  if (h->num_vertices() % g->num_vertices() != 0) return std::nullopt;
  if (static_cast<std::int64_t>(h->num_darts()) * g->num_vertices() !=
      static_cast<std::int64_t>(g->num_darts()) * h->num_vertices())
    return std::nullopt;
  for (int y = 0; y < g->num_vertices(); ++y) {
    CoveringSearch s(*h, *g, budget);
    if (s.run(0, y)) {
      GraphMorphism m{h, g, s.vimg(), s.dimg()};
      if (is_covering(m).ok) return m;
    }
  }
  return std::nullopt;
}

bool isomorphic(const GraphPtr& a, const GraphPtr& b) {
  if (a->num_vertices() != b->num_vertices() || a->num_darts() != b->num_darts())
    return false;
  auto ca = components(*a), cb = components(*b);
  if (ca.size() != cb.size()) return false;
  std::vector<GraphPtr> pa, pb;
  for (const auto& c : ca) pa.push_back(induced_subgraph(a, c).graph);
  for (const auto& c : cb) pb.push_back(induced_subgraph(b, c).graph);
  std::vector<char> used(pb.size(), 0);
  for (const auto& x : pa) {
    bool found = false;
    for (std::size_t j = 0; j < pb.size() && !found; ++j) {
      if (used[j] || pb[j]->num_vertices() != x->num_vertices() ||
          pb[j]->num_darts() != x->num_darts())
        continue;
      if (find_covering(x, pb[j])) {
        used[j] = 1;
        found = true;
      }
    }
    if (!found) return false;
  }
  return true;
}

GraphPtr disjoint_union(const GraphPtr& a, const GraphPtr& b) {
  GraphBuilder gb;
  for (const auto& [g, tag] : {std::pair{a, std::string("1:")}, std::pair{b, std::string("2:")}}) {
    for (int v = 0; v < g->num_vertices(); ++v) gb.add_vertex(tag + g->vertex_id(v), g->vertex_colour(v));
    for (int d = 0; d < g->num_darts(); ++d)
      gb.add_dart(tag + g->dart_id(d), tag + g->dart_id(g->reverse(d)),
                  tag + g->vertex_id(g->origin(d)), g->dart_colour(d));
  }
  return gb.build();
}

std::string padded(std::int64_t value, std::int64_t bound) {
  std::string s = std::to_string(value);
  std::size_t width = std::to_string(std::max<std::int64_t>(bound - 1, 0)).size();
  if (s.size() < width) s.insert(0, width - s.size(), '0');
  return s;
}

GraphPtr graph_from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
  GraphBuilder gb;
  for (int v = 0; v < n; ++v) gb.add_vertex("v" + padded(v, n));
  const int m = static_cast<int>(edges.size());
  for (int k = 0; k < m; ++k) {
    std::string e = "e" + padded(k, m);
    gb.add_edge(e + "+", e + "-", "v" + padded(edges[k].first, n),
                "v" + padded(edges[k].second, n));
  }
  return gb.build();
}

GraphPtr cycle(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return graph_from_edges(n, e);
}

GraphPtr path(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return graph_from_edges(n, e);
}

GraphPtr rose(int d) {
  return graph_from_edges(1, std::vector<std::pair<int, int>>(d, {0, 0}));
}

GraphPtr theta(int d) {
  return graph_from_edges(2, std::vector<std::pair<int, int>>(d, {0, 1}));
}

GraphPtr complete(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return graph_from_edges(n, e);
}

GraphPtr complete_bipartite(int a, int b) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) e.emplace_back(i, a + j);
  return graph_from_edges(a + b, e);
}

}  // namespace leighton
