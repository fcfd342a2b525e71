#include "leighton/regular.hpp"

#include <algorithm>
#include <functional>

#include "leighton/errors.hpp"

namespace leighton {

namespace {

// Darts of an Euler circuit; g connected with all degrees even.
std::vector<int> euler_circuit(const Graph& g) {
  std::vector<char> used(g.num_darts(), 0);
  std::vector<std::size_t> next(g.num_vertices(), 0);
  std::vector<int> stack, circuit;
  // Each stack entry is the dart used to arrive; -1 for the start.
  std::vector<int> at{0};
  stack.push_back(-1);
  while (!stack.empty()) {
    int v = at.back();
    const auto& st = g.star(v);
    while (next[v] < st.size() && used[st[next[v]]]) ++next[v];
    if (next[v] == st.size()) {
      if (stack.back() >= 0) circuit.push_back(stack.back());
      stack.pop_back();
      at.pop_back();
      continue;
    }
    int d = st[next[v]];
    used[d] = used[g.reverse(d)] = 1;
    stack.push_back(d);
    at.push_back(g.terminus(d));
  }
  std::reverse(circuit.begin(), circuit.end());
  return circuit;
}

// Splits a k-regular bipartite multigraph into k perfect matchings. Edges
// are (left, right) pairs; the result lists edge indices per matching.
std::vector<std::vector<int>> split_matchings(int n, const std::vector<std::pair<int, int>>& edges,
                                              int k) {
  std::vector<char> removed(edges.size(), 0);
  std::vector<std::vector<int>> out;
  for (int round = 0; round < k; ++round) {
    std::vector<std::vector<int>> adj(n);
    for (std::size_t i = 0; i < edges.size(); ++i)
      if (!removed[i]) adj[edges[i].first].push_back(static_cast<int>(i));
    std::vector<int> match_right(n, -1);  // edge index matched at each right vertex
    std::vector<char> seen;
    std::function<bool(int)> augment = [&](int u) {
      for (int e : adj[u]) {
        int w = edges[e].second;
        if (seen[w]) continue;
        seen[w] = 1;
        if (match_right[w] < 0 || augment(edges[match_right[w]].first)) {
          match_right[w] = e;
          return true;
        }
      }
      return false;
    };
    for (int u = 0; u < n; ++u) {
      seen.assign(n, 0);
      if (!augment(u)) throw VerificationError("regular bipartite graph without a perfect matching");
    }
    std::vector<int> m;
    for (int w = 0; w < n; ++w) {
      m.push_back(match_right[w]);
      removed[match_right[w]] = 1;
    }
    std::sort(m.begin(), m.end());
    out.push_back(std::move(m));
  }
  return out;
}

GraphPtr double_cover(const Graph& g, GraphMorphism& proj, const GraphPtr& gp) {
  GraphBuilder gb;
  auto vid = [&](int v, int s) { return g.vertex_id(v) + "/" + std::to_string(s); };
  auto did = [&](int d, int s) { return g.dart_id(d) + "/" + std::to_string(s); };
  for (int v = 0; v < g.num_vertices(); ++v)
    for (int s = 0; s < 2; ++s) gb.add_vertex(vid(v, s));
  for (int d = 0; d < g.num_darts(); ++d)
    for (int s = 0; s < 2; ++s) gb.add_dart(did(d, s), did(g.reverse(d), 1 - s), vid(g.origin(d), s));
  GraphPtr h = gb.build();
  proj = {h, gp, std::vector<int>(h->num_vertices()), std::vector<int>(h->num_darts())};
  for (int v = 0; v < g.num_vertices(); ++v)
    for (int s = 0; s < 2; ++s) proj.vmap[h->vertex_index(vid(v, s))] = v;
  for (int d = 0; d < g.num_darts(); ++d)
    for (int s = 0; s < 2; ++s) proj.dmap[h->dart_index(did(d, s))] = d;
  return h;
}

}  // namespace

bool is_two_factor(const Graph& g, const std::vector<int>& darts) {
  std::vector<int> deg(g.num_vertices(), 0);
  std::vector<char> edge(g.num_darts(), 0);
  for (int d : darts) {
    if (edge[d]) return false;
    edge[d] = edge[g.reverse(d)] = 1;
    ++deg[g.origin(d)];
    ++deg[g.terminus(d)];
  }
  return std::all_of(deg.begin(), deg.end(), [](int x) { return x == 2; });
}

bool is_perfect_matching(const Graph& g, const std::vector<int>& darts) {
  std::vector<int> deg(g.num_vertices(), 0);
  for (int d : darts) {
    if (g.origin(d) == g.terminus(d)) return false;
    ++deg[g.origin(d)];
    ++deg[g.terminus(d)];
  }
  return std::all_of(deg.begin(), deg.end(), [](int x) { return x == 1; });
}

bool is_bipartite(const Graph& g) {
  std::vector<int> side(g.num_vertices(), -1);
  for (int s = 0; s < g.num_vertices(); ++s) {
    if (side[s] >= 0) continue;
    side[s] = 0;
    std::vector<int> todo{s};
    while (!todo.empty()) {
      int v = todo.back();
      todo.pop_back();
      for (int d : g.star(v)) {
        int w = g.terminus(d);
        if (side[w] < 0) {
          side[w] = 1 - side[v];
          todo.push_back(w);
        } else if (side[w] == side[v]) {
          return false;
        }
      }
    }
  }
  return true;
}

Factorization factorize_regular(const GraphPtr& gp) {
  const Graph& g = *gp;
  if (g.num_vertices() == 0 || !is_connected(g)) throw InputError("regular graph required");
  int k = g.degree(0);
  for (int v = 0; v < g.num_vertices(); ++v)
    if (g.degree(v) != k || g.vertex_colour(v)) throw InputError("regular graph required");
  for (int d = 0; d < g.num_darts(); ++d)
    if (g.dart_colour(d)) throw InputError("regular graph required");
  if (k == 0) throw InputError("regular graph required");

  Factorization f;
  f.degree = k;
  f.odd = k % 2 == 1;
  int n = g.num_vertices();
  if (!f.odd) {
    f.cover = gp;
    std::vector<int> circuit = euler_circuit(g);
    if (static_cast<int>(circuit.size()) != g.num_edges())
      throw VerificationError("Euler circuit misses edges");
    std::vector<std::pair<int, int>> edges;
    for (int d : circuit) edges.emplace_back(g.origin(d), g.terminus(d));
    auto parts = split_matchings(n, edges, k / 2);
    GraphPtr base = rose(k / 2);
    f.to_base = {gp, base, std::vector<int>(n, 0), std::vector<int>(g.num_darts())};
    for (int i = 0; i < k / 2; ++i) {
      std::string e = "e" + padded(i, k / 2);
      int plus = base->dart_index(e + "+"), minus = base->dart_index(e + "-");
      std::vector<int> factor;
      for (int idx : parts[i]) {
        int d = circuit[idx];
        factor.push_back(d);
        f.to_base.dmap[d] = plus;
        f.to_base.dmap[g.reverse(d)] = minus;
      }
      std::sort(factor.begin(), factor.end());
      if (!is_two_factor(g, factor)) throw VerificationError("factor is not a 2-factor");
      f.factors.push_back(std::move(factor));
    }
  } else {
    GraphMorphism proj;
    f.cover = double_cover(g, proj, gp);
    f.to_input = proj;
    const Graph& h = *f.cover;
    if (!is_bipartite(h)) throw VerificationError("double cover is not bipartite");
    // Side-0 vertices have even index: ids end in "/0" and "/1" in pairs.
    std::vector<int> side(h.num_vertices()), slot(h.num_vertices());
    for (int v = 0; v < h.num_vertices(); ++v) {
      side[v] = h.vertex_id(v).back() == '1';
      slot[v] = proj.vmap[v];
    }
    std::vector<int> reps;
    std::vector<std::pair<int, int>> edges;
    for (int d = 0; d < h.num_darts(); ++d)
      if (side[h.origin(d)] == 0) {
        reps.push_back(d);
        edges.emplace_back(slot[h.origin(d)], slot[h.terminus(d)]);
      }
    auto parts = split_matchings(n, edges, k);
    GraphPtr base = theta(k);
    f.to_base = {f.cover, base, std::vector<int>(h.num_vertices()), std::vector<int>(h.num_darts())};
    int a = base->vertex_index("v0"), b = base->vertex_index("v1");
    for (int v = 0; v < h.num_vertices(); ++v) f.to_base.vmap[v] = side[v] ? b : a;
    for (int i = 0; i < k; ++i) {
      std::string e = "e" + padded(i, k);
      int plus = base->dart_index(e + "+"), minus = base->dart_index(e + "-");
      std::vector<int> factor;
      for (int idx : parts[i]) {
        int d = reps[idx];
        factor.push_back(d);
        f.to_base.dmap[d] = plus;
        f.to_base.dmap[h.reverse(d)] = minus;
      }
      std::sort(factor.begin(), factor.end());
      if (!is_perfect_matching(h, factor)) throw VerificationError("factor is not a perfect matching");
      f.factors.push_back(std::move(factor));
    }
    if (!is_covering(proj).ok) throw VerificationError("double cover does not cover the input");
  }
  if (!is_covering(f.to_base).ok) throw VerificationError("factorization does not give a covering");
  return f;
}

RegularCover regular_common_cover(const GraphPtr& g1, const GraphPtr& g2, bool least) {
  Factorization f1 = factorize_regular(g1);
  Factorization f2 = factorize_regular(g2);
  if (f1.degree != f2.degree) throw InputError("degree mismatch");
  FiberProduct fp = fiber_product(f1.to_base, f2.to_base);
  GraphMorphism m1 = f1.odd ? compose(*f1.to_input, fp.proj1) : fp.proj1;
  GraphMorphism m2 = f2.odd ? compose(*f2.to_input, fp.proj2) : fp.proj2;
  RegularCover rc;
  rc.total_vertices = fp.graph->num_vertices();
  std::int64_t cap = static_cast<std::int64_t>(g1->num_vertices()) * g2->num_vertices() * (f1.odd ? 2 : 1);
  if (rc.total_vertices > cap) throw VerificationError("fibre product exceeds the regular bound");
  auto comps = components(*fp.graph);
  rc.num_components = static_cast<int>(comps.size());
  if (least) {
    auto best = *std::min_element(comps.begin(), comps.end(), [](const auto& a, const auto& b) {
      return a.size() != b.size() ? a.size() < b.size() : a.front() < b.front();
    });
    Subgraph s = induced_subgraph(fp.graph, best);
    rc.graph = s.graph;
    rc.mu1 = compose(m1, s.inclusion);
    rc.mu2 = compose(m2, s.inclusion);
  } else {
    rc.graph = fp.graph;
    rc.mu1 = m1;
    rc.mu2 = m2;
  }
  if (!is_covering(rc.mu1).ok || !is_covering(rc.mu2).ok)
    throw VerificationError("regular fast path produced a non-covering");
  return rc;
}

}  // namespace leighton
