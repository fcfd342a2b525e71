#include "leighton/oracle.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>
#include <vector>

#include "leighton/errors.hpp"

namespace leighton {

namespace {

// Representative dart per geometric edge, split into spanning-tree edges and
// the rest.
struct EdgeSplit {
  std::vector<int> tree, other;
};

EdgeSplit split_edges(const Graph& g) {
  EdgeSplit s;
  std::vector<char> seen(g.num_vertices(), 0), used(g.num_darts(), 0);
  std::deque<int> q{0};
  seen[0] = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (int d : g.star(v)) {
      int w = g.terminus(d);
      if (seen[w]) continue;
      seen[w] = 1;
      used[d] = used[g.reverse(d)] = 1;
      s.tree.push_back(std::min(d, g.reverse(d)));
      q.push_back(w);
    }
  }
  for (int d = 0; d < g.num_darts(); ++d)
    if (!used[d] && d <= g.reverse(d)) {
      used[d] = used[g.reverse(d)] = 1;
      s.other.push_back(d);
    }
  return s;
}

struct Lift {
  GraphPtr graph;
  GraphMorphism proj;
};

Lift lift(const GraphPtr& g, int m, const std::vector<int>& reps,
          const std::vector<std::vector<int>>& voltage) {
  const Graph& b = *g;
  auto vid = [&](int v, int i) { return b.vertex_id(v) + "." + padded(i, m); };
  auto did = [&](int d, int i) { return b.dart_id(d) + "." + padded(i, m); };
  GraphBuilder gb;
  for (int v = 0; v < b.num_vertices(); ++v)
    for (int i = 0; i < m; ++i) gb.add_vertex(vid(v, i), b.vertex_colour(v));
  for (std::size_t k = 0; k < reps.size(); ++k) {
    int d = reps[k], r = b.reverse(d);
    for (int i = 0; i < m; ++i) {
      int j = voltage[k][i];
      gb.add_dart(did(d, i), did(r, j), vid(b.origin(d), i), b.dart_colour(d));
      gb.add_dart(did(r, j), did(d, i), vid(b.origin(r), j), b.dart_colour(r));
    }
  }
  Lift l;
  l.graph = gb.build();
  const Graph& h = *l.graph;
  l.proj = {l.graph, g, std::vector<int>(h.num_vertices()), std::vector<int>(h.num_darts())};
  for (int v = 0; v < b.num_vertices(); ++v)
    for (int i = 0; i < m; ++i) l.proj.vmap[h.vertex_index(vid(v, i))] = v;
  for (int d = 0; d < b.num_darts(); ++d)
    for (int i = 0; i < m; ++i) l.proj.dmap[h.dart_index(did(d, i))] = d;
  return l;
}

}  // namespace

OracleResult brute_common_cover(const GraphPtr& g1, const GraphPtr& g2, int max_degree,
                                std::int64_t budget) {
  if (!is_connected(*g1) || !is_connected(*g2))
    throw InputError("oracle inputs must be connected");
  if (max_degree < 1) throw InputError("oracle degree bound must be positive");
  OracleResult out;
  const Graph& a = *g1;
  const Graph& b = *g2;
  // A common cover has the same vertex-to-dart ratio as both bases.
  if (static_cast<std::int64_t>(a.num_vertices()) * b.num_darts() !=
      static_cast<std::int64_t>(b.num_vertices()) * a.num_darts())
    return out;
  EdgeSplit split = split_edges(a);
  std::vector<int> reps = split.tree;
  reps.insert(reps.end(), split.other.begin(), split.other.end());
  std::size_t nt = split.tree.size();

  for (int m = 1; m <= max_degree; ++m) {
    if ((static_cast<std::int64_t>(m) * a.num_vertices()) % b.num_vertices() != 0) continue;
    std::vector<int> id(m);
    std::iota(id.begin(), id.end(), 0);
    std::vector<std::vector<int>> voltage(reps.size(), id);
    while (true) {
      if (++out.candidates > budget) throw BudgetExceeded("budget exceeded");
      Lift l = lift(g1, m, reps, voltage);
      if (!is_covering(l.proj).ok) throw VerificationError("voltage lift is not a covering");
      if (is_connected(*l.graph)) {
        if (auto f = find_covering(l.graph, g2)) {
          out.cover = l.graph;
          out.degree_over_g1 = m;
          out.to_g1 = l.proj;
          out.to_g2 = *f;
          return out;
        }
      }
      // Odometer over the permutations on non-tree edges.
      std::size_t k = nt;
      while (k < reps.size() && !std::next_permutation(voltage[k].begin(), voltage[k].end())) ++k;
      if (k == reps.size()) break;
    }
  }
  return out;
}

std::int64_t brute_landau(int n) {
  if (n < 1 || n > 30) throw InputError("brute_landau requires 1 <= n <= 30");
  std::int64_t best = 1;
  std::function<void(int, int, std::int64_t)> rec = [&](int left, int max_part, std::int64_t l) {
    if (left == 0) {
      best = std::max(best, l);
      return;
    }
    for (int p = std::min(left, max_part); p >= 1; --p) rec(left - p, p, std::lcm(l, std::int64_t(p)));
  };
  rec(n, n, 1);
  return best;
}

}  // namespace leighton
