#include "leighton/refinement.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>

#include "leighton/errors.hpp"

namespace leighton {

namespace {

struct Union {
  std::vector<const Graph*> g;
  std::vector<int> offset;
  int n = 0;

  explicit Union(const std::vector<GraphPtr>& graphs) {
    for (const auto& p : graphs) {
      g.push_back(p.get());
      offset.push_back(n);
      n += p->num_vertices();
    }
  }
  std::pair<int, int> locate(int global) const {
    int k = static_cast<int>(std::upper_bound(offset.begin(), offset.end(), global) -
                             offset.begin()) - 1;
    return {k, global - offset[k]};
  }
};

// Renumbers blocks by (size, least member); only the set partition matters.
std::vector<int> canonical_numbering(const std::vector<int>& raw, int nb) {
  std::vector<int> size(nb, 0), least(nb, -1);
  for (int v = 0; v < static_cast<int>(raw.size()); ++v) {
    ++size[raw[v]];
    if (least[raw[v]] < 0) least[raw[v]] = v;
  }
  std::vector<int> order(nb);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return std::tie(size[a], least[a]) < std::tie(size[b], least[b]);
  });
  std::vector<int> rank(nb);
  for (int i = 0; i < nb; ++i) rank[order[i]] = i;
  std::vector<int> out(raw.size());
  for (std::size_t v = 0; v < raw.size(); ++v) out[v] = rank[raw[v]];
  return out;
}

Partition make_partition(const std::vector<GraphPtr>& graphs, const Union& u,
                         const std::vector<int>& raw, int nb) {
  Partition p;
  p.graphs = graphs;
  p.offset = u.offset;
  p.block = canonical_numbering(raw, nb);
  p.num_blocks = nb;
  p.counts.assign(nb, std::vector<int>(nb, 0));
  std::vector<char> seen(nb, 0);
  for (int v = 0; v < u.n; ++v) {
    int b = p.block[v];
    if (seen[b]) continue;
    seen[b] = 1;
    auto [k, lv] = u.locate(v);
    const Graph& g = *u.g[k];
    for (int d : g.star(lv)) ++p.counts[b][p.block[u.offset[k] + g.terminus(d)]];
  }
  return p;
}

using Signature = std::tuple<int, std::vector<std::tuple<Colour, Colour, int>>>;

std::pair<std::vector<int>, int> round(const Union& u, const std::vector<int>& block) {
  std::vector<Signature> sig(u.n);
  for (int v = 0; v < u.n; ++v) {
    auto [k, lv] = u.locate(v);
    const Graph& g = *u.g[k];
    std::vector<std::tuple<Colour, Colour, int>> nb;
    for (int d : g.star(lv))
      nb.emplace_back(g.dart_colour(d), g.dart_colour(g.reverse(d)),
                      block[u.offset[k] + g.terminus(d)]);
    std::sort(nb.begin(), nb.end());
    sig[v] = {block[v], std::move(nb)};
  }
  std::map<Signature, int> ids;
  for (const auto& s : sig) ids.emplace(s, 0);
  int next = 0;
  for (auto& [s, id] : ids) id = next++;
  std::vector<int> out(u.n);
  for (int v = 0; v < u.n; ++v) out[v] = ids[sig[v]];
  return {out, next};
}

}  // namespace

std::vector<int> Partition::members(int b) const {
  std::vector<int> out;
  for (int v = 0; v < static_cast<int>(block.size()); ++v)
    if (block[v] == b) out.push_back(v);
  return out;
}

std::vector<int> Partition::block_sizes() const {
  std::vector<int> s(num_blocks, 0);
  for (int b : block) ++s[b];
  return s;
}

Partition joint_refinement(const std::vector<GraphPtr>& graphs) {
  Union u(graphs);
  for (const auto& g : graphs) require_valid(*g);
  std::map<Colour, int> colours;
  for (int v = 0; v < u.n; ++v) {
    auto [k, lv] = u.locate(v);
    colours.emplace(u.g[k]->vertex_colour(lv), 0);
  }
  int nb = 0;
  for (auto& [c, id] : colours) id = nb++;
  std::vector<int> block(u.n);
  for (int v = 0; v < u.n; ++v) {
    auto [k, lv] = u.locate(v);
    block[v] = colours[u.g[k]->vertex_colour(lv)];
  }
  while (true) {
    auto [next, count] = round(u, block);
    block = std::move(next);
    if (count == nb) break;
    nb = count;
  }
  return make_partition(graphs, u, block, nb);
}

Partition degree_refinement(const GraphPtr& g) {
  require_valid(*g);
  if (!is_connected(*g)) throw InputError("connected graph required");
  return joint_refinement({g});
}

Partition refine_once(const Partition& p) {
  Union u(p.graphs);
  auto [next, count] = round(u, p.block);
  return make_partition(p.graphs, u, next, count);
}

bool is_equitable(const Partition& p) { return refine_once(p).num_blocks == p.num_blocks; }

CommonCoverCheck common_cover_exists(const GraphPtr& g1, const GraphPtr& g2) {
  for (const auto& g : {g1, g2}) {
    require_valid(*g);
    if (!is_connected(*g)) throw InputError("connected graph required");
  }
  CommonCoverCheck c;
  c.partition = joint_refinement({g1, g2});
  c.blocks.resize(c.partition.num_blocks);
  for (int v = 0; v < g1->num_vertices(); ++v)
    c.blocks[c.partition.block_of(0, v)].in_g1.push_back(v);
  for (int v = 0; v < g2->num_vertices(); ++v)
    c.blocks[c.partition.block_of(1, v)].in_g2.push_back(v);
  c.exists = std::all_of(c.blocks.begin(), c.blocks.end(), [](const BlockMatch& b) {
    return !b.in_g1.empty() && !b.in_g2.empty();
  });
  return c;
}

CommonCoverCheck require_common_cover(const GraphPtr& g1, const GraphPtr& g2) {
  auto c = common_cover_exists(g1, g2);
  if (!c.exists) throw InputError("no common universal cover");
  return c;
}

}  // namespace leighton
