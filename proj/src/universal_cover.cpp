#include "leighton/universal_cover.hpp"

#include <algorithm>
#include <set>
#include <deque>
#include <tuple>

#include "leighton/errors.hpp"

namespace leighton {

std::vector<int> WalkTree::walk(int node) const {
  std::vector<int> w;
  for (int n = node; n > 0; n = parent[n]) w.push_back(dart[n]);
  std::reverse(w.begin(), w.end());
  return w;
}

int WalkTree::child(const Graph& g, int node, int d) const {
  const auto& st = g.star(end[node]);
  for (std::size_t i = 0; i < st.size(); ++i)
    if (st[i] == d) return children[node][i];
  return -1;
}

int WalkTree::find(const std::vector<int>& walk) const {
  int n = 0;
  for (int d : walk) {
    bool moved = false;
    for (int c : children[n])
      if (c >= 0 && dart[c] == d) {
        n = c;
        moved = true;
        break;
      }
    if (!moved) return -1;
  }
  return n;
}

WalkTree walk_tree(const Graph& g, int x, int radius) {
  if (radius < 0) throw InputError("ball radius must be non-negative");
  WalkTree t;
  t.root_vertex = x;
  t.radius = radius;
  t.parent.push_back(-1);
  t.dart.push_back(-1);
  t.depth.push_back(0);
  t.end.push_back(x);
  for (int n = 0; n < t.size(); ++n) {
    const auto& st = g.star(t.end[n]);
    t.children.emplace_back(st.size(), -1);
    if (t.depth[n] == radius) continue;
    for (std::size_t i = 0; i < st.size(); ++i) {
      int d = st[i];
      if (n > 0 && d == g.reverse(t.dart[n])) continue;
      int c = t.size();
      t.parent.push_back(n);
      t.dart.push_back(d);
      t.depth.push_back(t.depth[n] + 1);
      t.end.push_back(g.terminus(d));
      t.children[n][i] = c;
    }
  }
  return t;
}

std::vector<int> star_positions(const Graph& g) {
  std::vector<int> pos(g.num_darts(), -1);
  for (int v = 0; v < g.num_vertices(); ++v)
    for (std::size_t i = 0; i < g.star(v).size(); ++i) pos[g.star(v)[i]] = static_cast<int>(i);
  return pos;
}

std::vector<int> reduce(const Graph& g, const std::vector<int>& darts) {
  std::vector<int> out;
  for (int d : darts) {
    if (!out.empty() && out.back() == g.reverse(d))
      out.pop_back();
    else
      out.push_back(d);
  }
  return out;
}

std::vector<int> inverse_path(const Graph& g, const std::vector<int>& darts) {
  std::vector<int> out;
  for (auto it = darts.rbegin(); it != darts.rend(); ++it) out.push_back(g.reverse(*it));
  return out;
}

UniversalCover::UniversalCover(GraphPtr g, int basepoint)
    : g_(std::move(g)), basepoint_(basepoint) {
  require_valid(*g_);
  if (basepoint < 0 || basepoint >= g_->num_vertices())
    throw InputError("basepoint not in graph");
  pos_ = star_positions(*g_);
  parent_dart_.assign(g_->num_vertices(), -1);
  tree_dart_.assign(g_->num_darts(), 0);
  std::vector<char> seen(g_->num_vertices(), 0);
  std::deque<int> q{basepoint};
  seen[basepoint] = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (int d : g_->star(v)) {
      int w = g_->terminus(d);
      if (seen[w]) continue;
      seen[w] = 1;
      parent_dart_[w] = d;
      tree_dart_[d] = tree_dart_[g_->reverse(d)] = 1;
      q.push_back(w);
    }
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end())
    throw InputError("connected graph required");
  generator_of_.assign(g_->num_darts(), -1);
  for (int d = 0; d < g_->num_darts(); ++d) {
    if (tree_dart_[d] || d > g_->reverse(d)) continue;
    generator_of_[d] = static_cast<int>(generators_.size());
    generators_.push_back(d);
  }
}

void UniversalCover::check(const TreeVertex& z) const {
  int v = basepoint_;
  const auto& p = z.path;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < 0 || p[i] >= g_->num_darts() || g_->origin(p[i]) != v)
      throw InputError("path darts do not compose");
    if (i > 0 && p[i] == g_->reverse(p[i - 1])) throw InputError("non-reduced path");
    v = g_->terminus(p[i]);
  }
}

int UniversalCover::project(const TreeVertex& z) const {
  return z.path.empty() ? basepoint_ : g_->terminus(z.path.back());
}

TreeVertex UniversalCover::step(const TreeVertex& z, int dart) const {
  TreeVertex out = z;
  if (!out.path.empty() && out.path.back() == g_->reverse(dart))
    out.path.pop_back();
  else
    out.path.push_back(dart);
  return out;
}

TreeVertex UniversalCover::follow(const TreeVertex& z, const std::vector<int>& walk) const {
  TreeVertex out = z;
  for (int d : walk) out = step(out, d);
  return out;
}

TreeVertex UniversalCover::canonical_lift(int v) const {
  TreeVertex z;
  for (int w = v; w != basepoint_; w = g_->origin(parent_dart_[w])) z.path.push_back(parent_dart_[w]);
  std::reverse(z.path.begin(), z.path.end());
  return z;
}

std::vector<int> UniversalCover::loop(const DeckLetter& l) const {
  if (l.generator < 0 || l.generator >= static_cast<int>(generators_.size()))
    throw InputError("deck generator index out of range");
  int e = generators_[l.generator];
  std::vector<int> p = canonical_lift(g_->origin(e)).path;
  p.push_back(e);
  auto back = inverse_path(*g_, canonical_lift(g_->terminus(e)).path);
  p.insert(p.end(), back.begin(), back.end());
  p = reduce(*g_, p);
  return l.inverse ? inverse_path(*g_, p) : p;
}

TreeVertex UniversalCover::deck_transport(const DeckWord& w, const TreeVertex& z) const {
  std::vector<int> p;
  for (const auto& l : w) {
    auto lp = loop(l);
    p.insert(p.end(), lp.begin(), lp.end());
  }
  p.insert(p.end(), z.path.begin(), z.path.end());
  return {reduce(*g_, p)};
}

DeckWord UniversalCover::loop_word(const std::vector<int>& closed) const {
  DeckWord w;
  for (int d : closed) {
    if (tree_dart_[d]) continue;
    if (generator_of_[d] >= 0)
      w.push_back({generator_of_[d], false});
    else
      w.push_back({generator_of_[g_->reverse(d)], true});
  }
  return w;
}

DeckWord UniversalCover::deck_between(const TreeVertex& from, const TreeVertex& to) const {
  if (project(from) != project(to))
    throw InputError("deck_between: endpoints project to different vertices");
  std::vector<int> p = to.path;
  auto back = inverse_path(*g_, from.path);
  p.insert(p.end(), back.begin(), back.end());
  return loop_word(reduce(*g_, p));
}

Ball UniversalCover::ball(const TreeVertex& z, int radius) const {
  check(z);
  Ball b;
  b.root = z;
  b.radius = radius;
  b.shape = walk_tree(*g_, project(z), radius);
  b.vertices.resize(b.shape.size());
  b.vertices[0] = z;
  for (int n = 1; n < b.shape.size(); ++n)
    b.vertices[n] = step(b.vertices[b.shape.parent[n]], b.shape.dart[n]);
  return b;
}

int UniversalCover::distance(const TreeVertex& a, const TreeVertex& b) const {
  std::size_t common = 0;
  while (common < a.path.size() && common < b.path.size() && a.path[common] == b.path[common])
    ++common;
  return static_cast<int>(a.path.size() + b.path.size() - 2 * common);
}

TreeIso::TreeIso(CoverPtr t1, CoverPtr t2, const Partition& joint, std::size_t cap)
    : t1_(std::move(t1)), t2_(std::move(t2)), cap_(cap) {
  if (joint.graphs.size() != 2 || !(*joint.graphs[0] == t1_->graph()) ||
      !(*joint.graphs[1] == t2_->graph()))
    throw InputError("theta: partition is not the joint refinement of the two graphs");
  for (int v = 0; v < t1_->graph().num_vertices(); ++v) block1_.push_back(joint.block_of(0, v));
  for (int v = 0; v < t2_->graph().num_vertices(); ++v) block2_.push_back(joint.block_of(1, v));
  std::vector<char> in1(joint.num_blocks, 0), in2(joint.num_blocks, 0);
  for (int b : block1_) in1[b] = 1;
  for (int b : block2_) in2[b] = 1;
  if (in1 != in2 || block1_[t1_->basepoint()] != block2_[t2_->basepoint()])
    throw InputError("no common universal cover");
}

const TreeVertex& TreeIso::image_locked(const TreeVertex& z) {
  auto it = images_.find(z.path);
  if (it != images_.end()) return it->second;
  TreeVertex img;
  if (!z.path.empty()) {
    TreeVertex parent{std::vector<int>(z.path.begin(), z.path.end() - 1)};
    int last = z.path.back();
    int f = star_map_locked(parent)[t1_->positions()[last]];
    img = t2_->step(image_locked(parent), f);
  }
  if (images_.size() >= cap_) throw Error("theta extension cap exceeded");
  return images_.emplace(z.path, std::move(img)).first->second;
}

const std::vector<int>& TreeIso::star_map_locked(const TreeVertex& z) {
  auto it = stars_.find(z.path);
  if (it != stars_.end()) return it->second;
  const Graph& g1 = t1_->graph();
  const Graph& g2 = t2_->graph();
  TreeVertex img = image_locked(z);
  int x = t1_->project(z), y = t2_->project(img);
  if (g1.degree(x) != g2.degree(y)) throw VerificationError("theta: degree mismatch");
  auto cls1 = [&](int e) {
    return std::make_tuple(block1_[g1.terminus(e)], g1.dart_colour(e), g1.dart_colour(g1.reverse(e)));
  };
  auto cls2 = [&](int f) {
    return std::make_tuple(block2_[g2.terminus(f)], g2.dart_colour(f), g2.dart_colour(g2.reverse(f)));
  };
  int r1 = z.path.empty() ? -1 : g1.reverse(z.path.back());
  int r2 = img.path.empty() ? -1 : g2.reverse(img.path.back());
  const auto& s1 = g1.star(x);
  const auto& s2 = g2.star(y);
  std::vector<int> out(s1.size(), -1);
  std::vector<char> used(s2.size(), 0);
  if (r1 >= 0) {
    out[t1_->positions()[r1]] = r2;
    used[t2_->positions()[r2]] = 1;
  }
  for (std::size_t i = 0; i < s1.size(); ++i) {
    if (out[i] >= 0) continue;
    for (std::size_t j = 0; j < s2.size(); ++j)
      if (!used[j] && cls1(s1[i]) == cls2(s2[j])) {
        used[j] = 1;
        out[i] = s2[j];
        break;
      }
    if (out[i] < 0) throw VerificationError("theta: no block-compatible dart");
  }
  if (stars_.size() >= cap_) throw Error("theta extension cap exceeded");
  return stars_.emplace(z.path, std::move(out)).first->second;
}

std::vector<int> TreeIso::star_map(const TreeVertex& z) {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  t1_->check(z);
  return star_map_locked(z);
}

TreeVertex TreeIso::image(const TreeVertex& z) {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  t1_->check(z);
  return image_locked(z);
}

TreeVertex TreeIso::preimage(const TreeVertex& q) {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  t2_->check(q);
  TreeVertex cur;
  for (int f : q.path) {
    const auto& sm = star_map_locked(cur);
    auto it = std::find(sm.begin(), sm.end(), f);
    if (it == sm.end()) throw VerificationError("theta: target dart without preimage");
    cur = t1_->step(cur, t1_->graph().star(t1_->project(cur))[it - sm.begin()]);
  }
  return cur;
}

void TreeIso::extend(int radius) {
  Ball b = t1_->ball(TreeVertex{}, radius);
  std::lock_guard<std::recursive_mutex> lock(mu_);
  for (const auto& z : b.vertices) star_map_locked(z);
}

std::size_t TreeIso::constructed() const { return stars_.size(); }

std::string TreeIso::verify_constructed() {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  const Graph& g1 = t1_->graph();
  const Graph& g2 = t2_->graph();
  for (const auto& [path, sm] : stars_) {
    TreeVertex z{path};
    const TreeVertex& img = image_locked(z);
    int x = t1_->project(z), y = t2_->project(img);
    if (block1_[x] != block2_[y]) return "block mismatch at a constructed vertex";
    std::vector<int> sorted = sm;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != g2.star(y)) return "star map is not a bijection";
    for (std::size_t i = 0; i < sm.size(); ++i) {
      int e = g1.star(x)[i], f = sm[i];
      if (block1_[g1.terminus(e)] != block2_[g2.terminus(f)]) return "dart block mismatch";
      if (g1.dart_colour(e) != g2.dart_colour(f)) return "dart colour mismatch";
    }
    if (!path.empty()) {
      int r1 = g1.reverse(path.back());
      if (sm[t1_->positions()[r1]] != g2.reverse(img.path.back()))
        return "parent dart not preserved";
    }
  }
  return "";
}

CoverPair build_theta(const GraphPtr& g1, const GraphPtr& g2, int radius) {
  auto check = require_common_cover(g1, g2);
  int b = check.partition.block_of(0, 0);
  int base2 = check.blocks[b].in_g2.front();
  CoverPair p;
  p.t1 = std::make_shared<UniversalCover>(g1, 0);
  p.t2 = std::make_shared<UniversalCover>(g2, base2);
  p.theta = std::make_shared<TreeIso>(p.t1, p.t2, check.partition);
  p.theta->extend(radius);
  return p;
}

std::vector<TreeVertex> theta_representatives(TreeIso& theta, int radius, int depth) {
  std::vector<TreeVertex> out;
  std::set<std::vector<int>> seen;
  std::deque<TreeVertex> queue{TreeVertex{}};
  const UniversalCover& t1 = theta.source();
  const UniversalCover& t2 = theta.target();
  while (!queue.empty()) {
    TreeVertex z = std::move(queue.front());
    queue.pop_front();
    int cut = std::max(0, static_cast<int>(z.path.size()) - depth);
    TreeVertex a{std::vector<int>(z.path.begin(), z.path.begin() + cut)};
    TreeVertex ia = theta.image(a);
    std::vector<int> key{t1.project(a), t2.project(ia), a.path.empty() ? -1 : a.path.back(),
                         ia.path.empty() ? -1 : ia.path.back()};
    key.insert(key.end(), z.path.begin() + cut, z.path.end());
    if (!seen.insert(std::move(key)).second) continue;
    if (static_cast<int>(z.path.size()) < radius)
      for (int d : t1.graph().star(t1.project(z)))
        if (z.path.empty() || d != t1.graph().reverse(z.path.back()))
          queue.push_back(t1.step(z, d));
    out.push_back(std::move(z));
  }
  return out;
}

}  // namespace leighton
