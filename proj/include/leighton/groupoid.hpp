#pragma once

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "leighton/errors.hpp"

namespace leighton {

using BigInt = boost::multiprecision::cpp_int;

// Exact lcm; the empty list gives 1.
BigInt schedule_N(const std::vector<BigInt>& sizes);
BigInt schedule_N(const std::vector<std::int64_t>& sizes);
// Throws Error when the value does not fit below `cap`.
std::int64_t checked_int(const BigInt& v, std::int64_t cap, const std::string& what);

// A letter of a generation witness: atom index, possibly inverted.
struct Letter {
  int atom = 0;
  bool inverse = false;
  bool operator==(const Letter&) const = default;
};
using Word = std::vector<Letter>;

// Structure of an arrow type. compose(g, f) is g∘f (f first).
template <typename Arrow>
struct ArrowOps {
  std::function<int(const Arrow&)> source;
  std::function<int(const Arrow&)> target;
  std::function<Arrow(int)> identity;
  std::function<Arrow(const Arrow&, const Arrow&)> compose;
  std::function<Arrow(const Arrow&)> inverse;
  std::function<std::string(const Arrow&)> key;
};

// Arrows interned by key; ids are insertion order.
template <typename Arrow>
class FiniteGroupoid {
 public:
  FiniteGroupoid() = default;
  FiniteGroupoid(int num_objects, ArrowOps<Arrow> ops)
      : num_objects_(num_objects), ops_(std::move(ops)), out_(num_objects) {}

  int num_objects() const { return num_objects_; }
  int size() const { return static_cast<int>(arrows_.size()); }
  const Arrow& arrow(int i) const { return arrows_[i]; }
  const std::string& key(int i) const { return keys_[i]; }
  int source(int i) const { return ops_.source(arrows_[i]); }
  int target(int i) const { return ops_.target(arrows_[i]); }
  const Word& witness(int i) const { return witness_[i]; }
  const ArrowOps<Arrow>& ops() const { return ops_; }
  const std::vector<int>& out(int x) const { return out_[x]; }

  std::optional<int> find_key(const std::string& k) const {
    auto it = index_.find(k);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  std::optional<int> find(const Arrow& a) const { return find_key(ops_.key(a)); }

  // Returns (id, inserted).
  std::pair<int, bool> add(Arrow a, Word w = {}) {
    std::string k = ops_.key(a);
    auto it = index_.find(k);
    if (it != index_.end()) return {it->second, false};
    int id = size();
    int s = ops_.source(a);
    if (s < 0 || s >= num_objects_ || ops_.target(a) < 0 || ops_.target(a) >= num_objects_)
      throw InputError("arrow endpoint outside the object set: " + k);
    index_.emplace(k, id);
    keys_.push_back(std::move(k));
    arrows_.push_back(std::move(a));
    witness_.push_back(std::move(w));
    out_[s].push_back(id);
    return {id, true};
  }

  int require(const Arrow& a) const {
    auto id = find(a);
    if (!id) throw VerificationError("groupoid not closed: missing " + ops_.key(a));
    return *id;
  }
  int identity(int x) const { return require(ops_.identity(x)); }
  int compose(int g, int f) const { return require(ops_.compose(arrows_[g], arrows_[f])); }
  int inverse(int i) const { return require(ops_.inverse(arrows_[i])); }

 private:
  int num_objects_ = 0;
  ArrowOps<Arrow> ops_;
  std::vector<Arrow> arrows_;
  std::vector<std::string> keys_;
  std::vector<Word> witness_;
  std::unordered_map<std::string, int> index_;
  std::vector<std::vector<int>> out_;
};

struct AxiomReport {
  bool ok = true;
  std::string axiom;
  std::string detail;
  bool exhaustive = true;  // false when (b) was checked on a subset of elements
};

// Identities, inverses, closure and associativity over all composable
// triples. Exhaustive; meant for instances of moderate size.
template <typename Arrow>
AxiomReport verify_groupoid(const FiniteGroupoid<Arrow>& g) {
  const auto& ops = g.ops();
  auto fail = [](std::string axiom, std::string detail) {
    return AxiomReport{false, std::move(axiom), std::move(detail)};
  };
  for (int i = 0; i < g.size(); ++i) {
    const Arrow& a = g.arrow(i);
    int s = g.source(i), t = g.target(i);
    if (!g.find(ops.identity(s)) || !g.find(ops.identity(t)))
      return fail("identity", "missing identity for " + g.key(i));
    if (ops.key(ops.compose(a, ops.identity(s))) != g.key(i) ||
        ops.key(ops.compose(ops.identity(t), a)) != g.key(i))
      return fail("identity", "identity not neutral for " + g.key(i));
    Arrow inv = ops.inverse(a);
    if (!g.find(inv)) return fail("inverse", "missing inverse of " + g.key(i));
    if (ops.key(ops.compose(inv, a)) != ops.key(ops.identity(s)))
      return fail("inverse", "inverse does not cancel for " + g.key(i));
    for (int j : g.out(t))
      if (!g.find(ops.compose(g.arrow(j), a)))
        return fail("closure", g.key(j) + " after " + g.key(i));
  }
  for (int f = 0; f < g.size(); ++f)
    for (int h : g.out(g.target(f)))
      for (int k : g.out(g.target(h))) {
        const Arrow &a = g.arrow(f), &b = g.arrow(h), &c = g.arrow(k);
        if (ops.key(ops.compose(ops.compose(c, b), a)) !=
            ops.key(ops.compose(c, ops.compose(b, a))))
          return fail("associativity", "non-associative composition on triple (" +
                                           g.key(f) + ", " + g.key(h) + ", " + g.key(k) + ")");
      }
  return {};
}

// Subgroupoid generated by the atoms: identities at every object plus all
// products of atoms and their inverses. Witness letters index into `atoms`.
// Associativity is checked exhaustively when the result has at most
// `exhaustive_limit` arrows.
template <typename Arrow>
FiniteGroupoid<Arrow> saturate_groupoid(int num_objects, const std::vector<Arrow>& atoms,
                                        ArrowOps<Arrow> ops, std::size_t cap = 2'000'000,
                                        int exhaustive_limit = 120) {
  FiniteGroupoid<Arrow> g(num_objects, ops);
  struct Gen {
    Arrow arrow;
    Letter letter;
  };
  std::vector<std::vector<Gen>> gens(num_objects);
  for (int i = 0; i < static_cast<int>(atoms.size()); ++i) {
    gens[ops.source(atoms[i])].push_back({atoms[i], {i, false}});
    Arrow inv = ops.inverse(atoms[i]);
    int s = ops.source(inv);
    gens[s].push_back({std::move(inv), {i, true}});
  }
  std::deque<int> queue;
  for (int x = 0; x < num_objects; ++x) queue.push_back(g.add(ops.identity(x)).first);
  while (!queue.empty()) {
    int a = queue.front();
    queue.pop_front();
    int t = g.target(a);
    for (const auto& s : gens[t]) {
      Word w = g.witness(a);
      w.push_back(s.letter);
      auto [id, inserted] = g.add(ops.compose(s.arrow, g.arrow(a)), std::move(w));
      if (inserted) {
        if (static_cast<std::size_t>(g.size()) > cap)
          throw BudgetExceeded("saturation exceeded " + std::to_string(cap) + " arrows");
        queue.push_back(id);
      }
    }
  }
  if (g.size() <= exhaustive_limit) {
    auto r = verify_groupoid(g);
    if (!r.ok) throw AxiomError(r.axiom + ": " + r.detail);
  }
  return g;
}

// Action of a groupoid on {0..size-1}. act(γ, a) requires source(γ) = eps(a).
template <typename Arrow>
struct GroupoidAction {
  const FiniteGroupoid<Arrow>* groupoid = nullptr;
  int size = 0;
  std::function<int(int)> eps;
  std::function<int(int, int)> act;
};

// Axioms (a) eps(γ·a) = t(γ), (b) (γ'γ)·a = γ'·(γ·a), (c) 1·a = a.
// With `generators`, (b) is checked for γ' among them only, which suffices
// when they generate the groupoid. Action values are tabulated per (arrow,
// element) pair; when the full table would exceed `table_limit` entries, (b)
// and (a) are checked on evenly spaced elements of each object and the
// report is marked non-exhaustive. (c) is always checked on every element.
template <typename Arrow>
AxiomReport verify_action(const GroupoidAction<Arrow>& A,
                          const std::vector<int>* generators = nullptr,
                          std::size_t table_limit = 40'000'000) {
  const auto& G = *A.groupoid;
  auto fail = [](std::string axiom, std::string detail) {
    return AxiomReport{false, std::move(axiom), std::move(detail)};
  };
  int n = G.num_objects();
  std::vector<std::vector<int>> gens_from(n), elems(n);
  if (generators)
    for (int s : *generators) gens_from[G.source(s)].push_back(s);
  for (int a = 0; a < A.size; ++a) elems[A.eps(a)].push_back(a);

  for (int a = 0; a < A.size; ++a)
    if (A.act(G.identity(A.eps(a)), a) != a)
      return fail("(c) identity acts trivially", "element " + std::to_string(a));
  std::size_t cells = 0;
  for (int i = 0; i < G.size(); ++i) cells += elems[G.source(i)].size();
  bool exhaustive = cells <= table_limit;
  std::vector<std::vector<int>> sample(n);
  if (exhaustive) {
    sample = elems;
  } else {
    std::size_t per = std::max<std::size_t>(1, table_limit / std::max(1, G.size()));
    for (int x = 0; x < n; ++x) {
      std::size_t m = elems[x].size(), k = std::min(per, m);
      for (std::size_t i = 0; i < k; ++i) sample[x].push_back(elems[x][i * m / k]);
    }
  }
  // table[g][i]: g acting on the i-th sampled element at source(g);
  // full[h][j]: generator h acting on the j-th element at source(h).
  std::vector<std::vector<int>> table(G.size()), full(G.size());
  for (int i = 0; i < G.size(); ++i)
    for (int a : sample[G.source(i)]) table[i].push_back(A.act(i, a));
  std::vector<int> slot(A.size);
  for (int x = 0; x < n; ++x)
    for (std::size_t j = 0; j < elems[x].size(); ++j) slot[elems[x][j]] = static_cast<int>(j);
  if (generators)
    for (int h : *generators)
      if (full[h].empty())
        for (int a : elems[G.source(h)]) full[h].push_back(A.act(h, a));
  for (int x = 0; x < n; ++x)
    for (int g : G.out(x))
      for (std::size_t i = 0; i < sample[x].size(); ++i)
        if (A.eps(table[g][i]) != G.target(g))
          return fail("(a) eps(g.a) = t(g)", G.key(g) + " on " + std::to_string(sample[x][i]));
  auto act_after = [&](int h, int b) {
    if (!full[h].empty()) return full[h][slot[b]];
    if (exhaustive) return table[h][slot[b]];
    return A.act(h, b);
  };
  for (int x = 0; x < n; ++x)
    for (int g : G.out(x)) {
      const auto& next = generators ? gens_from[G.target(g)] : G.out(G.target(g));
      for (int h : next) {
        int hg = G.compose(h, g);
        for (std::size_t i = 0; i < sample[x].size(); ++i)
          if (table[hg][i] != act_after(h, table[g][i]))
            return fail("(b) composition", G.key(h) + " after " + G.key(g) + " on " +
                                               std::to_string(sample[x][i]));
      }
    }
  AxiomReport r;
  r.exhaustive = exhaustive;
  return r;
}

template <typename Arrow>
std::vector<std::vector<int>> orbit_partition(const GroupoidAction<Arrow>& A,
                                              const std::vector<int>* generators = nullptr) {
  auto r = verify_action(A, generators);
  if (!r.ok) throw AxiomError("action axiom violated: " + r.axiom + " (" + r.detail + ")");
  std::vector<int> orbit_of(A.size, -1);
  std::vector<std::vector<int>> out;
  for (int a = 0; a < A.size; ++a) {
    if (orbit_of[a] >= 0) continue;
    int id = static_cast<int>(out.size());
    out.emplace_back();
    for (int g : A.groupoid->out(A.eps(a))) {
      int b = A.act(g, a);
      if (orbit_of[b] < 0) {
        orbit_of[b] = id;
        out[id].push_back(b);
      }
    }
    std::sort(out[id].begin(), out[id].end());
  }
  return out;
}

struct StabilizerInfo {
  std::int64_t stabilizer = 0;
  std::int64_t orbit = 0;
  std::int64_t out = 0;  // |Γ(eps(a), -)|
};

// Orbit–stabilizer: |Γ(eps a, -)| = |Stab(a)|·|Γ·a|, asserted exactly.
template <typename Arrow>
StabilizerInfo stabilizer_size(const GroupoidAction<Arrow>& A, int a) {
  StabilizerInfo s;
  std::vector<char> seen(A.size, 0);
  for (int g : A.groupoid->out(A.eps(a))) {
    ++s.out;
    int b = A.act(g, a);
    if (b == a) ++s.stabilizer;
    if (!seen[b]) {
      seen[b] = 1;
      ++s.orbit;
    }
  }
  if (s.out != s.stabilizer * s.orbit)
    throw VerificationError("orbit-stabilizer violation at element " + std::to_string(a));
  return s;
}

}  // namespace leighton
