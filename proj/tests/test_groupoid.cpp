#include "doctest.h"
#include "leighton/groupoid.hpp"

using namespace leighton;

namespace {

// Permutations of {0..k-1} between objects; a stand-in for star bijections.
struct Perm {
  int s, t;
  std::vector<int> p;
};

ArrowOps<Perm> perm_ops(int k) {
  ArrowOps<Perm> ops;
  ops.source = [](const Perm& a) { return a.s; };
  ops.target = [](const Perm& a) { return a.t; };
  ops.identity = [k](int x) {
    Perm a{x, x, std::vector<int>(k)};
    for (int i = 0; i < k; ++i) a.p[i] = i;
    return a;
  };
  ops.compose = [](const Perm& g, const Perm& f) {
    Perm a{f.s, g.t, f.p};
    for (auto& x : a.p) x = g.p[x];
    return a;
  };
  ops.inverse = [](const Perm& f) {
    Perm a{f.t, f.s, f.p};
    for (int i = 0; i < static_cast<int>(f.p.size()); ++i) a.p[f.p[i]] = i;
    return a;
  };
  ops.key = [](const Perm& a) {
    std::string s = std::to_string(a.s) + ">" + std::to_string(a.t) + ":";
    for (int x : a.p) s += std::to_string(x) + ",";
    return s;
  };
  return ops;
}

// The smallest non-associative loop (order 5), written as a one-object
// "groupoid" with element 0 as identity and every element self-inverse.
struct LoopElt {
  int v;
};

ArrowOps<LoopElt> loop_ops() {
  static const int table[5][5] = {{0, 1, 2, 3, 4},
                                  {1, 0, 3, 4, 2},
                                  {2, 4, 0, 1, 3},
                                  {3, 2, 4, 0, 1},
                                  {4, 3, 1, 2, 0}};
  ArrowOps<LoopElt> ops;
  ops.source = [](const LoopElt&) { return 0; };
  ops.target = [](const LoopElt&) { return 0; };
  ops.identity = [](int) { return LoopElt{0}; };
  ops.compose = [](const LoopElt& g, const LoopElt& f) { return LoopElt{table[g.v][f.v]}; };
  ops.inverse = [](const LoopElt& f) { return f; };
  ops.key = [](const LoopElt& a) { return std::to_string(a.v); };
  return ops;
}

}  // namespace

TEST_CASE("saturation examples") {
  auto empty = saturate_groupoid<Perm>(1, {}, perm_ops(2));
  CHECK(empty.size() == 1);

  Perm g{0, 1, {1, 0}};
  auto one = saturate_groupoid<Perm>(2, {g}, perm_ops(2));
  CHECK(one.size() == 4);
  CHECK(verify_groupoid(one).ok);

  Perm h{0, 1, {0, 1}};
  auto two = saturate_groupoid<Perm>(2, {g, h}, perm_ops(2));
  CHECK(two.size() == 8);
  CHECK(two.out(0).size() == 4);
  CHECK(two.find(Perm{0, 0, {1, 0}}).has_value());  // order-2 composite at x
  CHECK(verify_groupoid(two).ok);

  // witnesses evaluate back to their arrows
  auto ops = perm_ops(2);
  std::vector<Perm> atoms{g, h};
  for (int i = 0; i < two.size(); ++i) {
    Perm cur = ops.identity(two.source(i));
    for (const auto& l : two.witness(i)) {
      Perm step = l.inverse ? ops.inverse(atoms[l.atom]) : atoms[l.atom];
      cur = ops.compose(step, cur);
    }
    CHECK(ops.key(cur) == two.key(i));
  }

  // saturating a saturated groupoid adds nothing
  std::vector<Perm> all;
  for (int i = 0; i < two.size(); ++i) all.push_back(two.arrow(i));
  CHECK(saturate_groupoid<Perm>(2, all, perm_ops(2)).size() == two.size());
}

TEST_CASE("non-associative composition is reported with its triple") {
  std::vector<LoopElt> atoms{{1}, {2}};
  try {
    saturate_groupoid<LoopElt>(1, atoms, loop_ops());
    FAIL("expected an error");
  } catch (const AxiomError& e) {
    std::string msg = e.what();
    CHECK(msg.find("associativity") != std::string::npos);
    CHECK(msg.find("triple") != std::string::npos);
  }
}

TEST_CASE("orbits and stabilizers") {
  auto ids = saturate_groupoid<Perm>(3, {}, perm_ops(2));
  GroupoidAction<Perm> trivial{&ids, 3, [](int a) { return a; },
                               [](int, int a) { return a; }};
  auto orbits = orbit_partition(trivial);
  CHECK(orbits.size() == 3);
  for (const auto& o : orbits) CHECK(o.size() == 1);
  auto s = stabilizer_size(trivial, 1);
  CHECK(s.stabilizer == 1);
  CHECK(s.orbit == 1);

  GroupoidAction<Perm> none{&ids, 0, [](int) { return 0; }, [](int, int a) { return a; }};
  CHECK(orbit_partition(none).empty());

  // a one-object group of order 2 acting trivially on a point
  auto c2 = saturate_groupoid<Perm>(1, {Perm{0, 0, {1, 0}}}, perm_ops(2));
  REQUIRE(c2.size() == 2);
  GroupoidAction<Perm> fixed{&c2, 1, [](int) { return 0; }, [](int, int a) { return a; }};
  auto st = stabilizer_size(fixed, 0);
  CHECK(st.stabilizer == 2);
  CHECK(st.orbit == 1);
  CHECK(st.out == st.stabilizer * st.orbit);

  // the same group permuting two points: one orbit, trivial stabilizers
  GroupoidAction<Perm> swap{&c2, 2, [](int) { return 0; },
                            [&](int g, int a) { return c2.arrow(g).p[a]; }};
  CHECK(orbit_partition(swap).size() == 1);
  CHECK(stabilizer_size(swap, 0).stabilizer == 1);

  GroupoidAction<Perm> broken{&c2, 2, [](int) { return 0; }, [](int, int a) { return 1 - a; }};
  try {
    orbit_partition(broken);
    FAIL("expected an error");
  } catch (const AxiomError& e) {
    CHECK(std::string(e.what()).find("(c)") != std::string::npos);
  }
}

TEST_CASE("schedule_N") {
  CHECK(schedule_N(std::vector<std::int64_t>{3, 4}) == 12);
  CHECK(schedule_N(std::vector<std::int64_t>{1}) == 1);
  CHECK(schedule_N(std::vector<std::int64_t>{6, 10, 15}) == 30);
  CHECK(schedule_N(std::vector<std::int64_t>{}) == 1);
  // exact beyond 64 bits
  std::vector<BigInt> big{BigInt("18446744073709551629"), BigInt("18446744073709551653")};
  CHECK(schedule_N(big) == big[0] * big[1]);
  CHECK_THROWS(schedule_N(std::vector<std::int64_t>{0}));
}

TEST_CASE("action check on a sample of elements") {
  // S5 from a transposition and a 5-cycle, acting on five points.
  auto s5 = saturate_groupoid<Perm>(1, {Perm{0, 0, {1, 0, 2, 3, 4}}, Perm{0, 0, {1, 2, 3, 4, 0}}},
                                    perm_ops(5));
  REQUIRE(s5.size() == 120);
  GroupoidAction<Perm> natural{&s5, 5, [](int) { return 0; },
                               [&](int g, int a) { return s5.arrow(g).p[a]; }};
  auto full = verify_action(natural);
  CHECK(full.ok);
  CHECK(full.exhaustive);
  auto part = verify_action(natural, nullptr, 100);
  CHECK(part.ok);
  CHECK_FALSE(part.exhaustive);

  // Acting by the square of each permutation breaks composition.
  GroupoidAction<Perm> square{&s5, 5, [](int) { return 0; }, [&](int g, int a) {
                                const auto& p = s5.arrow(g).p;
                                return p[p[a]];
                              }};
  CHECK_FALSE(verify_action(square).ok);
  auto r = verify_action(square, nullptr, 100);
  CHECK_FALSE(r.ok);
  CHECK(r.axiom == "(b) composition");
}
