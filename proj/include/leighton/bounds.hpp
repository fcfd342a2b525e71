#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "leighton/groupoid.hpp"

namespace leighton {

// Enclosure of a real value: floor <= value <= ceil, and `text` is a decimal
// not below the value.
struct UpperReal {
  BigInt floor;
  BigInt ceil;
  std::string text;
};

// Largest lcm of a partition of n, by dynamic programming over prime powers.
BigInt landau(int n);
// exp(c·sqrt(n ln n)), rounded up; c = 1.05313 is the sharp constant, c = 2
// the coarse one.
UpperReal landau_bound(int n, double c = 1.05313);

enum class BoundKind { leighton, ball, objects, regular };
std::string to_string(BoundKind k);
BoundKind parse_bound_kind(const std::string& s);  // InputError on unknown names

// Inputs by name; each kind reads only what it needs.
//   leighton: E (geometric edges of G1), V2 (vertices of G2)
//   ball:     V (vertices of G1 ⊔ G2), d (maximum degree), R
//   objects:  V, d, lcm (lcm of isotropy orders)
//   regular:  V1, V2, odd (0 or 1)
struct BoundParams {
  std::map<std::string, std::int64_t> values;
  std::optional<std::int64_t> actual;
};

struct BoundReport {
  BoundKind kind = BoundKind::leighton;
  std::map<std::string, std::int64_t> inputs;
  UpperReal bound;
  std::optional<std::int64_t> actual;
  bool satisfied = true;  // actual <= bound.floor, true when no actual is given
};

// Throws InputError listing any missing parameters.
BoundReport bound_report(BoundKind kind, const BoundParams& params);

// Order of the automorphism group of the rooted R-ball in the d-regular tree:
// d!·((d-1)!)^k with k the number of non-root vertices at distance < R.
BigInt regular_ball_automorphisms(int d, int R);

// d!·m^d
BigInt object_vertex_group_divisor(int d, const BigInt& lcm);

}  // namespace leighton
