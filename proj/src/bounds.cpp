#include "leighton/bounds.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <sstream>
#include <vector>

#include "leighton/errors.hpp"

namespace leighton {

namespace {

using Real = boost::multiprecision::cpp_bin_float_100;

// Relative slack far above the working precision, so every rounding error
// of the evaluation is absorbed on the upper side.
const Real kSlack = Real(1) + Real("1e-40");

UpperReal round_up(const Real& value) {
  Real v = value * kSlack;
  UpperReal u;
  Real c = boost::multiprecision::ceil(v);
  u.ceil = c.convert_to<BigInt>();
  u.floor = boost::multiprecision::floor(value / kSlack).convert_to<BigInt>();
  std::ostringstream os;
  if (v < Real(1e15)) {
    // Six decimals, rounded up.
    Real scaled = boost::multiprecision::ceil(v * 1'000'000);
    BigInt s = scaled.convert_to<BigInt>();
    BigInt whole = s / 1'000'000, frac = s % 1'000'000;
    std::string f = frac.str();
    os << whole << "." << std::string(6 - f.size(), '0') << f;
  } else {
    os << u.ceil;
  }
  u.text = os.str();
  return u;
}

// head · exp(c·sqrt(n ln n)); exact when n <= 1.
UpperReal enclose(const BigInt& head, std::int64_t n, const Real& c) {
  if (n <= 1) return UpperReal{head, head, head.str()};
  Real x(n);
  return round_up(Real(head) * exp(c * sqrt(x * log(x))));
}

BigInt factorial(int n) {
  BigInt r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

BigInt power(BigInt b, std::int64_t e) {
  BigInt r = 1;
  while (e > 0) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

std::int64_t need(const BoundParams& p, const std::vector<std::string>& names, const std::string& n) {
  auto it = p.values.find(n);
  if (it != p.values.end()) return it->second;
  std::string missing;
  for (const auto& m : names)
    if (!p.values.count(m)) missing += (missing.empty() ? "" : ", ") + m;
  throw InputError("missing bound parameters: " + missing);
}

}  // namespace

BigInt landau(int n) {
  if (n <= 0) throw InputError("landau requires n >= 1");
  std::vector<char> composite(n + 1, 0);
  // best[s]: largest lcm of prime powers of distinct primes with total <= s.
  std::vector<BigInt> best(n + 1, BigInt(1));
  for (int p = 2; p <= n; ++p) {
    if (composite[p]) continue;
    for (int q = 2 * p; q <= n; q += p) composite[q] = 1;
    for (int s = n; s >= p; --s)
      for (std::int64_t pk = p; pk <= s; pk *= p) {
        BigInt cand = best[s - pk] * pk;
        if (cand > best[s]) best[s] = cand;
      }
  }
  return best[n];
}

UpperReal landau_bound(int n, double c) {
  if (n <= 0) throw InputError("landau requires n >= 1");
  return enclose(1, n, Real(std::to_string(c)));
}

std::string to_string(BoundKind k) {
  switch (k) {
    case BoundKind::leighton: return "leighton";
    case BoundKind::ball: return "ball";
    case BoundKind::objects: return "objects";
    case BoundKind::regular: return "regular";
  }
  return "";
}

BoundKind parse_bound_kind(const std::string& s) {
  for (auto k : {BoundKind::leighton, BoundKind::ball, BoundKind::objects, BoundKind::regular})
    if (to_string(k) == s) return k;
  throw InputError("unknown bound kind: " + s);
}

BigInt regular_ball_automorphisms(int d, int R) {
  if (d < 1 || R < 0) throw InputError("ball automorphisms need d >= 1 and R >= 0");
  if (R == 0) return 1;
  std::int64_t inner = 0, layer = d;
  for (int r = 1; r < R; ++r) {
    inner += layer;
    layer *= d - 1;
  }
  return factorial(d) * power(factorial(d - 1), inner);
}

BigInt object_vertex_group_divisor(int d, const BigInt& lcm) {
  return factorial(d) * power(lcm, d);
}

BoundReport bound_report(BoundKind kind, const BoundParams& p) {
  BoundReport r;
  r.kind = kind;
  std::vector<std::string> names;
  switch (kind) {
    case BoundKind::leighton: names = {"E", "V2"}; break;
    case BoundKind::ball: names = {"V", "d", "R"}; break;
    case BoundKind::objects: names = {"V", "d", "lcm"}; break;
    case BoundKind::regular: names = {"V1", "V2", "odd"}; break;
  }
  for (const auto& n : names) r.inputs[n] = need(p, names, n);
  for (const auto& [n, v] : r.inputs)
    if (v < 0) throw InputError("bound parameter " + n + " must be non-negative");
  const Real two(2);
  switch (kind) {
    case BoundKind::leighton:
      r.bound = enclose(2 * r.inputs["V2"], r.inputs["E"], two);
      break;
    case BoundKind::ball: {
      std::int64_t V = r.inputs["V"];
      BigInt exponent = 2 * power(r.inputs["d"], r.inputs["R"]);
      if (exponent > 1'000'000) throw InputError("ball bound exponent too large to evaluate");
      BigInt head = power(factorial(static_cast<int>(r.inputs["d"])), exponent.convert_to<std::int64_t>()) * V * V;
      r.bound = enclose(head, V, two);
      break;
    }
    case BoundKind::objects: {
      std::int64_t V = r.inputs["V"], d = r.inputs["d"];
      BigInt f = factorial(static_cast<int>(d));
      BigInt head = f * f * power(r.inputs["lcm"], 2 * d) * V * V;
      r.bound = enclose(head, V, two);
      break;
    }
    case BoundKind::regular: {
      BigInt v = BigInt(r.inputs["V1"]) * r.inputs["V2"] * (r.inputs["odd"] ? 2 : 1);
      r.bound = UpperReal{v, v, v.str()};
      break;
    }
  }
  r.actual = p.actual;
  if (r.actual) r.satisfied = BigInt(*r.actual) <= r.bound.floor;
  return r;
}

}  // namespace leighton
