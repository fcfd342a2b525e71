#include "leighton/groupoid.hpp"

#include <boost/integer/common_factor_rt.hpp>

namespace leighton {

BigInt schedule_N(const std::vector<BigInt>& sizes) {
  BigInt n = 1;
  for (const auto& s : sizes) {
    if (s < 1) throw InputError("schedule_N: sizes must be positive");
    n = boost::multiprecision::lcm(n, s);
  }
  return n;
}

BigInt schedule_N(const std::vector<std::int64_t>& sizes) {
  std::vector<BigInt> b(sizes.begin(), sizes.end());
  return schedule_N(b);
}

std::int64_t checked_int(const BigInt& v, std::int64_t cap, const std::string& what) {
  if (v > cap) throw Error(what + " too large: " + v.str() + " exceeds " + std::to_string(cap));
  return v.convert_to<std::int64_t>();
}

}  // namespace leighton
