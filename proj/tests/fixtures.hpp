#pragma once

#include "leighton/graph.hpp"

namespace leighton::testing {

// C_n -> C_m for m | n, index mod m; also C_n -> R_1 when m = 1.
inline GraphMorphism wrap(int n, int m) {
  GraphMorphism f{cycle(n), m == 1 ? rose(1) : cycle(m), {}, {}};
  for (int k = 0; k < n; ++k) f.vmap.push_back(m == 1 ? 0 : k % m);
  for (int k = 0; k < n; ++k) {
    f.dmap.push_back(2 * (k % m));
    f.dmap.push_back(2 * (k % m) + 1);
  }
  return f;
}

}  // namespace leighton::testing
