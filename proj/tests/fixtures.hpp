#pragma once

#include <cstdint>
#include <random>

#include "chaos/form.hpp"

namespace chaos::testing {

/// Form with integer coefficients drawn uniformly from [-range, range] on
/// every sorted key. Never all zero.
inline SymmetricMultilinearForm random_integer_form(std::mt19937_64& rng, int k, int n,
                                                    int range = 3) {
  std::uniform_int_distribution<int> coef(-range, range);
  while (true) {
    SymmetricMultilinearForm::CoefficientMap m;
    IndexTuple key(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) key[static_cast<std::size_t>(i)] = i + 1;
    while (true) {
      if (int c = coef(rng); c != 0) m.emplace(key, c);
      int pos = k - 1;
      while (pos >= 0 && key[static_cast<std::size_t>(pos)] == n - (k - 1 - pos)) --pos;
      if (pos < 0) break;
      ++key[static_cast<std::size_t>(pos)];
      for (int i = pos + 1; i < k; ++i) {
        key[static_cast<std::size_t>(i)] = key[static_cast<std::size_t>(i - 1)] + 1;
      }
    }
    if (!m.empty()) return SymmetricMultilinearForm(k, n, std::move(m));
  }
}

/// All three pairs of {1,2,3} with coefficient 1.
inline SymmetricMultilinearForm all_pairs_n3() {
  return SymmetricMultilinearForm(2, 3, {{{1, 2}, 1.0}, {{1, 3}, 1.0}, {{2, 3}, 1.0}});
}

}  // namespace chaos::testing
