#pragma once

// Test-only oracles, deliberately independent of the library implementations
// they cross-check.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "susmat/matrix.hpp"
#include "susmat/verify.hpp"

namespace oracles {

// Leibniz permutation-sum determinant. Exponential; sizes <= 6 only.
inline susmat::Scalar leibniz_det(const susmat::Mat& m) {
  const int n = m.rows();
  const susmat::Ring& ring = m.ring();
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  susmat::Scalar acc = ring.zero();
  do {
    int inversions = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    susmat::Scalar term = ring.one();
    for (int i = 0; i < n; ++i) term *= m.at(i, perm[i]);
    if (inversions % 2 == 1) term = -term;
    acc += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return acc;
}

// Sign of e_S ^ e_T by writing out the index word and bubble-counting swaps;
// returns 0 for intersecting supports.
inline int bubble_wedge_sign(std::uint32_t s, std::uint32_t t) {
  if (s & t) return 0;
  std::vector<int> word;
  for (int bit = 0; bit < 32; ++bit)
    if (s & (std::uint32_t{1} << bit)) word.push_back(bit);
  for (int bit = 0; bit < 32; ++bit)
    if (t & (std::uint32_t{1} << bit)) word.push_back(bit);
  int swaps = 0;
  for (std::size_t i = 0; i < word.size(); ++i)
    for (std::size_t j = 0; j + 1 < word.size() - i; ++j)
      if (word[j] > word[j + 1]) {
        std::swap(word[j], word[j + 1]);
        ++swaps;
      }
  return swaps % 2 == 0 ? 1 : -1;
}

inline susmat::Mat random_int_matrix(const susmat::Ring& ring, int rows, int cols,
                                     susmat::Rng& rng) {
  susmat::Mat m(ring, rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m.at(i, j) = ring.from_integer(rng.int_in(-9, 9));
  return m;
}

}  // namespace oracles
