#pragma once

#include "ckrec/ktheory.hpp"

#include <random>

namespace ckrec_test {

inline ckrec::IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r,
                                      std::size_t c, long lo, long hi) {
  std::uniform_int_distribution<long> dist(lo, hi);
  ckrec::IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.at(i, j) = ckrec::Int(dist(rng));
  return m;
}

// Rejection sampling over 0/1 matrices; deterministic fallback is a cycle
// with a loop at vertex 0 (irreducible, not a permutation).
inline ckrec::AdjacencyMatrix random_admissible(std::mt19937_64& rng,
                                                std::size_t n) {
  std::uniform_int_distribution<int> bit(0, 1);
  for (int tries = 0; tries < 2000; ++tries) {
    ckrec::IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m.at(i, j) = bit(rng);
    try {
      return ckrec::check_admissible(m);
    } catch (const ckrec::Error&) {
    }
  }
  ckrec::IntMatrix m(n, n);
  for (std::size_t i = 0; i + 1 < n; ++i) m.at(i, i + 1) = 1;
  m.at(n - 1, 0) = 1;
  m.at(0, 0) = 1;
  return ckrec::check_admissible(m);
}

}  // namespace ckrec_test
