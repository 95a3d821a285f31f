#pragma once

// Shared fixtures for the test suites: small canonical spaces plus banded
// random generators whose validity is forced by construction.

#include <random>
#include <utility>
#include <vector>

#include "gmfp/gmetric.hpp"
#include "gmfp/space.hpp"

namespace corpus {

inline gmfp::BinaryTable discrete_metric(int n) {
  gmfp::BinaryTable t{gmfp::FiniteSpace(n)};
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) t.set_sym(i, j, 1.0);
  return t;
}

inline gmfp::BinaryTable abs_diff_metric(int n) {
  gmfp::BinaryTable t{gmfp::FiniteSpace(n)};
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) t.set_sym(i, j, static_cast<double>(j - i));
  return t;
}

// Off-diagonal values in [1, 2]: the triangle inequality holds outright
// because any two values sum to at least 2.
inline gmfp::BinaryTable random_metric(int n, std::uint64_t seed) {
  gmfp::BinaryTable t{gmfp::FiniteSpace(n)};
  std::mt19937_64 rng(seed);
  const auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) t.set_sym(i, j, 1.0 + uniform());
  return t;
}

// 0 on all-equal triples, 1 everywhere else.
inline gmfp::TernaryTable discrete_g(int n) {
  gmfp::TernaryTable t{gmfp::FiniteSpace(n)};
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      for (int k = j; k < n; ++k) {
        if (i == j && j == k) continue;
        t.set(i, j, k, 1.0);
      }
  return t;
}

// The canonical non-symmetric two-point G-metric: G(0,0,1) = 1,
// G(0,1,1) = 2. The doubling bound is tight on it.
inline gmfp::TernaryTable asym_two_point_g() {
  gmfp::TernaryTable t{gmfp::FiniteSpace(2)};
  t.set(0, 0, 1, 1.0);
  t.set(0, 1, 1, 2.0);
  return t;
}

inline int corpus_n(std::uint64_t seed) { return 2 + static_cast<int>(seed % 7); }

inline std::vector<std::pair<int, int>> random_subset_pairs(int n, std::mt19937_64& rng,
                                                            int count) {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < count; ++i) {
    const int a = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
    const int b = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
    out.emplace_back(a, b);
  }
  return out;
}

}  // namespace corpus
