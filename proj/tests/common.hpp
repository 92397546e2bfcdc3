#pragma once

#include <random>

#include "sbpp/space.hpp"

namespace testing_util {

using sbpp::Index;
using sbpp::Mat;
using sbpp::Vec;

inline Mat randn(std::mt19937_64& rng, Index r, Index c) {
  std::normal_distribution<double> nd;
  Mat m(r, c);
  for (Index j = 0; j < c; ++j)
    for (Index i = 0; i < r; ++i) m(i, j) = nd(rng);
  return m;
}

inline Vec randv(std::mt19937_64& rng, Index n) { return randn(rng, n, 1); }

// Well-conditioned SPD matrix.
inline Mat rand_spd(std::mt19937_64& rng, Index n) {
  const Mat a = randn(rng, n, n);
  const Mat h = a * a.transpose() / static_cast<double>(n) + Mat::Identity(n, n);
  return 0.5 * (h + h.transpose());
}

inline sbpp::Space rand_space(std::mt19937_64& rng, Index n) {
  return sbpp::Space(sbpp::Norm(rand_spd(rng, n), sbpp::NormStructure::full));
}

// Product of small-integer factors: exact in floating point, so rank <= k holds exactly.
inline Mat rand_int_rank(std::mt19937_64& rng, Index m, Index n, Index k) {
  std::uniform_int_distribution<int> ud(-3, 3);
  Mat a(m, k), b(k, n);
  for (Index j = 0; j < k; ++j)
    for (Index i = 0; i < m; ++i) a(i, j) = ud(rng);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < k; ++i) b(i, j) = ud(rng);
  return a * b;
}

// Rank-k product of Gaussian factors.
inline Mat rand_rank(std::mt19937_64& rng, Index m, Index n, Index k) { return randn(rng, m, k) * randn(rng, k, n); }

}  // namespace testing_util
