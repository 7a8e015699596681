// Planted-cluster generator for recovery tests.
//
// Samples get balanced labels in shuffled order. Every informative column
// adds `separation` times a per-column random permutation of the class
// index to unit Gaussian noise, so each informative column separates each
// pair of classes by at least `separation` in the mean. Noise columns are
// pure Gaussians. Column order is shuffled, informative positions are
// recorded sorted, and the result is shifted columnwise to be nonnegative.
#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "scfs/dataset.hpp"
#include "scfs/errors.hpp"
#include "scfs/rng.hpp"
#include "scfs/types.hpp"

namespace scfs {

namespace detail {

template <typename T>
inline void shuffle_in_place(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i)
    std::swap(v[i - 1], v[uniform_index(rng, i)]);
}

}  // namespace detail

inline Dataset generate_planted(int n, int p_informative, int p_noise, int c,
                                double separation, std::uint64_t seed) {
  if (c < 1) throw InvalidInputError("generate_planted: at least one class required");
  if (n < 2 * c) throw InvalidInputError("generate_planted: need n >= 2c");
  if (p_informative < 1)
    throw InvalidInputError("generate_planted: at least one informative column required");
  if (p_noise < 0) throw InvalidInputError("generate_planted: negative noise column count");
  if (separation < 0.0) throw InvalidInputError("generate_planted: negative separation");

  const int p = p_informative + p_noise;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  std::vector<int> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = i % c;
  detail::shuffle_in_place(labels, rng);

  Matrix x(n, p);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < p; ++j) x(i, j) = gauss(rng);

  std::vector<int> order(p);
  std::iota(order.begin(), order.end(), 0);
  detail::shuffle_in_place(order, rng);

  std::vector<int> informative(order.begin(), order.begin() + p_informative);
  std::vector<int> level(c);
  for (int col : informative) {
    std::iota(level.begin(), level.end(), 0);
    detail::shuffle_in_place(level, rng);
    for (int i = 0; i < n; ++i) x(i, col) += separation * level[labels[i]];
  }
  std::sort(informative.begin(), informative.end());

  Dataset out;
  out.X.values = std::move(x);
  for (int j = 0; j < p; ++j) out.X.feature_names.push_back("f" + std::to_string(j));
  out.X = preprocess(out.X, Preprocess::ShiftNonneg);
  out.y = LabelVector::from(std::move(labels));
  out.classes = c;
  out.informative_indices = std::move(informative);
  out.name = "planted";
  return out;
}

}  // namespace scfs
