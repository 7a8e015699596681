// Lloyd k-means with k-means++ seeding. Deterministic for a given seed:
// ties in seeding and assignment resolve to the lowest index, and an empty
// cluster is reseeded at the farthest point of a cluster with spare members.
#pragma once

#include <limits>
#include <vector>

#include "scfs/errors.hpp"
#include "scfs/rng.hpp"
#include "scfs/types.hpp"

namespace scfs {

inline LabelVector kmeans(const DataMatrix& data, int k, std::uint64_t seed) {
  data.validate();
  const Index n = data.samples();
  if (k < 1) throw InvalidInputError("kmeans: k must be at least 1");
  if (k > n) throw InvalidInputError("kmeans: k exceeds sample count");

  const Matrix& pts = data.values;
  std::mt19937_64 rng(seed);

  // k-means++ seeding.
  Matrix centers(k, pts.cols());
  centers.row(0) = pts.row(uniform_index(rng, n));
  Vector d2 = (pts.rowwise() - centers.row(0)).rowwise().squaredNorm();
  for (int j = 1; j < k; ++j) {
    const double total = d2.sum();
    Index pick = 0;
    if (total > 0.0) {
      const double r = uniform01(rng) * total;
      double acc = 0.0;
      pick = n - 1;
      for (Index i = 0; i < n; ++i) {
        acc += d2[i];
        if (acc >= r) {
          pick = i;
          break;
        }
      }
    } else {
      pick = j % n;  // every remaining point duplicates a chosen center
    }
    centers.row(j) = pts.row(pick);
    d2 = d2.cwiseMin((pts.rowwise() - centers.row(j)).rowwise().squaredNorm());
  }

  const Vector sqn = pts.rowwise().squaredNorm();
  std::vector<int> assign(n, 0);
  constexpr int kMaxIter = 300;
  constexpr double kShiftTol = 1e-6;

  for (int iter = 0; iter < kMaxIter; ++iter) {
    // Assignment via ||x||^2 - 2 x.c + ||c||^2; the cross term is one product.
    const Matrix cross = pts * centers.transpose();
    const Vector csqn = centers.rowwise().squaredNorm();
    Vector point_d2(n);
    for (Index i = 0; i < n; ++i) {
      int best = 0;
      double bestv = std::numeric_limits<double>::infinity();
      for (int j = 0; j < k; ++j) {
        const double v = sqn[i] - 2.0 * cross(i, j) + csqn[j];
        if (v < bestv) {
          bestv = v;
          best = j;
        }
      }
      assign[i] = best;
      point_d2[i] = bestv;
    }

    Matrix sums = Matrix::Zero(k, pts.cols());
    std::vector<Index> count(k, 0);
    for (Index i = 0; i < n; ++i) {
      sums.row(assign[i]) += pts.row(i);
      ++count[assign[i]];
    }

    std::vector<char> stolen(n, 0);
    for (int j = 0; j < k; ++j) {
      if (count[j] > 0) continue;
      Index far = -1;
      double farv = -1.0;
      for (Index i = 0; i < n; ++i) {
        if (stolen[i] || count[assign[i]] <= 1) continue;
        if (point_d2[i] > farv) {
          farv = point_d2[i];
          far = i;
        }
      }
      if (far < 0) continue;  // no donor; k <= n keeps this unreachable in practice
      sums.row(assign[far]) -= pts.row(far);
      --count[assign[far]];
      assign[far] = j;
      count[j] = 1;
      sums.row(j) = pts.row(far);
      stolen[far] = 1;
      point_d2[far] = 0.0;
    }

    Matrix next(k, pts.cols());
    for (int j = 0; j < k; ++j) next.row(j) = sums.row(j) / double(count[j]);

    const double shift = (next - centers).norm() / (centers.norm() + 1e-30);
    centers = next;
    if (shift < kShiftTol) break;
  }

  return LabelVector::from(assign);
}

}  // namespace scfs
