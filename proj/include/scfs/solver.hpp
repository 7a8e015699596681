// Alternating minimization of
//
//   ||X - G G^T X||_F^2 + alpha ||X W - G||_F^2 + beta ||W||_2,1
//
// over a nonnegative indicator G (row sums of G G^T pushed to one by a
// quadratic penalty with weight gamma) and a transform W whose 2,1-norm is
// handled by iteratively reweighted least squares. Per iteration:
//
//   W  <- argmin alpha ||X W - G||_F^2 + beta tr(W^T D W)
//   M  =  (X X^T + n gamma 1) G, computed without the n x n factors
//   G  <- G .* [2 M + alpha X W]_+ ./ (M G^T G + G G^T M + alpha G)
//   D  <- diag(1 / (2 ||w_i|| + epsilon))
//
// The loop stops once the relative decrease of the unpenalized objective
// falls below tol, or after max_iter iterations.
#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "scfs/errors.hpp"
#include "scfs/kmeans.hpp"
#include "scfs/objective.hpp"
#include "scfs/rng.hpp"
#include "scfs/types.hpp"

namespace scfs {

// Denominator guard for the multiplicative update; keeps zero entries of G
// absorbing without ever dividing by zero.
constexpr double kDenominatorGuard = 1e-12;

// Normalized hard indicator from seeded k-means: G(i, cluster(i)) =
// 1/sqrt(cluster size), zero elsewhere, so G^T G = I and every row sum of
// G G^T is one. Retries with derived sub-seeds if a cluster comes back empty.
inline ClusterIndicator initial_indicator(const DataMatrix& data, const SolverConfig& config) {
  data.validate();
  config.validate();
  const Index n = data.samples();
  if (config.clusters > std::min(n, data.features()))
    throw InvalidInputError("initial_indicator: clusters exceed min(samples, features)");

  constexpr int kMaxRetries = 10;
  for (int attempt = 0; attempt <= kMaxRetries; ++attempt) {
    const std::uint64_t s = attempt == 0
        ? config.seed
        : derive_seed(config.seed, seed_stream::kInitRetry, attempt);
    const LabelVector labels = kmeans(data, config.clusters, s);
    std::vector<Index> count(config.clusters, 0);
    for (int c : labels.labels) ++count[c];
    if (std::find(count.begin(), count.end(), Index{0}) != count.end()) continue;

    Matrix g = Matrix::Zero(n, config.clusters);
    for (Index i = 0; i < n; ++i) {
      const int c = labels.labels[i];
      g(i, c) = 1.0 / std::sqrt(static_cast<double>(count[c]));
    }
    return ClusterIndicator{std::move(g)};
  }
  throw Error("initial_indicator: k-means kept producing an empty cluster");
}

// Minimizer of alpha ||X W - G||_F^2 + beta tr(W^T D W), i.e. the solution of
// (alpha X^T X + beta D) W = alpha X^T G. The system is solved through
// whichever of the feature-space or sample-space (Woodbury) normal equations
// is cheaper, then polished by iterative refinement so both routes reach
// residuals near machine precision even when D spans many orders of magnitude.
inline TransformMatrix update_transform(const DataMatrix& data, const ClusterIndicator& indicator,
                                        const RowWeightDiagonal& row_weights,
                                        const SolverConfig& config) {
  data.validate();
  indicator.validate();
  row_weights.validate();
  config.validate();
  const Index n = data.samples();
  const Index p = data.features();
  if (indicator.samples() != n)
    throw InvalidInputError("update_transform: indicator rows must match sample count");
  if (row_weights.features() != p)
    throw InvalidInputError("update_transform: row weight count must match feature count");

  const Matrix& x = data.values;
  const Matrix& g = indicator.values;
  const double alpha = config.alpha;
  const double beta = config.beta;
  const Vector bd = beta * row_weights.diag;

  const Matrix rhs = alpha * (x.transpose() * g);
  const double rhs_scale = 1.0 + rhs.norm();

  Eigen::LLT<Matrix> llt;
  Matrix a;     // feature-space system matrix, kept for cheap residuals
  Vector dinv;  // sample-space route only
  const bool sample_space = n < p;

  if (sample_space) {
    // (alpha X^T X + B)^-1 = B^-1 - B^-1 X^T (X B^-1 X^T + I/alpha)^-1 X B^-1
    dinv = bd.cwiseInverse();
    Matrix k = x * dinv.asDiagonal() * x.transpose();
    k.diagonal().array() += 1.0 / alpha;
    llt.compute(k);
  } else {
    a = alpha * (x.transpose() * x);
    a.diagonal() += bd;
    llt.compute(a);
  }
  if (llt.info() != Eigen::Success)
    throw SolveError("update_transform: Cholesky factorization failed", alpha, beta);

  const auto solve = [&](const Matrix& b) -> Matrix {
    if (!sample_space) return llt.solve(b);
    const Matrix u = dinv.asDiagonal() * b;
    return u - dinv.asDiagonal() * (x.transpose() * llt.solve(x * u));
  };
  const auto residual = [&](const Matrix& w) -> Matrix {
    if (!sample_space) return rhs - a * w;
    return rhs - alpha * (x.transpose() * (x * w)) - bd.asDiagonal() * w;
  };

  Matrix w = solve(rhs);
  constexpr int kMaxRefine = 3;
  for (int pass = 0; pass < kMaxRefine; ++pass) {
    const Matrix r = residual(w);
    if (r.norm() <= 1e-12 * rhs_scale) break;
    w += solve(r);
  }
  if (!w.allFinite())
    throw SolveError("update_transform: solution is non-finite", alpha, beta);
  return TransformMatrix{std::move(w)};
}

// D_ii = 1 / (2 ||w_i|| + epsilon); epsilon keeps rows that have vanished
// from re-entering with infinite weight.
inline RowWeightDiagonal update_row_weights(const TransformMatrix& transform,
                                            const SolverConfig& config) {
  transform.validate();
  config.validate();
  Vector d = (2.0 * transform.values.rowwise().norm().array() + config.epsilon).inverse();
  return RowWeightDiagonal{std::move(d)};
}

// (X X^T + n gamma 1) G. Neither n x n matrix is materialized: X X^T G
// associates as X (X^T G) and the all-ones product broadcasts n * colsum(G)
// to every row.
inline Matrix similarity_product(const DataMatrix& data, const ClusterIndicator& indicator,
                                 const SolverConfig& config) {
  data.validate();
  indicator.validate();
  config.validate();
  if (indicator.samples() != data.samples())
    throw InvalidInputError("similarity_product: indicator rows must match sample count");
  const Matrix& x = data.values;
  const Matrix& g = indicator.values;
  Matrix m = x * (x.transpose() * g);
  m.rowwise() += (static_cast<double>(data.samples()) * config.gamma) * g.colwise().sum();
  return m;
}

// Multiplicative indicator step on a precomputed similarity product:
// G <- G .* [2 M + alpha X W]_+ ./ (M G^T G + G G^T M + alpha G). Zero
// entries stay zero and the output is nonnegative for any sign pattern of
// X W thanks to the numerator clamp.
inline ClusterIndicator update_indicator(const DataMatrix& data, const ClusterIndicator& indicator,
                                         const TransformMatrix& transform, const Matrix& m,
                                         const SolverConfig& config) {
  detail::check_objective_shapes(data, transform, indicator);
  config.validate();
  if (m.rows() != indicator.samples() || m.cols() != indicator.clusters())
    throw InvalidInputError("update_indicator: similarity product has the wrong shape");
  const Matrix& g = indicator.values;
  const Matrix numer =
      (2.0 * m + config.alpha * (data.values * transform.values)).cwiseMax(0.0);
  Matrix denom = m * (g.transpose() * g) + g * (g.transpose() * m) + config.alpha * g;
  denom.array() += kDenominatorGuard;
  return ClusterIndicator{g.cwiseProduct(numer.cwiseQuotient(denom))};
}

inline ClusterIndicator update_indicator(const DataMatrix& data, const ClusterIndicator& indicator,
                                         const TransformMatrix& transform,
                                         const SolverConfig& config) {
  return update_indicator(data, indicator, transform,
                          similarity_product(data, indicator, config), config);
}

// Feature order by descending relevance; ties break toward the lower index.
inline std::vector<int> ranking_by_row_norm(const Vector& norms) {
  std::vector<int> order(norms.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return norms[a] > norms[b]; });
  return order;
}

// Runs the alternating loop from a k-means indicator until the relative
// decrease of the objective drops below tol or max_iter is reached.
// Deterministic for fixed input and config; requires nonnegative data.
inline FitResult fit(const DataMatrix& data, const SolverConfig& config) {
  data.validate();
  config.validate();
  if (data.values.minCoeff() < 0.0)
    throw InvalidInputError("fit: negative entries; preprocess the data first");

  ClusterIndicator g = initial_indicator(data, config);
  RowWeightDiagonal d{Vector::Ones(data.features())};
  TransformMatrix w;
  FitResult out;

  for (int iter = 0; iter < config.max_iter; ++iter) {
    w = update_transform(data, g, d, config);
    const Matrix m = similarity_product(data, g, config);
    g = update_indicator(data, g, w, m, config);
    d = update_row_weights(w, config);

    const double obj = objective_value(data, w, g, config);
    const double pen = penalized_objective(data, w, g, config);
    out.objective_trace.push_back(obj);
    out.penalized_trace.push_back(pen);
    if (!std::isfinite(obj) || !std::isfinite(pen))
      throw DivergenceError("fit: objective diverged at iteration " +
                                std::to_string(iter + 1),
                            out.objective_trace, out.penalized_trace);

    const std::size_t t = out.objective_trace.size();
    if (t >= 2) {
      const double prev = out.objective_trace[t - 2];
      const double cur = out.objective_trace[t - 1];
      const bool stop = cur != 0.0 ? (prev - cur) / cur < config.tol : prev == cur;
      if (stop) {
        out.converged = true;
        break;
      }
    }
  }

  out.iterations = static_cast<int>(out.objective_trace.size());
  out.row_norms = w.values.rowwise().norm();
  out.ranking = ranking_by_row_norm(out.row_norms);
  out.transform = std::move(w);
  out.indicator = std::move(g);
  return out;
}

// First k features of the relevance ranking.
inline std::vector<int> select_features(const FitResult& result, int k) {
  if (k < 1 || k > static_cast<int>(result.ranking.size()))
    throw InvalidInputError("select_features: k out of range");
  return std::vector<int>(result.ranking.begin(), result.ranking.begin() + k);
}

}  // namespace scfs
