// Objective pieces for the alternating solver.
//
// objective_value     ||X - G G^T X||_F^2 + alpha ||X W - G||_F^2 + beta ||W||_2,1
// penalized_objective objective_value + gamma * n * sum_i (row_sum_i(G G^T) - 1)^2
// constraint_residual max_i |row_sum_i(G G^T) - 1|
//
// Row sums of G G^T are computed as G (G^T 1) so the n x n product is never formed.
#pragma once

#include <cmath>

#include "scfs/errors.hpp"
#include "scfs/norms.hpp"
#include "scfs/types.hpp"

namespace scfs {

namespace detail {

inline void check_objective_shapes(const DataMatrix& data, const TransformMatrix& transform,
                                   const ClusterIndicator& indicator) {
  data.validate();
  transform.validate();
  indicator.validate();
  if (transform.features() != data.features())
    throw InvalidInputError("objective: transform rows must match feature count");
  if (indicator.samples() != data.samples())
    throw InvalidInputError("objective: indicator rows must match sample count");
  if (indicator.clusters() != transform.clusters())
    throw InvalidInputError("objective: indicator and transform column counts differ");
}

// G (G^T 1): row sums of G G^T without materializing it.
inline Vector indicator_row_sums(const Matrix& g) {
  return g * g.colwise().sum().transpose();
}

}  // namespace detail

inline double objective_value(const DataMatrix& data, const TransformMatrix& transform,
                              const ClusterIndicator& indicator, const SolverConfig& config) {
  detail::check_objective_shapes(data, transform, indicator);
  config.validate();
  const Matrix& x = data.values;
  const Matrix& g = indicator.values;
  const Matrix& w = transform.values;
  const double reconstruction = (x - g * (g.transpose() * x)).squaredNorm();
  const double regression = (x * w - g).squaredNorm();
  return reconstruction + config.alpha * regression + config.beta * l21_norm(w);
}

inline double constraint_residual(const ClusterIndicator& indicator) {
  indicator.validate();
  const Vector s = detail::indicator_row_sums(indicator.values);
  return (s.array() - 1.0).abs().maxCoeff();
}

inline double penalized_objective(const DataMatrix& data, const TransformMatrix& transform,
                                  const ClusterIndicator& indicator, const SolverConfig& config) {
  const double base = objective_value(data, transform, indicator, config);
  const Vector s = detail::indicator_row_sums(indicator.values);
  const double penalty = (s.array() - 1.0).square().sum();
  return base + config.gamma * static_cast<double>(data.samples()) * penalty;
}

}  // namespace scfs
