// Matrix norms used by the objective.
#pragma once

#include "scfs/errors.hpp"
#include "scfs/types.hpp"

namespace scfs {

// Sum of row-wise Euclidean norms. Zero exactly when the matrix is zero;
// bounded between ||m||_F and sqrt(rows) * ||m||_F.
inline double l21_norm(const Matrix& m) {
  if (!m.allFinite()) throw InvalidInputError("l21_norm: non-finite entries");
  return m.rowwise().norm().sum();
}

inline double frobenius_norm_sq(const Matrix& m) {
  if (!m.allFinite()) throw InvalidInputError("frobenius_norm_sq: non-finite entries");
  return m.squaredNorm();
}

inline Vector row_norms(const Matrix& m) {
  if (!m.allFinite()) throw InvalidInputError("row_norms: non-finite entries");
  return m.rowwise().norm();
}

}  // namespace scfs
