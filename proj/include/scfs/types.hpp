// Core value types shared across the library.
#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "scfs/errors.hpp"

namespace scfs {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

// Dense sample matrix, one row per sample, one column per feature.
struct DataMatrix {
  Matrix values;
  std::vector<std::string> feature_names;  // empty, or one name per feature

  Index samples() const { return values.rows(); }
  Index features() const { return values.cols(); }

  void validate() const {
    if (samples() < 2) throw InvalidInputError("DataMatrix: at least two samples required");
    if (features() < 1) throw InvalidInputError("DataMatrix: at least one feature required");
    if (!values.allFinite()) throw InvalidInputError("DataMatrix: non-finite entries");
    if (!feature_names.empty() &&
        static_cast<Index>(feature_names.size()) != features())
      throw InvalidInputError("DataMatrix: feature name count does not match feature count");
  }
};

// Soft cluster indicator, one row per sample, one column per cluster.
// Entrywise nonnegative; the solver keeps every row sum of G G^T near one.
struct ClusterIndicator {
  Matrix values;

  Index samples() const { return values.rows(); }
  Index clusters() const { return values.cols(); }

  void validate() const {
    if (samples() < 1 || clusters() < 1)
      throw InvalidInputError("ClusterIndicator: empty matrix");
    if (!values.allFinite()) throw InvalidInputError("ClusterIndicator: non-finite entries");
    if (values.minCoeff() < 0.0)
      throw InvalidInputError("ClusterIndicator: negative entries");
  }
};

// Regression transform, one row per feature, one column per cluster.
// Row norms measure feature relevance.
struct TransformMatrix {
  Matrix values;

  Index features() const { return values.rows(); }
  Index clusters() const { return values.cols(); }

  void validate() const {
    if (!values.allFinite()) throw InvalidInputError("TransformMatrix: non-finite entries");
  }
};

// Diagonal reweighting matrix stored as its diagonal; strictly positive.
struct RowWeightDiagonal {
  Vector diag;

  Index features() const { return diag.size(); }

  void validate() const {
    if (!diag.allFinite()) throw InvalidInputError("RowWeightDiagonal: non-finite entries");
    if (diag.size() > 0 && diag.minCoeff() <= 0.0)
      throw InvalidInputError("RowWeightDiagonal: entries must be strictly positive");
  }
};

struct SolverConfig {
  double alpha = 1.0;          // regression term weight
  double beta = 1.0;           // row-sparsity term weight
  double gamma = 1e6;          // indicator constraint penalty
  int clusters = 0;            // number of clusters; must be set by the caller
  double epsilon = 1e-12;      // row-weight smoothing for vanishing rows
  double tol = 1e-5;           // relative objective decrease that stops the loop
  int max_iter = 100;
  std::uint64_t seed = 0;

  void validate() const {
    if (!(alpha > 0.0)) throw InvalidInputError("SolverConfig: alpha must be positive");
    if (!(beta > 0.0)) throw InvalidInputError("SolverConfig: beta must be positive");
    if (!(gamma > 0.0)) throw InvalidInputError("SolverConfig: gamma must be positive");
    if (clusters < 1) throw InvalidInputError("SolverConfig: clusters must be at least 1");
    if (!(epsilon > 0.0)) throw InvalidInputError("SolverConfig: epsilon must be positive");
    if (!(tol > 0.0)) throw InvalidInputError("SolverConfig: tol must be positive");
    if (max_iter < 1) throw InvalidInputError("SolverConfig: max_iter must be at least 1");
  }
};

// Class assignment for n samples; ids are nonnegative but need not be contiguous.
struct LabelVector {
  std::vector<int> labels;
  int k = 0;  // number of distinct ids present

  Index size() const { return static_cast<Index>(labels.size()); }

  static LabelVector from(std::vector<int> ids) {
    std::unordered_set<int> distinct;
    for (int v : ids) {
      if (v < 0) throw InvalidInputError("LabelVector: negative class id");
      distinct.insert(v);
    }
    LabelVector out;
    out.labels = std::move(ids);
    out.k = static_cast<int>(distinct.size());
    return out;
  }
};

struct FitResult {
  TransformMatrix transform;
  ClusterIndicator indicator;
  std::vector<double> objective_trace;   // unconstrained objective per iteration
  std::vector<double> penalized_trace;   // objective plus constraint penalty
  int iterations = 0;
  bool converged = false;
  std::vector<int> ranking;  // features by descending row norm, ties by ascending index
  Vector row_norms;
};

// Columns of `data` at `indices`, in the given order.
inline DataMatrix select_columns(const DataMatrix& data, const std::vector<int>& indices) {
  if (indices.empty()) throw InvalidInputError("select_columns: empty index list");
  DataMatrix out;
  out.values.resize(data.samples(), static_cast<Index>(indices.size()));
  for (std::size_t j = 0; j < indices.size(); ++j) {
    if (indices[j] < 0 || indices[j] >= data.features())
      throw InvalidInputError("select_columns: index out of range");
    out.values.col(static_cast<Index>(j)) = data.values.col(indices[j]);
    if (!data.feature_names.empty())
      out.feature_names.push_back(data.feature_names[static_cast<std::size_t>(indices[j])]);
  }
  return out;
}

}  // namespace scfs
