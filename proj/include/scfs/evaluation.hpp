// Clustering-based evaluation of a feature subset: repeated seeded k-means
// on the selected columns, scored against ground truth.
#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "scfs/errors.hpp"
#include "scfs/kmeans.hpp"
#include "scfs/metrics.hpp"
#include "scfs/rng.hpp"
#include "scfs/types.hpp"

namespace scfs {

struct EvalReport {
  double acc_mean = 0.0;
  double acc_std = 0.0;
  double nmi_mean = 0.0;
  double nmi_std = 0.0;
  int trials = 0;
  std::vector<std::pair<double, double>> per_trial;  // (accuracy, nmi)
  int degenerate_nmi_trials = 0;  // trials where both partitions were constant

  static EvalReport from_trials(std::vector<std::pair<double, double>> per_trial,
                                int degenerate) {
    EvalReport out;
    out.trials = static_cast<int>(per_trial.size());
    out.degenerate_nmi_trials = degenerate;
    double sa = 0.0, sa2 = 0.0, sn = 0.0, sn2 = 0.0;
    for (const auto& [acc, nm] : per_trial) {
      sa += acc;
      sa2 += acc * acc;
      sn += nm;
      sn2 += nm * nm;
    }
    const double t = static_cast<double>(out.trials);
    out.acc_mean = sa / t;
    out.nmi_mean = sn / t;
    out.acc_std = std::sqrt(std::max(0.0, sa2 / t - out.acc_mean * out.acc_mean));
    out.nmi_std = std::sqrt(std::max(0.0, sn2 / t - out.nmi_mean * out.nmi_mean));
    out.per_trial = std::move(per_trial);
    return out;
  }
};

// Runs `trials` k-means clusterings (k = number of true classes) on the
// selected columns; trial t uses the sub-seed derived from (seed, t).
inline EvalReport evaluate_selection(const DataMatrix& data,
                                     const std::vector<int>& feature_indices,
                                     const LabelVector& truth, int trials,
                                     std::uint64_t seed) {
  data.validate();
  if (trials < 1) throw InvalidInputError("evaluate_selection: trials must be at least 1");
  if (truth.size() != data.samples())
    throw InvalidInputError("evaluate_selection: label count must match sample count");
  const DataMatrix sub = select_columns(data, feature_indices);

  std::vector<std::pair<double, double>> per_trial;
  per_trial.reserve(trials);
  int degenerate = 0;
  for (int t = 0; t < trials; ++t) {
    const LabelVector z = kmeans(sub, truth.k, derive_seed(seed, t));
    if (truth.k == 1 && z.k == 1) ++degenerate;
    per_trial.emplace_back(accuracy(truth, z), nmi(truth, z));
  }
  return EvalReport::from_trials(std::move(per_trial), degenerate);
}

}  // namespace scfs
