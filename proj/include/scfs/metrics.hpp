// Clustering agreement measures: optimal label matching, accuracy, and
// normalized mutual information.
#pragma once

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <vector>

#include "scfs/errors.hpp"
#include "scfs/hungarian.hpp"
#include "scfs/types.hpp"

namespace scfs {

namespace detail {

// Compress arbitrary ids to 0..k-1 in order of first appearance;
// dict maps the compressed id back to the original.
inline std::vector<int> compress_ids(const std::vector<int>& ids, std::vector<int>& dict) {
  dict.clear();
  std::unordered_map<int, int> to_compressed;
  std::vector<int> out;
  out.reserve(ids.size());
  for (int v : ids) {
    auto it = to_compressed.find(v);
    if (it == to_compressed.end()) {
      it = to_compressed.emplace(v, static_cast<int>(dict.size())).first;
      dict.push_back(v);
    }
    out.push_back(it->second);
  }
  return out;
}

inline void check_pair(const LabelVector& a, const LabelVector& b, const char* op) {
  if (a.labels.empty() || b.labels.empty())
    throw InvalidInputError(std::string(op) + ": empty label vector");
  if (a.labels.size() != b.labels.size())
    throw InvalidInputError(std::string(op) + ": length mismatch");
}

}  // namespace detail

// Relabels `predicted` by the confusion-count-maximizing matching against
// `truth`. Predicted classes left unmatched (more predicted than true
// classes) receive fresh ids above every truth id.
inline LabelVector best_map(const LabelVector& truth, const LabelVector& predicted) {
  detail::check_pair(truth, predicted, "best_map");
  std::vector<int> y_dict, z_dict;
  const std::vector<int> y = detail::compress_ids(truth.labels, y_dict);
  const std::vector<int> z = detail::compress_ids(predicted.labels, z_dict);
  const int ky = static_cast<int>(y_dict.size());
  const int kz = static_cast<int>(z_dict.size());
  const int k = std::max(ky, kz);

  Matrix counts = Matrix::Zero(k, k);  // rows: predicted classes, cols: true classes
  for (std::size_t i = 0; i < y.size(); ++i) counts(z[i], y[i]) += 1.0;

  const std::vector<int> match = solve_assignment(-counts);

  int fresh = 1 + *std::max_element(truth.labels.begin(), truth.labels.end());
  std::vector<int> mapped(kz, -1);
  for (int r = 0; r < kz; ++r)
    mapped[r] = match[r] < ky ? y_dict[match[r]] : fresh++;

  std::vector<int> out(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) out[i] = mapped[z[i]];
  return LabelVector::from(std::move(out));
}

// Fraction of samples whose best-mapped predicted label equals the truth.
inline double accuracy(const LabelVector& truth, const LabelVector& predicted) {
  detail::check_pair(truth, predicted, "accuracy");
  const LabelVector mapped = best_map(truth, predicted);
  Index hits = 0;
  for (std::size_t i = 0; i < truth.labels.size(); ++i)
    if (mapped.labels[i] == truth.labels[i]) ++hits;
  return static_cast<double>(hits) / static_cast<double>(truth.labels.size());
}

// Shannon entropy of the class distribution, natural log.
inline double entropy(const LabelVector& v) {
  if (v.labels.empty()) throw InvalidInputError("entropy: empty label vector");
  std::vector<int> dict;
  const std::vector<int> c = detail::compress_ids(v.labels, dict);
  std::vector<Index> count(dict.size(), 0);
  for (int id : c) ++count[id];
  const double n = static_cast<double>(v.labels.size());
  double h = 0.0;
  for (Index cnt : count) {
    const double pr = static_cast<double>(cnt) / n;
    h -= pr * std::log(pr);
  }
  return h;
}

// Mutual information over max-entropy normalization. Two constant label
// vectors are identical partitions and score 1.
inline double nmi(const LabelVector& a, const LabelVector& b) {
  detail::check_pair(a, b, "nmi");
  std::vector<int> a_dict, b_dict;
  const std::vector<int> ca = detail::compress_ids(a.labels, a_dict);
  const std::vector<int> cb = detail::compress_ids(b.labels, b_dict);
  // Identical partitions score one by definition; the arithmetic below can
  // land an ulp away from it.
  if (ca == cb) return 1.0;
  const int ka = static_cast<int>(a_dict.size());
  const int kb = static_cast<int>(b_dict.size());
  const double n = static_cast<double>(a.labels.size());

  Matrix joint = Matrix::Zero(ka, kb);
  for (std::size_t i = 0; i < ca.size(); ++i) joint(ca[i], cb[i]) += 1.0;

  const Vector pa = joint.rowwise().sum() / n;
  const Vector pb = joint.colwise().sum().transpose() / n;
  double info = 0.0;
  for (int r = 0; r < ka; ++r) {
    for (int c = 0; c < kb; ++c) {
      const double pab = joint(r, c) / n;
      if (pab > 0.0) info += pab * std::log(pab / (pa[r] * pb[c]));
    }
  }
  const double denom = std::max(entropy(a), entropy(b));
  if (denom == 0.0) return 1.0;
  return std::clamp(info / denom, 0.0, 1.0);
}

}  // namespace scfs
