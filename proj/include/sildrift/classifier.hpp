#pragma once

#include <cstddef>
#include <limits>
#include <map>
#include <span>
#include <vector>

#include "sildrift/metrics.hpp"
#include "sildrift/types.hpp"

namespace sildrift {

/// Nearest-centroid reference model.
class CentroidModel {
 public:
  static CentroidModel train(const LabeledSamples& data, DistanceMetric metric) {
    if (data.size() == 0) throw DomainError("train: empty training set");
    const std::size_t d = data.samples.dimension();
    std::map<ClassId, std::pair<std::vector<double>, std::size_t>> sums;
    for (std::size_t i = 0; i < data.size(); ++i) {
      auto& [sum, n] = sums[data.labels[i]];
      if (sum.empty()) sum.assign(d, 0.0);
      const auto row = data.samples[i];
      for (std::size_t j = 0; j < d; ++j) sum[j] += row[j];
      ++n;
    }
    if (sums.size() < 2) throw DegenerateLabelingError();

    CentroidModel m;
    m.metric_ = metric;
    m.centroids_ = Samples(d);
    for (auto& [c, acc] : sums) {
      auto& [sum, n] = acc;
      for (double& v : sum) v /= static_cast<double>(n);
      m.classes_.push_back(c);
      m.centroids_.push_back(sum);
    }
    return m;
  }

  /// Class with the nearest centroid; ties go to the smallest class id.
  ClassId predict(std::span<const double> sample) const {
    if (sample.size() != dimension()) throw DimensionMismatchError(dimension(), sample.size());
    ClassId best = classes_.front();
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < classes_.size(); ++k) {
      const double dk = distance(sample, centroids_[k], metric_);
      if (dk < best_d) {
        best_d = dk;
        best = classes_[k];
      }
    }
    return best;
  }

  std::vector<ClassId> predict(const Samples& samples) const {
    std::vector<ClassId> out;
    out.reserve(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) out.push_back(predict(samples[i]));
    return out;
  }

  const std::vector<ClassId>& classes() const noexcept { return classes_; }
  std::span<const double> centroid(std::size_t k) const { return centroids_[k]; }
  std::size_t dimension() const noexcept { return centroids_.dimension(); }
  DistanceMetric metric() const noexcept { return metric_; }

  bool operator==(const CentroidModel&) const = default;

 private:
  DistanceMetric metric_ = DistanceMetric::Euclidean;
  std::vector<ClassId> classes_;  // ascending
  Samples centroids_;
};

/// Unweighted mean of per-class F1 over every class seen in either the truth or the predictions.
/// A class never predicted, or never present, scores 0.
inline double macro_f1(std::span<const ClassId> truth, std::span<const ClassId> predicted) {
  if (truth.size() != predicted.size()) throw DomainError("macro_f1: length mismatch");
  if (truth.empty()) throw DomainError("macro_f1: empty evaluation set");
  struct Tally {
    std::size_t tp = 0, fp = 0, fn = 0;
  };
  std::map<ClassId, Tally> t;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (truth[i] == predicted[i]) {
      ++t[truth[i]].tp;
    } else {
      ++t[predicted[i]].fp;
      ++t[truth[i]].fn;
    }
  }
  double sum = 0.0;
  for (const auto& [c, x] : t) {
    const double denom = static_cast<double>(2 * x.tp + x.fp + x.fn);
    sum += denom > 0.0 ? 2.0 * static_cast<double>(x.tp) / denom : 0.0;
  }
  return sum / static_cast<double>(t.size());
}

inline double f_measure(const CentroidModel& model, const LabeledSamples& evaluation) {
  return macro_f1(evaluation.labels, model.predict(evaluation.samples));
}

}  // namespace sildrift
