#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "sildrift/metrics.hpp"
#include "sildrift/types.hpp"

namespace sildrift {

/// Ascending per-sample Silhouette values of one class, with their arithmetic mean.
class SilhouetteCurve {
 public:
  SilhouetteCurve() = default;

  /// Sorts `values` ascending and computes the mean.
  SilhouetteCurve(ClassId class_id, std::vector<double> values)
      : class_id_(class_id), values_(std::move(values)) {
    std::sort(values_.begin(), values_.end());
    mean_ = mean_of(values_);
  }

  ClassId class_id() const noexcept { return class_id_; }
  const std::vector<double>& values() const noexcept { return values_; }
  double mean() const noexcept { return mean_; }
  std::size_t count() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }

  bool operator==(const SilhouetteCurve&) const = default;

  static double mean_of(const std::vector<double>& v) {
    if (v.empty()) return 0.0;
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
  }

 private:
  ClassId class_id_ = 0;
  std::vector<double> values_;
  double mean_ = 0.0;
};

/// Per-class baseline curves learnt from the training set.
struct BaselineProfile {
  static constexpr int kSchemaVersion = 1;

  int schema_version = kSchemaVersion;
  DistanceMetric metric = DistanceMetric::Euclidean;
  std::size_t dimension = 0;
  std::size_t n_train = 0;
  std::vector<SilhouetteCurve> curves;  // one per class, ascending class id

  const SilhouetteCurve* find(ClassId c) const {
    auto it = std::lower_bound(curves.begin(), curves.end(), c,
                               [](const SilhouetteCurve& k, ClassId id) { return k.class_id() < id; });
    return it != curves.end() && it->class_id() == c ? &*it : nullptr;
  }

  std::vector<ClassId> classes() const {
    std::vector<ClassId> out;
    out.reserve(curves.size());
    for (const auto& c : curves) out.push_back(c.class_id());
    return out;
  }

  std::size_t class_count(ClassId c) const {
    const auto* curve = find(c);
    return curve ? curve->count() : 0;
  }

  bool operator==(const BaselineProfile&) const = default;
};

/// Groups per-sample Silhouette values by label into one ascending curve per class.
inline std::vector<SilhouetteCurve> curves_by_class(std::span<const double> values,
                                                    std::span<const ClassId> labels) {
  std::map<ClassId, std::vector<double>> grouped;
  for (std::size_t i = 0; i < values.size(); ++i) grouped[labels[i]].push_back(values[i]);
  std::vector<SilhouetteCurve> out;
  out.reserve(grouped.size());
  for (auto& [c, v] : grouped) out.emplace_back(c, std::move(v));
  return out;
}

inline BaselineProfile build_profile(const LabeledSamples& training, DistanceMetric metric) {
  const auto values = silhouette(training.samples, training.labels, metric);
  BaselineProfile p;
  p.metric = metric;
  p.dimension = training.samples.dimension();
  p.n_train = training.size();
  p.curves = curves_by_class(values, training.labels);
  return p;
}

/// Keeps the points at indices floor(i * (count - 1) / (target - 1)), i = 0..target-1.
/// Both endpoints survive and the result stays sorted; the mean is recomputed.
inline SilhouetteCurve downsample(const SilhouetteCurve& curve, std::size_t target) {
  const std::size_t count = curve.count();
  if (target < 2) throw DomainError("downsample: target must be at least 2");
  if (target > count)
    throw DomainError("downsample: target " + std::to_string(target) + " exceeds curve size " +
                      std::to_string(count));
  std::vector<double> kept;
  kept.reserve(target);
  for (std::size_t i = 0; i < target; ++i) kept.push_back(curve.values()[i * (count - 1) / (target - 1)]);
  return SilhouetteCurve(curve.class_id(), std::move(kept));
}

/// Brings two curves to a common cardinality by down-sampling the larger one.
inline std::pair<SilhouetteCurve, SilhouetteCurve> align(const SilhouetteCurve& a,
                                                         const SilhouetteCurve& b) {
  if (a.count() < 2 || b.count() < 2) throw ClassTooSmallError();
  if (a.count() > b.count()) return {downsample(a, b.count()), b};
  if (b.count() > a.count()) return {a, downsample(b, a.count())};
  return {a, b};
}

}  // namespace sildrift
