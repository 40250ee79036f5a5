#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sildrift/types.hpp"

namespace sildrift {

enum class DistanceMetric { Euclidean, Cosine, Jaccard };

inline std::string_view to_string(DistanceMetric m) {
  switch (m) {
    case DistanceMetric::Euclidean: return "euclidean";
    case DistanceMetric::Cosine: return "cosine";
    case DistanceMetric::Jaccard: return "jaccard";
  }
  return "unknown";
}

inline DistanceMetric parse_metric(std::string_view name) {
  if (name == "euclidean") return DistanceMetric::Euclidean;
  if (name == "cosine") return DistanceMetric::Cosine;
  if (name == "jaccard") return DistanceMetric::Jaccard;
  throw DomainError("unknown distance metric '" + std::string(name) + "'");
}

namespace detail {

inline void require_binary(std::span<const double> v) {
  for (double x : v)
    if (x != 0.0 && x != 1.0) throw DomainError("jaccard distance requires 0/1 vectors");
}

inline double squared_norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

inline std::vector<double> unit_vector(std::span<const double> v) {
  const double norm = std::sqrt(squared_norm(v));
  if (norm == 0.0) throw DomainError("cosine distance is undefined for a zero vector");
  std::vector<double> out(v.begin(), v.end());
  for (double& x : out) x /= norm;
  return out;
}

inline double euclidean(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

// 1 - cos(a, b) == |a/|a| - b/|b||^2 / 2 for unit inputs; exact zero on identical vectors.
inline double cosine_unit(std::span<const double> ua, std::span<const double> ub) {
  double s = 0.0;
  for (std::size_t i = 0; i < ua.size(); ++i) {
    const double d = ua[i] - ub[i];
    s += d * d;
  }
  return std::clamp(0.5 * s, 0.0, 2.0);
}

inline double jaccard(std::span<const double> a, std::span<const double> b) {
  std::size_t inter = 0, uni = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const bool x = a[i] == 1.0, y = b[i] == 1.0;
    inter += (x && y) ? 1 : 0;
    uni += (x || y) ? 1 : 0;
  }
  if (uni == 0) return 0.0;  // two empty sets are identical
  return 1.0 - static_cast<double>(inter) / static_cast<double>(uni);
}

// Rows pre-validated (and pre-normalized for cosine) so pairwise evaluation is check-free.
class PreparedRows {
 public:
  PreparedRows(const Samples& samples, DistanceMetric metric) : metric_(metric), rows_(&samples) {
    if (metric == DistanceMetric::Cosine) {
      unit_ = Samples(samples.dimension());
      unit_.reserve(samples.size());
      for (std::size_t i = 0; i < samples.size(); ++i) unit_.push_back(unit_vector(samples[i]));
      rows_ = &unit_;
    } else if (metric == DistanceMetric::Jaccard) {
      for (std::size_t i = 0; i < samples.size(); ++i) require_binary(samples[i]);
    }
  }
  PreparedRows(const PreparedRows&) = delete;
  PreparedRows& operator=(const PreparedRows&) = delete;

  double operator()(std::size_t i, std::size_t j) const {
    const Samples& rows = *rows_;
    switch (metric_) {
      case DistanceMetric::Euclidean: return euclidean(rows[i], rows[j]);
      case DistanceMetric::Cosine: return cosine_unit(rows[i], rows[j]);
      case DistanceMetric::Jaccard: return jaccard(rows[i], rows[j]);
    }
    return 0.0;
  }

 private:
  DistanceMetric metric_;
  const Samples* rows_;
  Samples unit_;
};

}  // namespace detail

/// Distance between two feature vectors. Cosine distance is 1 - cosine similarity, in [0, 2].
inline double distance(std::span<const double> a, std::span<const double> b, DistanceMetric m) {
  if (a.size() != b.size()) throw DimensionMismatchError(a.size(), b.size());
  switch (m) {
    case DistanceMetric::Euclidean:
      return detail::euclidean(a, b);
    case DistanceMetric::Cosine:
      return detail::cosine_unit(detail::unit_vector(a), detail::unit_vector(b));
    case DistanceMetric::Jaccard:
      detail::require_binary(a);
      detail::require_binary(b);
      return detail::jaccard(a, b);
  }
  return 0.0;
}

/// Per-sample Silhouette values s(i) = (b(i) - a(i)) / max(a(i), b(i)), aligned to the input
/// order. a(i) is the mean distance to the other members of i's class, b(i) the smallest mean
/// distance to any other class. Members of singleton classes get 0.
///
/// Distances are evaluated on demand, one row at a time, and every per-class sum accumulates in
/// ascending sample index, so results are bit-reproducible.
inline std::vector<double> silhouette(const Samples& samples, std::span<const ClassId> labels,
                                      DistanceMetric metric) {
  const std::size_t n = samples.size();
  if (labels.size() != n)
    throw DomainError("silhouette: " + std::to_string(labels.size()) + " labels for " +
                      std::to_string(n) + " samples");

  std::vector<ClassId> classes(labels.begin(), labels.end());
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
  if (n < 2 || classes.size() < 2) throw DegenerateLabelingError();

  std::vector<std::size_t> dense(n);
  std::vector<std::size_t> counts(classes.size(), 0);
  for (std::size_t i = 0; i < n; ++i) {
    dense[i] = static_cast<std::size_t>(
        std::lower_bound(classes.begin(), classes.end(), labels[i]) - classes.begin());
    ++counts[dense[i]];
  }

  const detail::PreparedRows dist(samples, metric);
  std::vector<double> out(n, 0.0);
  std::vector<double> sums(classes.size());
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t own = dense[i];
    if (counts[own] == 1) continue;

    std::fill(sums.begin(), sums.end(), 0.0);
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) sums[dense[j]] += dist(i, j);

    const double a = sums[own] / static_cast<double>(counts[own] - 1);
    double b = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < classes.size(); ++k)
      if (k != own) b = std::min(b, sums[k] / static_cast<double>(counts[k]));

    const double denom = std::max(a, b);
    out[i] = denom > 0.0 ? (b - a) / denom : 0.0;
  }
  return out;
}

/// Mean Arc-tangent Absolute Percentage Error over paired points, in [0, pi/2].
/// A zero actual contributes pi/2 unless the forecast is also zero.
inline double maape(std::span<const double> actual, std::span<const double> forecast) {
  if (actual.empty()) throw DomainError("maape: empty input");
  if (actual.size() != forecast.size())
    throw DomainError("maape: length mismatch (" + std::to_string(actual.size()) + " vs " +
                      std::to_string(forecast.size()) + ")");
  double sum = 0.0;
  for (std::size_t i = 0; i < actual.size(); ++i) {
    const double a = actual[i], f = forecast[i];
    if (!std::isfinite(a) || !std::isfinite(f)) throw DomainError("maape: non-finite input");
    if (a == 0.0)
      sum += f == 0.0 ? 0.0 : std::numbers::pi / 2.0;
    else
      sum += std::atan(std::abs((a - f) / a));
  }
  return sum / static_cast<double>(actual.size());
}

}  // namespace sildrift
