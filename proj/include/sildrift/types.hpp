#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sildrift {

using ClassId = int;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Fewer than two distinct labels; silhouette is undefined.
struct DegenerateLabelingError : Error {
  DegenerateLabelingError() : Error("degenerate labeling: at least 2 distinct classes are required") {}
};

struct DimensionMismatchError : Error {
  DimensionMismatchError(std::size_t expected, std::size_t got)
      : Error("dimension mismatch: expected " + std::to_string(expected) + ", got " +
              std::to_string(got)) {}
};

// Input outside the domain of an operation (non-binary Jaccard input, zero vector under cosine, ...).
struct DomainError : Error {
  using Error::Error;
};

struct ClassTooSmallError : Error {
  ClassTooSmallError() : Error("class too small to compare: a curve needs at least 2 points") {}
};

// Malformed or unsupported file contents.
struct FormatError : Error {
  using Error::Error;
};

using FeatureVector = std::vector<double>;

/// Row-major set of equal-dimension, finite feature vectors.
class Samples {
 public:
  Samples() = default;
  explicit Samples(std::size_t dimension) : dimension_(dimension) {
    if (dimension == 0) throw DomainError("feature dimension must be at least 1");
  }

  std::size_t dimension() const noexcept { return dimension_; }
  std::size_t size() const noexcept { return dimension_ == 0 ? 0 : values_.size() / dimension_; }
  bool empty() const noexcept { return values_.empty(); }

  std::span<const double> operator[](std::size_t i) const {
    return {values_.data() + i * dimension_, dimension_};
  }

  void push_back(std::span<const double> row) {
    if (dimension_ == 0) {
      if (row.empty()) throw DomainError("feature dimension must be at least 1");
      dimension_ = row.size();
    }
    if (row.size() != dimension_) throw DimensionMismatchError(dimension_, row.size());
    for (double v : row)
      if (!std::isfinite(v)) throw DomainError("feature values must be finite");
    values_.insert(values_.end(), row.begin(), row.end());
  }

  void reserve(std::size_t rows) { values_.reserve(rows * dimension_); }

  bool operator==(const Samples&) const = default;

 private:
  std::size_t dimension_ = 0;
  std::vector<double> values_;
};

/// Samples with ground-truth labels (used for training and synthetic data).
struct LabeledSamples {
  Samples samples;
  std::vector<ClassId> labels;

  std::size_t size() const noexcept { return labels.size(); }

  void push_back(std::span<const double> row, ClassId label) {
    samples.push_back(row);
    labels.push_back(label);
  }

  bool operator==(const LabeledSamples&) const = default;
};

}  // namespace sildrift
