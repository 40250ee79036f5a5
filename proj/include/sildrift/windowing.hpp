#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <span>
#include <vector>

#include "sildrift/metrics.hpp"
#include "sildrift/types.hpp"

namespace sildrift {

using ClassCounts = std::map<ClassId, std::size_t>;

/// Self-evaluation trigger and rebuild thresholds, all fractions in (0, 1].
struct MonitorConfig {
  double eval_trigger_pct = 0.20;
  double overall_rebuild_threshold = 0.10;
  double class_rebuild_threshold = 0.05;
  std::size_t min_window = 50;
  DistanceMetric metric = DistanceMetric::Euclidean;

  void validate() const {
    auto in_unit = [](double v) { return v > 0.0 && v <= 1.0; };
    if (!in_unit(eval_trigger_pct)) throw DomainError("eval_trigger_pct must be in (0, 1]");
    if (!in_unit(overall_rebuild_threshold))
      throw DomainError("overall_rebuild_threshold must be in (0, 1]");
    if (!in_unit(class_rebuild_threshold))
      throw DomainError("class_rebuild_threshold must be in (0, 1]");
    if (min_window < 2) throw DomainError("min_window must be at least 2");
  }
};

/// Immutable copy of a window's contents, oldest first.
struct WindowSnapshot {
  Samples samples;
  std::vector<ClassId> assigned;
  std::vector<std::uint64_t> sequence;  // push order of each entry, starting at 0
  ClassCounts counts;

  std::size_t size() const noexcept { return assigned.size(); }
  bool empty() const noexcept { return assigned.empty(); }
};

/// FIFO buffer of the latest classified samples, capped at `capacity` (N_train).
class TrailingWindow {
 public:
  TrailingWindow(std::size_t capacity, std::span<const ClassId> classes, std::size_t dimension)
      : capacity_(capacity), dimension_(dimension) {
    if (capacity == 0) throw DomainError("window capacity must be positive");
    if (dimension == 0) throw DomainError("window dimension must be positive");
    for (ClassId c : classes) counts_[c] = 0;
    if (counts_.empty()) throw DomainError("window needs a non-empty label set");
  }

  void push(std::span<const double> sample, ClassId assigned) {
    auto it = counts_.find(assigned);
    if (it == counts_.end()) throw DomainError("unknown class id " + std::to_string(assigned));
    if (sample.size() != dimension_) throw DimensionMismatchError(dimension_, sample.size());
    for (double v : sample)
      if (!std::isfinite(v)) throw DomainError("feature values must be finite");

    if (entries_.size() == capacity_) {
      --counts_[entries_.front().assigned];
      entries_.pop_front();
    }
    entries_.push_back({FeatureVector(sample.begin(), sample.end()), assigned, pushed_++});
    ++it->second;
  }

  std::size_t size() const noexcept { return entries_.size(); }
  std::size_t capacity() const noexcept { return capacity_; }
  std::size_t dimension() const noexcept { return dimension_; }
  std::uint64_t total_pushed() const noexcept { return pushed_; }
  const ClassCounts& counts() const noexcept { return counts_; }

  WindowSnapshot snapshot() const {
    WindowSnapshot s{Samples(dimension_), {}, {}, counts_};
    s.samples.reserve(entries_.size());
    s.assigned.reserve(entries_.size());
    s.sequence.reserve(entries_.size());
    for (const auto& e : entries_) {
      s.samples.push_back(e.values);
      s.assigned.push_back(e.assigned);
      s.sequence.push_back(e.sequence);
    }
    return s;
  }

 private:
  struct Entry {
    FeatureVector values;
    ClassId assigned;
    std::uint64_t sequence;
  };

  std::size_t capacity_;
  std::size_t dimension_;
  std::deque<Entry> entries_;
  ClassCounts counts_;
  std::uint64_t pushed_ = 0;
};

/// Classes whose window count grew by at least eval_trigger_pct since the previous evaluation,
/// or that appear for the first time.
inline std::vector<ClassId> triggering_classes(const ClassCounts& now, const ClassCounts& previous,
                                               const MonitorConfig& cfg) {
  std::vector<ClassId> out;
  for (const auto& [c, n] : now) {
    const auto it = previous.find(c);
    const std::size_t prev = it == previous.end() ? 0 : it->second;
    if (prev == 0) {
      if (n >= 1) out.push_back(c);
      continue;
    }
    if (n <= prev) continue;
    // Relative slack absorbs representation error of the fraction itself (0.2 is not exact).
    const double growth = static_cast<double>(n - prev) / static_cast<double>(prev);
    if (growth >= cfg.eval_trigger_pct * (1.0 - 1e-12)) out.push_back(c);
  }
  return out;
}

inline bool should_evaluate(const ClassCounts& now, std::size_t window_length,
                            const ClassCounts& previous, const MonitorConfig& cfg) {
  if (window_length < cfg.min_window) return false;
  return !triggering_classes(now, previous, cfg).empty();
}

inline bool should_evaluate(const TrailingWindow& window, const ClassCounts& previous,
                            const MonitorConfig& cfg) {
  return should_evaluate(window.counts(), window.size(), previous, cfg);
}

}  // namespace sildrift
