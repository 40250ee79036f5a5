#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>

#include "sildrift/degradation.hpp"
#include "sildrift/profile.hpp"
#include "sildrift/windowing.hpp"

namespace sildrift {

/// Streaming self-evaluation: batches of classified samples enter the trailing window, and a
/// report is produced whenever the growth trigger fires.
class Monitor {
 public:
  Monitor(BaselineProfile profile, MonitorConfig cfg)
      : profile_(std::move(profile)),
        cfg_(cfg),
        window_(profile_.n_train, profile_.classes(), profile_.dimension) {
    cfg_.validate();
    for (ClassId c : profile_.classes()) last_eval_counts_[c] = 0;
  }

  /// Pushes one batch; returns an evaluation if the trigger fired afterwards.
  std::optional<Evaluation> ingest(const Samples& batch, std::span<const ClassId> assigned) {
    if (batch.size() != assigned.size())
      throw DomainError("monitor: batch has " + std::to_string(batch.size()) + " samples but " +
                        std::to_string(assigned.size()) + " labels");
    if (batch.empty()) return std::nullopt;
    if (batch.dimension() != window_.dimension())
      throw DimensionMismatchError(window_.dimension(), batch.dimension());
    for (ClassId c : assigned)
      if (!window_.counts().contains(c))
        throw DomainError("monitor: unknown class id " + std::to_string(c));
    ++batches_;
    for (std::size_t i = 0; i < batch.size(); ++i) window_.push(batch[i], assigned[i]);

    if (!should_evaluate(window_, last_eval_counts_, cfg_)) return std::nullopt;
    auto fired = triggering_classes(window_.counts(), last_eval_counts_, cfg_);
    Evaluation ev = evaluate_window(profile_, window_.snapshot(), cfg_, ++evaluations_);
    ev.report.trigger = "growth";
    ev.report.trigger_classes = std::move(fired);
    last_eval_counts_ = window_.counts();
    return ev;
  }

  const TrailingWindow& window() const noexcept { return window_; }
  const ClassCounts& last_eval_counts() const noexcept { return last_eval_counts_; }
  std::size_t evaluations() const noexcept { return evaluations_; }
  std::size_t batches() const noexcept { return batches_; }

 private:
  BaselineProfile profile_;
  MonitorConfig cfg_;
  TrailingWindow window_;
  ClassCounts last_eval_counts_;
  std::size_t evaluations_ = 0;
  std::size_t batches_ = 0;
};

}  // namespace sildrift
