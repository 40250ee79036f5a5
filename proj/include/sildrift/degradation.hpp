#pragma once

#include <algorithm>
#include <cstddef>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "sildrift/metrics.hpp"
#include "sildrift/profile.hpp"
#include "sildrift/windowing.hpp"

namespace sildrift {

enum class ClassStatus {
  Ok,
  NoData,         // no window sample was assigned to the class
  TooSmall,       // fewer than 2 points on one of the curves
  Indeterminate,  // the window as a whole has no defined Silhouette
};

inline std::string_view to_string(ClassStatus s) {
  switch (s) {
    case ClassStatus::Ok: return "ok";
    case ClassStatus::NoData: return "no_data";
    case ClassStatus::TooSmall: return "too_small";
    case ClassStatus::Indeterminate: return "indeterminate";
  }
  return "unknown";
}

struct ClassDegradation {
  ClassId class_id = 0;
  std::size_t n_c = 0;
  double weight = 0.0;      // n_c / N
  double maape_raw = 0.0;   // [0, pi/2]
  double maape_norm = 0.0;  // maape_raw / (pi/2)
  int alpha = 1;
  double deg = 0.0;  // alpha * maape_norm * weight
  double baseline_mean = 0.0;
  double current_mean = 0.0;
  ClassStatus status = ClassStatus::Ok;

  bool operator==(const ClassDegradation&) const = default;
};

struct DegradationReport {
  std::size_t step_id = 0;
  std::size_t window_size = 0;
  std::vector<ClassDegradation> classes;  // ascending class id, one per class of the model
  double overall = 0.0;
  double max_class_deg = 0.0;
  bool indeterminate = false;
  std::string reason;
  bool rebuild_recommended = false;
  std::string trigger;
  std::vector<ClassId> trigger_classes;

  bool operator==(const DegradationReport&) const = default;
};

/// Signed degradation of one class. The baseline curve is the "actual" series of the MAAPE
/// (its values are the denominators) and the current curve the "forecast". Curves must already
/// be aligned unless the class received no samples.
inline ClassDegradation class_degradation(const SilhouetteCurve& baseline,
                                          const SilhouetteCurve& current, std::size_t n_c,
                                          std::size_t n) {
  if (n == 0) throw DomainError("class_degradation: window size must be positive");
  if (n_c > n) throw DomainError("class_degradation: n_c exceeds window size");

  ClassDegradation d;
  d.class_id = baseline.class_id();
  d.n_c = n_c;
  d.weight = static_cast<double>(n_c) / static_cast<double>(n);
  d.baseline_mean = baseline.mean();
  d.current_mean = current.mean();

  if (n_c == 0) {
    d.status = ClassStatus::NoData;
    return d;
  }
  if (current.count() < 2 || baseline.count() < 2) {
    d.status = ClassStatus::TooSmall;
    return d;
  }
  if (baseline.count() != current.count())
    throw DomainError("class_degradation: curves are not aligned (" +
                      std::to_string(baseline.count()) + " vs " + std::to_string(current.count()) +
                      " points)");

  d.maape_raw = maape(baseline.values(), current.values());
  d.maape_norm = d.maape_raw / (std::numbers::pi / 2.0);
  d.alpha = baseline.mean() >= current.mean() ? 1 : -1;
  d.deg = d.alpha * d.maape_norm * d.weight;
  return d;
}

/// Sum of per-class degradations, accumulated in ascending class id.
inline double overall_degradation(std::span<const ClassDegradation> per_class) {
  std::vector<const ClassDegradation*> sorted;
  sorted.reserve(per_class.size());
  for (const auto& c : per_class) sorted.push_back(&c);
  std::sort(sorted.begin(), sorted.end(),
            [](const auto* a, const auto* b) { return a->class_id < b->class_id; });
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i]->class_id == sorted[i - 1]->class_id)
      throw DomainError("overall_degradation: duplicate class id " +
                        std::to_string(sorted[i]->class_id));
  double total = 0.0;
  for (const auto* c : sorted) total += c->deg;
  return total;
}

inline bool recommend_rebuild(const DegradationReport& report, const MonitorConfig& cfg) {
  if (report.overall >= cfg.overall_rebuild_threshold) return true;
  return std::any_of(report.classes.begin(), report.classes.end(), [&](const ClassDegradation& c) {
    return c.deg >= cfg.class_rebuild_threshold;
  });
}

struct Evaluation {
  DegradationReport report;
  std::vector<SilhouetteCurve> current_curves;  // un-aligned, one per class present in the window
};

/// Scores a window snapshot against the baseline. Silhouette is computed over the window
/// samples only, using their assigned classes.
inline Evaluation evaluate_window(const BaselineProfile& profile, const WindowSnapshot& window,
                                  const MonitorConfig& cfg, std::size_t step_id = 0) {
  Evaluation ev;
  DegradationReport& r = ev.report;
  r.step_id = step_id;
  r.window_size = window.size();

  if (!window.empty() && window.samples.dimension() != profile.dimension)
    throw DimensionMismatchError(profile.dimension, window.samples.dimension());
  ClassCounts counts;
  for (ClassId c : window.assigned) {
    if (!profile.find(c)) throw DomainError("window holds unknown class id " + std::to_string(c));
    ++counts[c];
  }
  auto count_of = [&](ClassId c) {
    const auto it = counts.find(c);
    return it == counts.end() ? std::size_t{0} : it->second;
  };
  std::size_t present = 0;
  for (const auto& curve : profile.curves) present += count_of(curve.class_id()) > 0 ? 1 : 0;

  if (window.size() < 2 || present < 2) {
    r.indeterminate = true;
    r.reason = window.empty() ? "empty window" : "single-class window: silhouette undefined";
    for (const auto& base : profile.curves) {
      ClassDegradation d;
      d.class_id = base.class_id();
      d.n_c = count_of(base.class_id());
      d.weight = window.empty() ? 0.0
                                : static_cast<double>(d.n_c) / static_cast<double>(window.size());
      d.baseline_mean = base.mean();
      d.status = ClassStatus::Indeterminate;
      r.classes.push_back(d);
    }
    return ev;
  }

  const auto values = silhouette(window.samples, window.assigned, profile.metric);
  ev.current_curves = curves_by_class(values, window.assigned);

  for (const auto& base : profile.curves) {
    const std::size_t n_c = count_of(base.class_id());
    const auto it = std::find_if(ev.current_curves.begin(), ev.current_curves.end(),
                                 [&](const auto& c) { return c.class_id() == base.class_id(); });
    const SilhouetteCurve current = it == ev.current_curves.end()
                                        ? SilhouetteCurve(base.class_id(), {})
                                        : *it;
    if (n_c >= 2 && base.count() >= 2) {
      const auto [b, c] = align(base, current);
      r.classes.push_back(class_degradation(b, c, n_c, window.size()));
    } else {
      r.classes.push_back(class_degradation(base, current, n_c, window.size()));
    }
  }

  r.overall = overall_degradation(r.classes);
  r.max_class_deg = std::max_element(r.classes.begin(), r.classes.end(), [](const auto& a,
                                                                            const auto& b) {
                      return a.deg < b.deg;
                    })->deg;
  r.rebuild_recommended = recommend_rebuild(r, cfg);
  return ev;
}

}  // namespace sildrift
