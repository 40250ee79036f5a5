#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "sildrift/classifier.hpp"
#include "sildrift/degradation.hpp"
#include "sildrift/profile.hpp"
#include "sildrift/types.hpp"
#include "sildrift/windowing.hpp"

namespace sildrift {

/// Isotropic Gaussian classes. Without explicit centers, centers are drawn uniformly from
/// [-center_box, center_box]^d and redrawn until every pair is at least
/// min_separation * stddev apart.
struct BlobSpec {
  std::size_t k = 4;
  std::size_t n_per_class = 2000;
  std::size_t dimension = 10;
  double stddev = 1.0;
  double center_box = 10.0;
  double min_separation = 6.0;
  std::uint64_t seed = 42;
  std::vector<FeatureVector> centers;

  void validate() const {
    if (k < 2) throw DomainError("blob spec: k must be at least 2");
    if (n_per_class < 1) throw DomainError("blob spec: n_per_class must be at least 1");
    if (dimension < 1) throw DomainError("blob spec: dimension must be at least 1");
    if (!(stddev > 0.0) || !std::isfinite(stddev)) throw DomainError("blob spec: stddev must be > 0");
    if (!(center_box > 0.0)) throw DomainError("blob spec: center_box must be > 0");
    if (!centers.empty()) {
      if (centers.size() != k) throw DomainError("blob spec: need one center per class");
      for (const auto& c : centers)
        if (c.size() != dimension) throw DimensionMismatchError(dimension, c.size());
    }
  }
};

namespace detail {

inline std::vector<FeatureVector> draw_centers(const BlobSpec& spec, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coord(-spec.center_box, spec.center_box);
  const double min_d = spec.min_separation * spec.stddev;
  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::vector<FeatureVector> centers(spec.k, FeatureVector(spec.dimension));
    for (auto& c : centers)
      for (double& x : c) x = coord(rng);
    bool ok = true;
    for (std::size_t i = 0; i < spec.k && ok; ++i)
      for (std::size_t j = 0; j < i && ok; ++j)
        ok = distance(centers[i], centers[j], DistanceMetric::Euclidean) >= min_d;
    if (ok) return centers;
  }
  throw DomainError("blob spec: could not place centers with the requested separation");
}

}  // namespace detail

struct BlobData {
  LabeledSamples data;  // class-major: all of class 0, then class 1, ...
  std::vector<FeatureVector> centers;
};

inline BlobData gen_blobs(const BlobSpec& spec) {
  spec.validate();
  std::mt19937_64 rng(spec.seed);
  BlobData out;
  out.centers = spec.centers.empty() ? detail::draw_centers(spec, rng) : spec.centers;
  out.data.samples = Samples(spec.dimension);
  out.data.samples.reserve(spec.k * spec.n_per_class);
  std::normal_distribution<double> noise(0.0, spec.stddev);
  FeatureVector row(spec.dimension);
  for (std::size_t c = 0; c < spec.k; ++c) {
    for (std::size_t i = 0; i < spec.n_per_class; ++i) {
      for (std::size_t j = 0; j < spec.dimension; ++j) row[j] = out.centers[c][j] + noise(rng);
      out.data.push_back(row, static_cast<ClassId>(c));
    }
  }
  return out;
}

/// Evaluation schedule. Pre-drift steps add, for each known class in turn, the first half and
/// then the rest of its held-out test portion. Drift steps then add every unknown class in
/// cumulative `unknown_increment` fractions until all of it is present.
struct TimelineSpec {
  std::vector<ClassId> known{0, 1};
  std::vector<ClassId> unknown{2};
  double train_fraction = 0.60;
  double unknown_increment = 0.20;
  bool inject_drift = true;
  std::uint64_t seed = 42;
};

struct TimelineStep {
  std::vector<std::size_t> added;    // dataset indices new at this step, in arrival order
  std::vector<std::size_t> members;  // cumulative test set, previous members first
  bool drift = false;
};

struct Timeline {
  std::vector<std::size_t> train;  // ascending dataset indices
  std::vector<TimelineStep> steps;

  std::size_t pre_drift_steps() const {
    return static_cast<std::size_t>(
        std::count_if(steps.begin(), steps.end(), [](const auto& s) { return !s.drift; }));
  }
};

inline std::size_t drift_step_count(double increment) {
  return static_cast<std::size_t>(std::ceil(1.0 / increment - 1e-9));
}

inline Timeline build_timeline(std::span<const ClassId> labels, const TimelineSpec& spec) {
  auto in_unit = [](double v) { return v > 0.0 && v <= 1.0; };
  if (!in_unit(spec.train_fraction) || !in_unit(spec.unknown_increment))
    throw DomainError("timeline: fractions must be in (0, 1]");
  if (spec.known.size() < 2) throw DomainError("timeline: at least 2 known classes are required");

  std::mt19937_64 rng(spec.seed);
  auto shuffled_members = [&](ClassId c) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == c) idx.push_back(i);
    if (idx.empty()) throw DomainError("timeline: class " + std::to_string(c) + " has no samples");
    std::shuffle(idx.begin(), idx.end(), rng);
    return idx;
  };

  Timeline t;
  std::vector<std::vector<std::size_t>> test_parts;
  for (ClassId c : spec.known) {
    auto idx = shuffled_members(c);
    const auto n_train = static_cast<std::size_t>(
        std::floor(spec.train_fraction * static_cast<double>(idx.size()) + 1e-9));
    if (n_train == 0 || n_train == idx.size())
      throw DomainError("timeline: stratified split leaves class " + std::to_string(c) +
                        " without training or test samples");
    t.train.insert(t.train.end(), idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n_train));
    test_parts.emplace_back(idx.begin() + static_cast<std::ptrdiff_t>(n_train), idx.end());
  }
  std::sort(t.train.begin(), t.train.end());

  std::vector<std::size_t> members;
  auto add_step = [&](std::vector<std::size_t> added, bool drift) {
    members.insert(members.end(), added.begin(), added.end());
    t.steps.push_back({std::move(added), members, drift});
  };

  for (const auto& part : test_parts) {
    const auto half = static_cast<std::ptrdiff_t>(part.size() / 2);
    add_step({part.begin(), part.begin() + half}, false);
    add_step({part.begin() + half, part.end()}, false);
  }

  std::vector<std::vector<std::size_t>> unknown_parts;
  if (spec.inject_drift)
    for (ClassId c : spec.unknown) unknown_parts.push_back(shuffled_members(c));

  const std::size_t n_drift = drift_step_count(spec.unknown_increment);
  std::vector<std::size_t> taken(unknown_parts.size(), 0);
  for (std::size_t step = 1; step <= n_drift; ++step) {
    const double frac = std::min(1.0, static_cast<double>(step) * spec.unknown_increment);
    std::vector<std::size_t> added;
    for (std::size_t u = 0; u < unknown_parts.size(); ++u) {
      const auto& part = unknown_parts[u];
      const std::size_t upto =
          step == n_drift ? part.size()
                          : std::min(part.size(), static_cast<std::size_t>(std::floor(
                                                      frac * static_cast<double>(part.size()) + 1e-9)));
      if (upto == taken[u])
        throw DomainError("timeline: unknown-class increment rounds to zero samples");
      added.insert(added.end(), part.begin() + static_cast<std::ptrdiff_t>(taken[u]),
                   part.begin() + static_cast<std::ptrdiff_t>(upto));
      taken[u] = upto;
    }
    add_step(std::move(added), true);
  }
  return t;
}

inline LabeledSamples subset(const LabeledSamples& data, std::span<const std::size_t> indices) {
  LabeledSamples out;
  out.samples = Samples(data.samples.dimension());
  out.samples.reserve(indices.size());
  for (std::size_t i : indices) out.push_back(data.samples[i], data.labels[i]);
  return out;
}

/// How each timeline step reaches the trailing window.
enum class StreamOrder {
  // Each step's cumulative test set is replayed into a fresh window in a seeded interleaved
  // order, so the window holds the latest N_train of a mix of known and unknown samples.
  Interleave,
  // Only the samples new at each step are pushed, after everything before them, into one
  // persistent window.
  Append,
};

struct ExperimentSpec {
  BlobSpec blobs;
  TimelineSpec timeline;
  StreamOrder order = StreamOrder::Interleave;
};

struct ExperimentResult {
  BaselineProfile baseline;
  CentroidModel model;
  double test_f1 = 0.0;  // macro-F1 on the known-class test portion
  std::vector<DegradationReport> reports;
  std::vector<std::vector<SilhouetteCurve>> current_curves;  // per step
  std::vector<bool> drift;                                   // per step

  double mean_overall(bool drifted) const {
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < reports.size(); ++i)
      if (drift[i] == drifted) {
        sum += reports[i].overall;
        ++n;
      }
    return n == 0 ? 0.0 : sum / static_cast<double>(n);
  }
  double pre_drift_mean() const { return mean_overall(false); }
  double post_drift_mean() const { return mean_overall(true); }
};

/// Trains the classifier and baseline on the training split, then replays the timeline through
/// the trailing window and scores every step. Deterministic under fixed seeds.
inline ExperimentResult run_experiment(const ExperimentSpec& spec, const MonitorConfig& cfg) {
  cfg.validate();
  const BlobData blobs = gen_blobs(spec.blobs);
  const LabeledSamples& data = blobs.data;
  const Timeline timeline = build_timeline(data.labels, spec.timeline);

  const LabeledSamples training = subset(data, timeline.train);
  ExperimentResult res;
  res.model = CentroidModel::train(training, cfg.metric);
  res.baseline = build_profile(training, cfg.metric);
  const std::vector<ClassId> assigned = res.model.predict(data.samples);

  const std::size_t last_pre = timeline.pre_drift_steps();
  if (last_pre > 0) {
    const auto known_test = subset(data, timeline.steps[last_pre - 1].members);
    res.test_f1 = f_measure(res.model, known_test);
  }

  const auto classes = res.baseline.classes();
  const std::size_t capacity = res.baseline.n_train;
  TrailingWindow persistent(capacity, classes, data.samples.dimension());

  for (std::size_t s = 0; s < timeline.steps.size(); ++s) {
    const TimelineStep& step = timeline.steps[s];
    Evaluation ev;
    if (spec.order == StreamOrder::Append) {
      for (std::size_t i : step.added) persistent.push(data.samples[i], assigned[i]);
      ev = evaluate_window(res.baseline, persistent.snapshot(), cfg, s + 1);
    } else {
      std::vector<std::size_t> order = step.members;
      std::mt19937_64 rng(spec.timeline.seed + 0x9E3779B97F4A7C15ULL * (s + 1));
      std::shuffle(order.begin(), order.end(), rng);
      TrailingWindow window(capacity, classes, data.samples.dimension());
      for (std::size_t i : order) window.push(data.samples[i], assigned[i]);
      ev = evaluate_window(res.baseline, window.snapshot(), cfg, s + 1);
    }
    ev.report.trigger = "timeline";
    res.reports.push_back(std::move(ev.report));
    res.current_curves.push_back(std::move(ev.current_curves));
    res.drift.push_back(step.drift);
  }
  return res;
}

}  // namespace sildrift
