#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sildrift/sildrift.hpp"

namespace sildrift::cli {

namespace fs = std::filesystem;

struct ConfigFlags {
  double eval_trigger_pct = 0.20;
  double overall_threshold = 0.10;
  double class_threshold = 0.05;
  std::size_t min_window = 50;
  std::string metric;

  void attach(CLI::App* app, bool with_trigger) {
    if (with_trigger) {
      app->add_option("--eval-trigger-pct", eval_trigger_pct,
                      "Per-class window growth that triggers self-evaluation")
          ->capture_default_str();
      app->add_option("--min-window", min_window, "Smallest window that may be evaluated")
          ->capture_default_str();
    }
    app->add_option("--overall-threshold", overall_threshold,
                    "Overall degradation that recommends a rebuild")
        ->capture_default_str();
    app->add_option("--class-threshold", class_threshold,
                    "Single-class degradation that recommends a rebuild")
        ->capture_default_str();
    app->add_option("--metric", metric, "Distance metric: euclidean, cosine or jaccard")
        ->check(CLI::IsMember({"euclidean", "cosine", "jaccard"}));
  }

  MonitorConfig to_config(DistanceMetric fallback) const {
    MonitorConfig cfg;
    cfg.eval_trigger_pct = eval_trigger_pct;
    cfg.overall_rebuild_threshold = overall_threshold;
    cfg.class_rebuild_threshold = class_threshold;
    cfg.min_window = min_window;
    cfg.metric = metric.empty() ? fallback : parse_metric(metric);
    cfg.validate();
    return cfg;
  }
};

inline std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  return out;
}

inline void write_json_file(const fs::path& path, const nlohmann::json& j) {
  auto out = open_out(path);
  out << j.dump(2) << '\n';
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

inline std::string step_name(std::size_t step) {
  std::ostringstream s;
  s << 't' << std::setw(2) << std::setfill('0') << step;
  return s.str();
}

/// Assigned classes for a batch: its "assigned" column, or predictions of a nearest-centroid
/// model trained on `train_csv`.
inline std::vector<ClassId> assigned_classes(const Dataset& batch, const std::string& train_csv,
                                             DistanceMetric metric) {
  if (batch.assigned) return *batch.assigned;
  if (train_csv.empty())
    throw Error("batch has no 'assigned' column; pass --train to classify it");
  const auto model = CentroidModel::train(read_dataset(train_csv).labeled(), metric);
  return model.predict(batch.samples);
}

inline void check_metric(const ConfigFlags& flags, const BaselineProfile& profile) {
  if (!flags.metric.empty() && parse_metric(flags.metric) != profile.metric)
    throw Error("--metric " + flags.metric + " does not match the profile metric " +
                std::string(to_string(profile.metric)));
}

inline int cmd_gen(std::size_t k, std::size_t n, std::size_t d, double stddev, double box,
                   std::uint64_t seed, const std::string& out_path, std::ostream& out) {
  BlobSpec spec;
  spec.k = k;
  spec.n_per_class = n;
  spec.dimension = d;
  spec.stddev = stddev;
  spec.center_box = box;
  spec.seed = seed;
  const auto blobs = gen_blobs(spec);
  if (out_path == "-") {
    write_dataset(out, blobs.data.samples, &blobs.data.labels);
  } else {
    write_dataset(out_path, blobs.data.samples, &blobs.data.labels);
  }
  return 0;
}

inline int cmd_baseline(const std::string& train_csv, const std::string& metric,
                        const std::string& out_path) {
  const auto training = read_dataset(train_csv).labeled();
  save_profile(build_profile(training, parse_metric(metric)), out_path);
  return 0;
}

inline int cmd_evaluate(const std::string& profile_path, const std::string& batch_csv,
                        const std::string& train_csv, std::size_t step,
                        const std::string& curves_dir, const ConfigFlags& flags,
                        std::ostream& out) {
  const auto profile = load_profile(profile_path);
  check_metric(flags, profile);
  const auto cfg = flags.to_config(profile.metric);
  const auto batch = read_dataset(batch_csv);
  if (batch.samples.dimension() != profile.dimension)
    throw DimensionMismatchError(profile.dimension, batch.samples.dimension());
  const auto assigned = assigned_classes(batch, train_csv, profile.metric);

  // A single evaluation sees the latest N_train samples of the batch.
  TrailingWindow window(profile.n_train, profile.classes(), profile.dimension);
  for (std::size_t i = 0; i < batch.size(); ++i) window.push(batch.samples[i], assigned[i]);
  auto ev = evaluate_window(profile, window.snapshot(), cfg, step);
  ev.report.trigger = "manual";

  if (!curves_dir.empty()) {
    fs::create_directories(curves_dir);
    for (const auto& c : profile.curves)
      write_curve_csv(fs::path(curves_dir) / ("baseline_class_" + std::to_string(c.class_id()) + ".csv"), c);
    for (const auto& c : ev.current_curves)
      write_curve_csv(fs::path(curves_dir) / ("current_class_" + std::to_string(c.class_id()) + ".csv"), c);
  }
  out << report_to_json(ev.report).dump(2) << '\n';
  return 0;
}

inline int cmd_monitor(const std::string& profile_path, const std::vector<std::string>& batches,
                       const std::string& train_csv, const ConfigFlags& flags, std::ostream& out) {
  const auto profile = load_profile(profile_path);
  check_metric(flags, profile);
  const auto cfg = flags.to_config(profile.metric);
  std::optional<CentroidModel> model;
  Monitor monitor(profile, cfg);
  for (std::size_t b = 0; b < batches.size(); ++b) {
    const auto batch = read_dataset(batches[b]);
    if (batch.size() == 0) continue;
    std::vector<ClassId> assigned;
    if (batch.assigned) {
      assigned = *batch.assigned;
    } else {
      if (train_csv.empty())
        throw Error(batches[b] + " has no 'assigned' column; pass --train to classify it");
      if (!model) model = CentroidModel::train(read_dataset(train_csv).labeled(), profile.metric);
      assigned = model->predict(batch.samples);
    }
    if (auto ev = monitor.ingest(batch.samples, assigned)) {
      auto j = report_to_json(ev->report);
      j["batch"] = batches[b];
      out << j.dump() << '\n';
    }
  }
  return 0;
}

struct SimulateFlags {
  std::size_t k = 4;
  std::size_t n = 2000;
  std::size_t d = 10;
  double stddev = 1.0;
  double box = 10.0;
  std::uint64_t seed = 42;
  std::optional<std::uint64_t> split_seed;
  std::vector<ClassId> known{0, 1};
  std::vector<ClassId> unknown{2};
  double train_fraction = 0.60;
  double increment = 0.20;
  bool no_drift = false;
  std::string order = "interleave";
  std::string out_dir;
};

inline int cmd_simulate(const SimulateFlags& sf, const ConfigFlags& flags, std::ostream& out) {
  ExperimentSpec spec;
  spec.blobs.k = sf.k;
  spec.blobs.n_per_class = sf.n;
  spec.blobs.dimension = sf.d;
  spec.blobs.stddev = sf.stddev;
  spec.blobs.center_box = sf.box;
  spec.blobs.seed = sf.seed;
  spec.timeline.known = sf.known;
  spec.timeline.unknown = sf.unknown;
  spec.timeline.train_fraction = sf.train_fraction;
  spec.timeline.unknown_increment = sf.increment;
  spec.timeline.inject_drift = !sf.no_drift;
  spec.timeline.seed = sf.split_seed.value_or(sf.seed);
  spec.order = sf.order == "append" ? StreamOrder::Append : StreamOrder::Interleave;
  const auto cfg = flags.to_config(DistanceMetric::Euclidean);

  const auto res = run_experiment(spec, cfg);

  const fs::path dir(sf.out_dir);
  fs::create_directories(dir / "curves");
  save_profile(res.baseline, dir / "baseline.json");
  for (const auto& c : res.baseline.curves)
    write_curve_csv(dir / "curves" / ("baseline_class_" + std::to_string(c.class_id()) + ".csv"), c);

  nlohmann::json reports = nlohmann::json::array();
  nlohmann::json overall = nlohmann::json::array();
  for (std::size_t s = 0; s < res.reports.size(); ++s) {
    const auto name = step_name(s + 1);
    auto j = report_to_json(res.reports[s]);
    j["drift"] = static_cast<bool>(res.drift[s]);
    write_json_file(dir / ("report_" + name + ".json"), j);
    for (const auto& c : res.current_curves[s])
      write_curve_csv(dir / "curves" / (name + "_class_" + std::to_string(c.class_id()) + ".csv"), c);
    overall.push_back(res.reports[s].overall);
    reports.push_back(std::move(j));
  }

  const double pre = res.pre_drift_mean(), post = res.post_drift_mean();
  nlohmann::json summary = {{"seed", sf.seed},
                            {"split_seed", spec.timeline.seed},
                            {"order", sf.order},
                            {"unknown", sf.no_drift ? std::vector<ClassId>{} : sf.unknown},
                            {"n_train", res.baseline.n_train},
                            {"test_f1", res.test_f1},
                            {"overall", overall},
                            {"pre_drift_mean", pre},
                            {"post_drift_mean", post},
                            {"reports", reports}};
  write_json_file(dir / "summary.json", summary);
  out << summary.dump(2) << '\n';
  return 0;
}

/// Entry point shared by the executable and the tests. Reports go to `out`, diagnostics to `err`.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Class-based concept-drift detection from Silhouette curve degradation", "sildrift"};
  app.require_subcommand(1);

  std::size_t gk = 4, gn = 2000, gd = 10;
  double gstd = 1.0, gbox = 10.0;
  std::uint64_t gseed = 42;
  std::string gout;
  auto* gen = app.add_subcommand("gen", "Generate a seeded Gaussian-blob dataset CSV");
  gen->add_option("--k", gk, "Number of classes")->check(CLI::Range(2, 1 << 20))->capture_default_str();
  gen->add_option("--n", gn, "Samples per class")->check(CLI::PositiveNumber)->capture_default_str();
  gen->add_option("--d", gd, "Feature dimension")->check(CLI::PositiveNumber)->capture_default_str();
  gen->add_option("--std", gstd, "Per-class standard deviation")->check(CLI::PositiveNumber)->capture_default_str();
  gen->add_option("--box", gbox, "Half-width of the center hypercube")->check(CLI::PositiveNumber)->capture_default_str();
  gen->add_option("--seed", gseed, "Random seed")->capture_default_str();
  gen->add_option("--out", gout, "Output CSV path ('-' for standard output)")->required();

  std::string btrain, bmetric = "euclidean", bout;
  auto* baseline = app.add_subcommand("baseline", "Build a baseline profile from labeled training data");
  baseline->add_option("--train", btrain, "Training CSV with a 'label' column")->required();
  baseline->add_option("--metric", bmetric, "Distance metric")
      ->check(CLI::IsMember({"euclidean", "cosine", "jaccard"}))
      ->capture_default_str();
  baseline->add_option("--out", bout, "Output profile JSON")->required();

  std::string eprofile, ebatch, etrain, ecurves;
  std::size_t estep = 0;
  ConfigFlags eflags;
  auto* evaluate = app.add_subcommand("evaluate", "Score one batch against a baseline profile");
  evaluate->add_option("--profile", eprofile, "Baseline profile JSON")->required();
  evaluate->add_option("--batch", ebatch, "Batch CSV (with 'assigned', or use --train)")->required();
  evaluate->add_option("--train", etrain, "Training CSV for the built-in classifier");
  evaluate->add_option("--step", estep, "Step id recorded in the report")->capture_default_str();
  evaluate->add_option("--curves-dir", ecurves, "Directory for baseline/current curve CSVs");
  eflags.attach(evaluate, false);

  std::string mprofile, mtrain;
  std::vector<std::string> mbatches;
  ConfigFlags mflags;
  auto* monitor = app.add_subcommand("monitor", "Stream batches through the trailing window");
  monitor->add_option("--profile", mprofile, "Baseline profile JSON")->required();
  monitor->add_option("--train", mtrain, "Training CSV for the built-in classifier");
  monitor->add_option("batches", mbatches, "Batch CSV files, processed in order")->required();
  mflags.attach(monitor, true);

  SimulateFlags sflags;
  std::uint64_t split_seed = 0;
  ConfigFlags simflags;
  auto* simulate = app.add_subcommand("simulate", "Run the synthetic drift-injection experiment");
  simulate->add_option("--k", sflags.k, "Number of classes")->capture_default_str();
  simulate->add_option("--n", sflags.n, "Samples per class")->check(CLI::PositiveNumber)->capture_default_str();
  simulate->add_option("--d", sflags.d, "Feature dimension")->check(CLI::PositiveNumber)->capture_default_str();
  simulate->add_option("--std", sflags.stddev, "Per-class standard deviation")->check(CLI::PositiveNumber)->capture_default_str();
  simulate->add_option("--box", sflags.box, "Half-width of the center hypercube")->check(CLI::PositiveNumber)->capture_default_str();
  simulate->add_option("--seed", sflags.seed, "Data seed")->capture_default_str();
  auto* split_opt = simulate->add_option("--split-seed", split_seed, "Split/stream seed (defaults to --seed)");
  simulate->add_option("--known", sflags.known, "Classes used for training")->capture_default_str();
  simulate->add_option("--unknown", sflags.unknown, "Classes injected as drift")->capture_default_str();
  simulate->add_option("--train-fraction", sflags.train_fraction, "Stratified training fraction")->capture_default_str();
  simulate->add_option("--increment", sflags.increment, "Unknown-class fraction added per drift step")->capture_default_str();
  simulate->add_flag("--no-drift", sflags.no_drift, "Control run without unknown-class samples");
  simulate->add_option("--order", sflags.order, "Stream order: interleave or append")
      ->check(CLI::IsMember({"interleave", "append"}))
      ->capture_default_str();
  simulate->add_option("--out", sflags.out_dir, "Output directory")->required();
  simflags.attach(simulate, false);

  std::vector<std::string> args;
  for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
  try {
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*gen) return cmd_gen(gk, gn, gd, gstd, gbox, gseed, gout, out);
    if (*baseline) return cmd_baseline(btrain, bmetric, bout);
    if (*evaluate) return cmd_evaluate(eprofile, ebatch, etrain, estep, ecurves, eflags, out);
    if (*monitor) return cmd_monitor(mprofile, mbatches, mtrain, mflags, out);
    if (*simulate) {
      if (split_opt->count() > 0) sflags.split_seed = split_seed;
      return cmd_simulate(sflags, simflags, out);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace sildrift::cli
