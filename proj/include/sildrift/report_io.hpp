#pragma once

#include <filesystem>
#include <fstream>
#include <ostream>
#include <string>

#include <json.hpp>

#include "sildrift/dataset_io.hpp"
#include "sildrift/degradation.hpp"
#include "sildrift/profile.hpp"

namespace sildrift {

inline nlohmann::json report_to_json(const DegradationReport& r) {
  nlohmann::json classes = nlohmann::json::array();
  for (const auto& c : r.classes) {
    classes.push_back({{"class_id", c.class_id},
                       {"n_c", c.n_c},
                       {"weight", c.weight},
                       {"maape_raw", c.maape_raw},
                       {"maape_norm", c.maape_norm},
                       {"alpha", c.alpha},
                       {"deg", c.deg},
                       {"baseline_mean", c.baseline_mean},
                       {"current_mean", c.current_mean},
                       {"status", std::string(to_string(c.status))}});
  }
  nlohmann::json j = {{"step_id", r.step_id},
                      {"window_size", r.window_size},
                      {"classes", std::move(classes)},
                      {"overall", r.overall},
                      {"max_class_deg", r.max_class_deg},
                      {"indeterminate", r.indeterminate},
                      {"rebuild_recommended", r.rebuild_recommended}};
  if (!r.reason.empty()) j["reason"] = r.reason;
  if (!r.trigger.empty()) j["trigger"] = r.trigger;
  if (!r.trigger_classes.empty()) j["trigger_classes"] = r.trigger_classes;
  return j;
}

/// Two-column CSV (rank, silhouette) of an ascending curve; rank starts at 0.
inline void write_curve_csv(std::ostream& out, const SilhouetteCurve& curve) {
  out << "rank,silhouette\n";
  for (std::size_t i = 0; i < curve.count(); ++i)
    out << i << ',' << format_double(curve.values()[i]) << '\n';
}

inline void write_curve_csv(const std::filesystem::path& path, const SilhouetteCurve& curve) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  write_curve_csv(out, curve);
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

}  // namespace sildrift
