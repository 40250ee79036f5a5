#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "sildrift/profile.hpp"

namespace sildrift {

// Baseline profile document:
//   {schema_version, metric, dimension, n_train,
//    classes: [{class_id, count, mean, values: [...]}]}
// Doubles are written in shortest round-trip form, so load(save(p)) == p bit for bit.

inline nlohmann::json profile_to_json(const BaselineProfile& p) {
  nlohmann::json classes = nlohmann::json::array();
  for (const auto& c : p.curves) {
    classes.push_back({{"class_id", c.class_id()},
                       {"count", c.count()},
                       {"mean", c.mean()},
                       {"values", c.values()}});
  }
  return {{"schema_version", p.schema_version},
          {"metric", std::string(to_string(p.metric))},
          {"dimension", p.dimension},
          {"n_train", p.n_train},
          {"classes", std::move(classes)}};
}

inline BaselineProfile profile_from_json(const nlohmann::json& j) {
  try {
    BaselineProfile p;
    p.schema_version = j.at("schema_version").get<int>();
    if (p.schema_version != BaselineProfile::kSchemaVersion)
      throw FormatError("unsupported profile schema_version " + std::to_string(p.schema_version));
    p.metric = parse_metric(j.at("metric").get<std::string>());
    p.dimension = j.at("dimension").get<std::size_t>();
    p.n_train = j.at("n_train").get<std::size_t>();
    if (p.dimension == 0) throw FormatError("profile dimension must be positive");

    std::size_t total = 0;
    for (const auto& jc : j.at("classes")) {
      auto values = jc.at("values").get<std::vector<double>>();
      const auto count = jc.at("count").get<std::size_t>();
      if (count == 0 || count != values.size())
        throw FormatError("profile class count does not match its curve");
      if (!std::is_sorted(values.begin(), values.end()))
        throw FormatError("profile curve is not sorted");
      if (values.front() < -1.0 || values.back() > 1.0)
        throw FormatError("profile curve value outside [-1, 1]");
      SilhouetteCurve curve(jc.at("class_id").get<ClassId>(), std::move(values));
      if (std::abs(curve.mean() - jc.at("mean").get<double>()) > 1e-12)
        throw FormatError("profile class mean does not match its curve");
      if (!p.curves.empty() && curve.class_id() <= p.curves.back().class_id())
        throw FormatError("profile classes must be unique and ascending");
      total += count;
      p.curves.push_back(std::move(curve));
    }
    if (p.curves.size() < 2) throw FormatError("profile needs at least 2 classes");
    if (total != p.n_train) throw FormatError("profile class counts do not sum to n_train");
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed profile: ") + e.what());
  } catch (const DomainError& e) {
    throw FormatError(std::string("malformed profile: ") + e.what());
  }
}

inline void save_profile(const BaselineProfile& p, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  out << profile_to_json(p).dump(2) << '\n';
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

inline BaselineProfile load_profile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError("malformed profile '" + path.string() + "': " + e.what());
  }
  return profile_from_json(j);
}

}  // namespace sildrift
