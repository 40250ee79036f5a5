#pragma once

#include <charconv>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "sildrift/types.hpp"

namespace sildrift {

// Dataset CSV: header row with feature columns f0..f{d-1} plus optional "label" (true class)
// and "assigned" (predicted class) columns, in any order. No quoting.

struct Dataset {
  Samples samples;
  std::optional<std::vector<ClassId>> labels;
  std::optional<std::vector<ClassId>> assigned;

  std::size_t size() const noexcept { return samples.size(); }

  LabeledSamples labeled() const {
    if (!labels) throw FormatError("dataset has no 'label' column");
    return {samples, *labels};
  }
};

/// Shortest decimal form that parses back to the same double.
inline std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace detail {

inline std::vector<std::string_view> split_csv_line(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

inline double parse_real(std::string_view cell, std::size_t line_no) {
  cell = trim(cell);
  double v = 0.0;
  const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (res.ec != std::errc{} || res.ptr != cell.data() + cell.size() || !std::isfinite(v))
    throw FormatError("line " + std::to_string(line_no) + ": '" + std::string(cell) +
                      "' is not a finite real");
  return v;
}

inline ClassId parse_class(std::string_view cell, std::size_t line_no) {
  cell = trim(cell);
  ClassId v = 0;
  const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (res.ec != std::errc{} || res.ptr != cell.data() + cell.size() || v < 0)
    throw FormatError("line " + std::to_string(line_no) + ": '" + std::string(cell) +
                      "' is not a non-negative class id");
  return v;
}

}  // namespace detail

inline Dataset read_dataset(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError("dataset: missing header row");
  const auto header = detail::split_csv_line(line);

  std::vector<int> feature_of(header.size(), -1);
  int label_col = -1, assigned_col = -1;
  std::size_t dim = 0;
  for (std::size_t c = 0; c < header.size(); ++c) {
    const auto name = detail::trim(header[c]);
    if (name == "label") {
      if (label_col >= 0) throw FormatError("dataset: duplicate 'label' column");
      label_col = static_cast<int>(c);
    } else if (name == "assigned") {
      if (assigned_col >= 0) throw FormatError("dataset: duplicate 'assigned' column");
      assigned_col = static_cast<int>(c);
    } else if (name.size() > 1 && name.front() == 'f') {
      int idx = -1;
      const auto res = std::from_chars(name.data() + 1, name.data() + name.size(), idx);
      if (res.ec != std::errc{} || res.ptr != name.data() + name.size() || idx < 0)
        throw FormatError("dataset: unexpected column '" + std::string(name) + "'");
      feature_of[c] = idx;
      ++dim;
    } else {
      throw FormatError("dataset: unexpected column '" + std::string(name) + "'");
    }
  }
  if (dim == 0) throw FormatError("dataset: no feature columns");
  std::vector<bool> seen(dim, false);
  for (int idx : feature_of) {
    if (idx < 0) continue;
    if (static_cast<std::size_t>(idx) >= dim || seen[static_cast<std::size_t>(idx)])
      throw FormatError("dataset: feature columns must be exactly f0..f" + std::to_string(dim - 1));
    seen[static_cast<std::size_t>(idx)] = true;
  }

  Dataset ds{Samples(dim), std::nullopt, std::nullopt};
  if (label_col >= 0) ds.labels.emplace();
  if (assigned_col >= 0) ds.assigned.emplace();

  std::vector<double> row(dim);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty() || line == "\r") continue;
    const auto cells = detail::split_csv_line(line);
    if (cells.size() != header.size())
      throw FormatError("line " + std::to_string(line_no) + ": expected " +
                        std::to_string(header.size()) + " cells, got " +
                        std::to_string(cells.size()));
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (feature_of[c] >= 0)
        row[static_cast<std::size_t>(feature_of[c])] = detail::parse_real(cells[c], line_no);
      else if (static_cast<int>(c) == label_col)
        ds.labels->push_back(detail::parse_class(cells[c], line_no));
      else
        ds.assigned->push_back(detail::parse_class(cells[c], line_no));
    }
    ds.samples.push_back(row);
  }
  return ds;
}

inline Dataset read_dataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  try {
    return read_dataset(in);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

inline void write_dataset(std::ostream& out, const Samples& samples,
                          const std::vector<ClassId>* labels = nullptr,
                          const std::vector<ClassId>* assigned = nullptr) {
  for (std::size_t j = 0; j < samples.dimension(); ++j) out << (j ? "," : "") << 'f' << j;
  if (labels) out << ",label";
  if (assigned) out << ",assigned";
  out << '\n';
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto row = samples[i];
    for (std::size_t j = 0; j < row.size(); ++j) out << (j ? "," : "") << format_double(row[j]);
    if (labels) out << ',' << (*labels)[i];
    if (assigned) out << ',' << (*assigned)[i];
    out << '\n';
  }
}

inline void write_dataset(const std::filesystem::path& path, const Samples& samples,
                          const std::vector<ClassId>* labels = nullptr,
                          const std::vector<ClassId>* assigned = nullptr) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  write_dataset(out, samples, labels, assigned);
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

}  // namespace sildrift
