// CSV loading, preprocessing, and dataset plumbing.
//
// CSV dialect: comma-separated, optional single header row, optional label
// column (any position; -1 means last). Feature cells must parse fully as
// doubles; label cells may be arbitrary tokens and are mapped to ids
// 0..c-1 in order of first appearance.
#pragma once

#include <charconv>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "scfs/errors.hpp"
#include "scfs/types.hpp"

namespace scfs {

struct Dataset {
  DataMatrix X;
  std::optional<LabelVector> y;
  std::string name;
  int classes = 0;                      // 0 when no labels
  std::vector<int> informative_indices; // synthetic data only, sorted
};

enum class Preprocess { ShiftNonneg, MinMax, None };

inline Preprocess parse_preprocess(const std::string& s) {
  if (s == "shift-nonneg") return Preprocess::ShiftNonneg;
  if (s == "minmax") return Preprocess::MinMax;
  if (s == "none") return Preprocess::None;
  throw InvalidInputError("unknown preprocess mode: " + s);
}

inline std::string to_string(Preprocess mode) {
  switch (mode) {
    case Preprocess::ShiftNonneg: return "shift-nonneg";
    case Preprocess::MinMax: return "minmax";
    default: return "none";
  }
}

namespace detail {

inline std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  return std::string(s.substr(b, e - b));
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(',', start);
    if (pos == std::string::npos) {
      out.push_back(trim(std::string_view(line).substr(start)));
      break;
    }
    out.push_back(trim(std::string_view(line).substr(start, pos - start)));
    start = pos + 1;
  }
  return out;
}

inline bool parse_double(const std::string& cell, double& out) {
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  const auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && !cell.empty();
}

}  // namespace detail

// True when the first row contains at least one non-numeric field.
inline bool csv_has_header(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path, 0, 0);
  std::string line;
  if (!std::getline(in, line)) throw ParseError(path + " is empty", 0, 0);
  double ignored;
  for (const std::string& cell : detail::split_csv_line(line))
    if (!detail::parse_double(cell, ignored)) return true;
  return false;
}

// Loads a rectangular CSV. `label_column` is 0-based; -1 selects the last
// column; nullopt loads features only. Row/column numbers in errors are
// 1-based and count the header row.
inline Dataset load_csv(const std::string& path, bool has_header,
                        std::optional<int> label_column) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path, 0, 0);

  std::vector<std::vector<std::string>> rows;
  std::string line;
  std::size_t lineno = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") {
      if (in.peek() == std::ifstream::traits_type::eof()) break;  // trailing newline
      throw ParseError(path + ": empty row", lineno, 0);
    }
    std::vector<std::string> cells = detail::split_csv_line(line);
    if (has_header && lineno == 1) {
      header = std::move(cells);
      continue;
    }
    rows.push_back(std::move(cells));
  }
  if (rows.empty()) throw ParseError(path + ": no data rows", lineno, 0);

  const std::size_t width = has_header ? header.size() : rows.front().size();
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != width) {
      const std::size_t file_row = r + 1 + (has_header ? 1 : 0);
      throw ParseError(path + ": row has " + std::to_string(rows[r].size()) +
                           " fields, expected " + std::to_string(width),
                       file_row, 0);
    }
  }

  int label_idx = -1;
  if (label_column) {
    label_idx = *label_column < 0 ? static_cast<int>(width) + *label_column : *label_column;
    if (label_idx < 0 || label_idx >= static_cast<int>(width))
      throw InvalidInputError("load_csv: label column out of range");
  }
  const std::size_t p = width - (label_column ? 1 : 0);
  if (p == 0) throw InvalidInputError("load_csv: no feature columns");

  Dataset out;
  out.X.values.resize(static_cast<Index>(rows.size()), static_cast<Index>(p));
  std::vector<int> label_ids;
  std::unordered_map<std::string, int> label_dict;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::size_t j = 0;
    for (std::size_t c = 0; c < width; ++c) {
      const std::size_t file_row = r + 1 + (has_header ? 1 : 0);
      if (static_cast<int>(c) == label_idx) {
        const auto it =
            label_dict.emplace(rows[r][c], static_cast<int>(label_dict.size())).first;
        label_ids.push_back(it->second);
        continue;
      }
      double v;
      if (!detail::parse_double(rows[r][c], v))
        throw ParseError(path + ": cannot parse '" + rows[r][c] + "' as a number",
                         file_row, c + 1);
      out.X.values(static_cast<Index>(r), static_cast<Index>(j++)) = v;
    }
  }

  if (has_header) {
    for (std::size_t c = 0; c < width; ++c)
      if (static_cast<int>(c) != label_idx) out.X.feature_names.push_back(header[c]);
  }
  if (label_column) {
    out.y = LabelVector::from(std::move(label_ids));
    out.classes = out.y->k;
  }
  out.name = std::filesystem::path(path).stem().string();
  out.X.validate();
  return out;
}

// Column-wise preprocessing. shift-nonneg subtracts each column's minimum
// when negative; minmax rescales each column to [0, 1] (constant columns
// become zero); none only verifies nonnegativity.
inline DataMatrix preprocess(const DataMatrix& data, Preprocess mode) {
  data.validate();
  DataMatrix out = data;
  switch (mode) {
    case Preprocess::ShiftNonneg:
      for (Index j = 0; j < out.features(); ++j) {
        const double lo = out.values.col(j).minCoeff();
        if (lo < 0.0) out.values.col(j).array() -= lo;
      }
      break;
    case Preprocess::MinMax:
      for (Index j = 0; j < out.features(); ++j) {
        const double lo = out.values.col(j).minCoeff();
        const double hi = out.values.col(j).maxCoeff();
        if (hi > lo)
          out.values.col(j) = (out.values.col(j).array() - lo) / (hi - lo);
        else
          out.values.col(j).setZero();
      }
      break;
    case Preprocess::None:
      if (out.values.minCoeff() < 0.0)
        throw InvalidInputError(
            "preprocess: data has negative entries; 'none' requires nonnegative input");
      break;
  }
  return out;
}

// Writes features (and the label column last, when present) as CSV with a
// header row. Doubles are printed shortest-round-trip.
inline void write_dataset_csv(const Dataset& dataset, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  const Index n = dataset.X.samples();
  const Index p = dataset.X.features();
  for (Index j = 0; j < p; ++j) {
    if (j) out << ',';
    out << (dataset.X.feature_names.empty() ? "f" + std::to_string(j)
                                            : dataset.X.feature_names[j]);
  }
  if (dataset.y) out << ",label";
  out << '\n';
  char buf[64];
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < p; ++j) {
      if (j) out << ',';
      const auto res = std::to_chars(buf, buf + sizeof buf, dataset.X.values(i, j));
      out.write(buf, res.ptr - buf);
    }
    if (dataset.y) out << ',' << dataset.y->labels[i];
    out << '\n';
  }
  if (!out) throw IoError("write failed for " + path);
}

}  // namespace scfs
