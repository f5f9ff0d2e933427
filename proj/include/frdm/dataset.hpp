#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "frdm/errors.hpp"

namespace frdm {

enum class FeatureKind { Nominal, Real };

// Load-time options for delimited text input. The first row is a header of
// feature names, one object per subsequent row. The decision column is
// selected by name; when empty, the last column is used. Column kinds are
// inferred (a column is real iff every cell parses as a finite number) and
// may be overridden per column.
struct CsvSchema {
  char delimiter = ',';
  std::string decision_column;
  std::map<std::string, FeatureKind> kind_overrides;
};

// Cached per-feature statistics for real features.
struct FeatureStats {
  double min = 0.0;
  double max = 0.0;
  double stddev_population = 0.0;
  double stddev_sample = 0.0;
  bool constant = false;

  double range() const { return max - min; }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline std::optional<double> parse_real(std::string_view s) {
  if (s.empty()) return std::nullopt;
  double value = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, value, std::chars_format::general);
  if (ec != std::errc{} || ptr != last) return std::nullopt;
  if (!std::isfinite(value)) return std::nullopt;
  return value;
}

inline std::vector<std::string_view> split(std::string_view line, char delimiter) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find(delimiter, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

}  // namespace detail

// An immutable decision system: objects by conditional features plus one
// decision feature. Real features store parsed doubles, nominal features
// store dictionary codes; the decision is always nominal. Row and column
// order of the source are preserved. Safe for concurrent reads.
class DecisionSystem {
public:
  DecisionSystem() = default;

  int object_count() const { return object_count_; }
  int feature_count() const { return static_cast<int>(feature_names_.size()); }
  int label_count() const { return static_cast<int>(labels_.size()); }

  const std::vector<std::string>& feature_names() const { return feature_names_; }
  const std::string& feature_name(int f) const { return feature_names_[static_cast<std::size_t>(f)]; }
  const std::string& decision_name() const { return decision_name_; }
  const std::vector<std::string>& labels() const { return labels_; }

  FeatureKind kind(int f) const { return kinds_[static_cast<std::size_t>(f)]; }

  int feature_index(std::string_view name) const {
    for (std::size_t f = 0; f < feature_names_.size(); ++f)
      if (feature_names_[f] == name) return static_cast<int>(f);
    return -1;
  }

  double real_value(int f, int o) const { return real_cols_[static_cast<std::size_t>(f)][static_cast<std::size_t>(o)]; }
  int nominal_code(int f, int o) const { return nominal_cols_[static_cast<std::size_t>(f)][static_cast<std::size_t>(o)]; }

  const std::string& nominal_text(int f, int o) const {
    return nominal_dicts_[static_cast<std::size_t>(f)][static_cast<std::size_t>(nominal_code(f, o))];
  }

  // Source cell as text; real values render with the shortest round-trip
  // representation.
  std::string cell_text(int f, int o) const {
    if (kind(f) == FeatureKind::Real) {
      char buf[64];
      auto res = std::to_chars(buf, buf + sizeof(buf), real_value(f, o));
      internal_check(res.ec == std::errc(), "cell_text: value does not format");
      return std::string(buf, res.ptr);
    }
    return nominal_text(f, o);
  }

  bool values_equal(int f, int i, int j) const {
    if (kind(f) == FeatureKind::Real) return real_value(f, i) == real_value(f, j);
    return nominal_code(f, i) == nominal_code(f, j);
  }

  const FeatureStats& stats(int f) const { return stats_[static_cast<std::size_t>(f)]; }

  int decision(int o) const { return decision_[static_cast<std::size_t>(o)]; }
  const std::string& decision_text(int o) const { return labels_[static_cast<std::size_t>(decision(o))]; }

  static DecisionSystem from_text(const std::string& text, const CsvSchema& schema);

private:
  int object_count_ = 0;
  std::vector<std::string> feature_names_;
  std::vector<FeatureKind> kinds_;
  std::vector<std::vector<double>> real_cols_;
  std::vector<std::vector<int>> nominal_cols_;
  std::vector<std::vector<std::string>> nominal_dicts_;
  std::vector<FeatureStats> stats_;
  std::vector<int> decision_;
  std::vector<std::string> labels_;
  std::string decision_name_;
};

inline DecisionSystem DecisionSystem::from_text(const std::string& text, const CsvSchema& schema) {
  std::vector<std::string_view> lines;
  {
    std::string_view rest = text;
    while (!rest.empty()) {
      std::size_t pos = rest.find('\n');
      std::string_view line = (pos == std::string_view::npos) ? rest : rest.substr(0, pos);
      if (pos == std::string_view::npos)
        rest = {};
      else
        rest.remove_prefix(pos + 1);
      if (!detail::trim(line).empty()) lines.push_back(line);
    }
  }
  if (lines.size() < 3) throw InputError("fewer than 2 rows of data");

  std::vector<std::string> header;
  for (auto cell : detail::split(lines[0], schema.delimiter)) header.emplace_back(detail::trim(cell));

  const int column_count = static_cast<int>(header.size());
  if (column_count < 2) throw InputError("need at least one conditional feature plus a decision column");
  {
    std::unordered_map<std::string, int> seen;
    for (int cidx = 0; cidx < column_count; ++cidx) {
      auto [it, inserted] = seen.emplace(header[static_cast<std::size_t>(cidx)], cidx);
      if (!inserted)
        throw InputError("duplicate feature name '" + header[static_cast<std::size_t>(cidx)] + "' (columns " +
                         std::to_string(it->second + 1) + " and " + std::to_string(cidx + 1) + ")");
    }
  }

  int decision_col = column_count - 1;
  if (!schema.decision_column.empty()) {
    auto it = std::find(header.begin(), header.end(), schema.decision_column);
    if (it == header.end()) throw InputError("decision column '" + schema.decision_column + "' not found in header");
    decision_col = static_cast<int>(it - header.begin());
  }
  for (const auto& [name, kind] : schema.kind_overrides) {
    (void)kind;
    if (std::find(header.begin(), header.end(), name) == header.end())
      throw InputError("kind override names unknown column '" + name + "'");
  }

  const int row_count = static_cast<int>(lines.size()) - 1;
  std::vector<std::vector<std::string>> cells(static_cast<std::size_t>(column_count));
  for (auto& col : cells) col.reserve(static_cast<std::size_t>(row_count));
  for (int r = 0; r < row_count; ++r) {
    auto fields = detail::split(lines[static_cast<std::size_t>(r) + 1], schema.delimiter);
    if (static_cast<int>(fields.size()) != column_count)
      throw InputError("row " + std::to_string(r + 2) + ": expected " + std::to_string(column_count) +
                       " cells, found " + std::to_string(fields.size()));
    for (int cidx = 0; cidx < column_count; ++cidx) {
      std::string_view cell = detail::trim(fields[static_cast<std::size_t>(cidx)]);
      if (cell.empty())
        throw InputError("row " + std::to_string(r + 2) + ", column " + std::to_string(cidx + 1) + " ('" +
                         header[static_cast<std::size_t>(cidx)] + "'): missing cell");
      cells[static_cast<std::size_t>(cidx)].emplace_back(cell);
    }
  }

  DecisionSystem ds;
  ds.object_count_ = row_count;
  ds.decision_name_ = header[static_cast<std::size_t>(decision_col)];

  for (int cidx = 0; cidx < column_count; ++cidx) {
    const auto& col = cells[static_cast<std::size_t>(cidx)];
    const std::string& name = header[static_cast<std::size_t>(cidx)];
    if (cidx == decision_col) {
      // The decision feature is always nominal, whatever its textual form.
      std::unordered_map<std::string, int> dict;
      for (const auto& v : col) {
        auto [it, inserted] = dict.emplace(v, static_cast<int>(ds.labels_.size()));
        if (inserted) ds.labels_.push_back(v);
        ds.decision_.push_back(it->second);
      }
      continue;
    }

    FeatureKind kind;
    auto override_it = schema.kind_overrides.find(name);
    if (override_it != schema.kind_overrides.end()) {
      kind = override_it->second;
      if (kind == FeatureKind::Real) {
        for (int r = 0; r < row_count; ++r) {
          if (!detail::parse_real(col[static_cast<std::size_t>(r)]))
            throw InputError("row " + std::to_string(r + 2) + ", column " + std::to_string(cidx + 1) + " ('" + name +
                             "'): non-numeric value '" + col[static_cast<std::size_t>(r)] + "' in a real column");
        }
      }
    } else {
      kind = FeatureKind::Real;
      for (const auto& v : col) {
        if (!detail::parse_real(v)) {
          kind = FeatureKind::Nominal;
          break;
        }
      }
    }

    ds.feature_names_.push_back(name);
    ds.kinds_.push_back(kind);
    ds.real_cols_.emplace_back();
    ds.nominal_cols_.emplace_back();
    ds.nominal_dicts_.emplace_back();
    ds.stats_.emplace_back();

    if (kind == FeatureKind::Real) {
      auto& values = ds.real_cols_.back();
      values.reserve(col.size());
      for (const auto& v : col) values.push_back(*detail::parse_real(v));
      FeatureStats st;
      st.min = *std::min_element(values.begin(), values.end());
      st.max = *std::max_element(values.begin(), values.end());
      st.constant = (st.min == st.max);
      double mean = 0.0;
      for (double v : values) mean += v;
      mean /= static_cast<double>(values.size());
      double ss = 0.0;
      for (double v : values) ss += (v - mean) * (v - mean);
      st.stddev_population = std::sqrt(ss / static_cast<double>(values.size()));
      st.stddev_sample = values.size() > 1 ? std::sqrt(ss / static_cast<double>(values.size() - 1)) : 0.0;
      ds.stats_.back() = st;
    } else {
      auto& codes = ds.nominal_cols_.back();
      auto& dict = ds.nominal_dicts_.back();
      codes.reserve(col.size());
      std::unordered_map<std::string, int> index;
      for (const auto& v : col) {
        auto [it, inserted] = index.emplace(v, static_cast<int>(dict.size()));
        if (inserted) dict.push_back(v);
        codes.push_back(it->second);
      }
    }
  }

  return ds;
}

inline DecisionSystem load_csv(const std::string& path, const CsvSchema& schema = {}) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open input file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return DecisionSystem::from_text(buf.str(), schema);
}

inline DecisionSystem load_csv_text(const std::string& text, const CsvSchema& schema = {}) {
  return DecisionSystem::from_text(text, schema);
}

// Serializes header plus one row per object, decision column last. Real
// values are written with round-trip precision so reloading reproduces the
// value grid exactly.
inline void write_csv(const DecisionSystem& ds, std::ostream& out, char delimiter = ',') {
  for (int f = 0; f < ds.feature_count(); ++f) out << ds.feature_name(f) << delimiter;
  out << ds.decision_name() << '\n';
  for (int o = 0; o < ds.object_count(); ++o) {
    for (int f = 0; f < ds.feature_count(); ++f) out << ds.cell_text(f, o) << delimiter;
    out << ds.decision_text(o) << '\n';
  }
}

inline std::string to_csv_text(const DecisionSystem& ds, char delimiter = ',') {
  std::ostringstream os;
  write_csv(ds, os, delimiter);
  return os.str();
}

}  // namespace frdm
