#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "ofi/confusion.hpp"
#include "ofi/errors.hpp"

// Reading labeled predictions and turning them into per-group confusion
// matrices.
namespace ofi {

struct PredictionRecord {
  std::string group;
  bool label = false;
  bool prediction = false;

  friend bool operator==(const PredictionRecord&, const PredictionRecord&) = default;
};

// Which columns hold what. Column names are matched exactly.
struct Schema {
  std::string group_column = "group";
  std::string label_column = "label";
  std::string prediction_column = "prediction";
  char delimiter = ',';
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  constexpr std::string_view ws = " \t\r\n";
  const auto first = s.find_first_not_of(ws);
  if (first == std::string_view::npos) return {};
  return s.substr(first, s.find_last_not_of(ws) - first + 1);
}

// Splits one line on `delim`, honouring double-quoted fields with "" escapes.
inline std::vector<std::string> split_fields(std::string_view line, char delim) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == delim) {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  return fields;
}

inline std::size_t find_column(const std::vector<std::string>& header, const std::string& name) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (trim(header[i]) == name) return i;
  }
  throw SchemaError(name);
}

inline bool parse_binary(std::string_view raw, std::size_t row, const char* what) {
  const auto v = trim(raw);
  if (v == "0") return false;
  if (v == "1") return true;
  throw RowError(row, std::string(what) + " must be 0 or 1, got '" + std::string(v) + "'");
}

}  // namespace detail

// Parses delimiter-separated text with a header row. Row order is kept;
// blank lines are skipped but still counted for error row numbers.
inline std::vector<PredictionRecord> parse_records(std::istream& in, const Schema& schema = {}) {
  std::string line;
  if (!std::getline(in, line)) throw EmptyDatasetError();
  if (line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);

  const auto header = detail::split_fields(line, schema.delimiter);
  const auto group_idx = detail::find_column(header, schema.group_column);
  const auto label_idx = detail::find_column(header, schema.label_column);
  const auto pred_idx = detail::find_column(header, schema.prediction_column);
  const auto needed = std::max({group_idx, label_idx, pred_idx}) + 1;

  std::vector<PredictionRecord> records;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (detail::trim(line).empty()) continue;
    const auto fields = detail::split_fields(line, schema.delimiter);
    if (fields.size() < needed) {
      throw RowError(row, "expected at least " + std::to_string(needed) + " fields, got " +
                              std::to_string(fields.size()));
    }
    const auto group = detail::trim(fields[group_idx]);
    if (group.empty()) throw RowError(row, "missing group value");
    records.push_back(PredictionRecord{std::string(group),
                                       detail::parse_binary(fields[label_idx], row, "label"),
                                       detail::parse_binary(fields[pred_idx], row, "prediction")});
  }
  if (records.empty()) throw EmptyDatasetError();
  return records;
}

// Complements label and prediction, for data where the positive class is the
// harmful one. Applying it twice is the identity.
inline std::vector<PredictionRecord> flip_polarity(std::vector<PredictionRecord> records) {
  for (auto& r : records) {
    r.label = !r.label;
    r.prediction = !r.prediction;
  }
  return records;
}

struct GroupTable {
  std::map<std::string, BinaryConfusion> groups;
  BinaryConfusion total;

  // Validates the matrices (n >= 1 each) and fills in the total.
  static GroupTable from_matrices(std::map<std::string, BinaryConfusion> groups) {
    GroupTable table;
    for (const auto& [name, cm] : groups) {
      require_nonempty(cm, name.c_str());
      table.total += cm;
    }
    table.groups = std::move(groups);
    return table;
  }

  friend bool operator==(const GroupTable&, const GroupTable&) = default;
};

inline GroupTable aggregate(const std::vector<PredictionRecord>& records) {
  if (records.empty()) throw EmptyDatasetError();
  GroupTable table;
  for (const auto& r : records) {
    auto& cm = table.groups[r.group];
    BinaryConfusion one;
    if (r.label) {
      (r.prediction ? one.tp : one.fn) = 1;
    } else {
      (r.prediction ? one.fp : one.tn) = 1;
    }
    cm += one;
    table.total += one;
  }
  return table;
}

namespace detail {

// Unbiased integer in [0, bound) from the raw engine output. std's
// distributions are implementation-defined, which would make samples differ
// between standard libraries.
inline std::uint64_t uniform_below(std::mt19937_64& engine, std::uint64_t bound) {
  constexpr auto max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t reject_from = max - max % bound;
  std::uint64_t x;
  do {
    x = engine();
  } while (x >= reject_from);
  return x % bound;
}

}  // namespace detail

// Uniform sample without replacement, reproducible for a given seed. The
// selected records keep their original relative order.
inline std::vector<PredictionRecord> sample_records(const std::vector<PredictionRecord>& records,
                                                    std::size_t size, std::uint64_t seed) {
  if (size > records.size()) {
    throw ConfigError("sample size " + std::to_string(size) + " exceeds record count " +
                      std::to_string(records.size()));
  }
  std::vector<std::size_t> idx(records.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::mt19937_64 engine(seed);
  for (std::size_t i = 0; i < size; ++i) {
    const auto j = i + detail::uniform_below(engine, idx.size() - i);
    std::swap(idx[i], idx[j]);
  }
  idx.resize(size);
  std::sort(idx.begin(), idx.end());

  std::vector<PredictionRecord> out;
  out.reserve(size);
  for (auto i : idx) out.push_back(records[i]);
  return out;
}

}  // namespace ofi
