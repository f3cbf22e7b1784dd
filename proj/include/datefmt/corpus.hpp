#pragma once

// Column ingestion and preparation: NULL filtering, deterministic top-32
// sampling by hash order, numeric-timestamp classification, and the CSV /
// newline-delimited readers behind them.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "datefmt/locale.hpp"

namespace datefmt {

inline constexpr size_t kDefaultSampleSize = 32;
inline constexpr size_t kMaxRows = 100000;

enum class TimestampClass {
  NotNumeric,
  UnixEpochSeconds,
  UnixEpochMillis,
  ExcelSerial,
  PlainNumber,
};

inline const char* timestamp_class_name(TimestampClass c) {
  switch (c) {
    case TimestampClass::NotNumeric: return "not-numeric";
    case TimestampClass::UnixEpochSeconds: return "unix-epoch-seconds";
    case TimestampClass::UnixEpochMillis: return "unix-epoch-millis";
    case TimestampClass::ExcelSerial: return "excel-serial";
    case TimestampClass::PlainNumber: return "plain-number";
  }
  return "?";
}

struct ColumnStats {
  size_t non_null_count = 0;
  size_t distinct_count = 0;
  size_t max_length = 0;
};

struct ColumnSample {
  std::string column_name;
  size_t raw_count = 0;
  std::vector<std::string> non_null_values;  // distinct, original order
  std::vector<std::string> sample;           // <= k, hash order
  ColumnStats stats;
  TimestampClass timestamp_class = TimestampClass::NotNumeric;
};

inline uint64_t fnv1a64(std::string_view s) {
  uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

namespace detail {

inline bool has_digit(std::string_view s) {
  for (char c : s)
    if (c >= '0' && c <= '9') return true;
  return false;
}

inline bool is_null_like(std::string_view s, const LocaleSpec& loc) {
  if (s.empty()) return true;
  std::string lower = ascii_lower(s);
  if (lower == "null") return true;
  if (s == "0000-00-00" || s == "NaN") return true;
  if (!has_digit(s)) {
    // keep pure month/weekday words; drop everything else without digits
    if (loc.month_index(s) || loc.weekday_index(s)) return false;
    if (loc.id() != "en" && (english_locale().month_index(s) ||
                             english_locale().weekday_index(s)))
      return false;
    return true;
  }
  return false;
}

// Accepts an optional leading sign, digits, and at most one decimal point.
inline bool parse_numeric(std::string_view s, double& out, bool& integral) {
  if (s.empty()) return false;
  size_t i = 0;
  if (s[0] == '+' || s[0] == '-') i = 1;
  bool any = false, dot = false;
  for (size_t j = i; j < s.size(); ++j) {
    if (s[j] == '.') {
      if (dot) return false;
      dot = true;
    } else if (s[j] >= '0' && s[j] <= '9') {
      any = true;
    } else {
      return false;
    }
  }
  if (!any) return false;
  out = std::stod(std::string(s));
  integral = !dot;
  return true;
}

}  // namespace detail

// Removes NULL-ish entries: case-insensitive "null", known encodings like
// "0000-00-00" and "NaN", and values with no digits at all unless they are
// month or weekday words.
inline std::vector<std::string> filter_nulls(
    const std::vector<std::string>& values, const LocaleSpec& loc) {
  std::vector<std::string> out;
  out.reserve(values.size());
  for (const auto& v : values)
    if (!detail::is_null_like(v, loc)) out.push_back(v);
  return out;
}

// Distinct values ordered by FNV-1a hash (ties by value), first k retained.
// Order-insensitive and stable across runs and platforms.
inline std::vector<std::string> sample_column(
    const std::vector<std::string>& values, size_t k = kDefaultSampleSize) {
  std::vector<std::pair<uint64_t, std::string>> hashed;
  std::set<std::string_view> seen;
  hashed.reserve(values.size());
  for (const auto& v : values)
    if (seen.insert(v).second) hashed.emplace_back(fnv1a64(v), v);
  std::sort(hashed.begin(), hashed.end());
  if (hashed.size() > k) hashed.resize(k);
  std::vector<std::string> out;
  out.reserve(hashed.size());
  for (auto& [h, v] : hashed) out.push_back(std::move(v));
  return out;
}

// Classifies all-numeric columns so epoch and spreadsheet serial numbers can
// be excluded from format detection. Ranges cover 1973-2096 for epoch
// seconds and serial dates through roughly year 2119.
inline TimestampClass classify_timestamps(
    const std::vector<std::string>& values) {
  if (values.empty()) return TimestampClass::NotNumeric;
  bool all_numeric = true, all_int = true;
  double lo = 0, hi = 0;
  bool first = true;
  for (const auto& v : values) {
    double x = 0;
    bool integral = false;
    if (!detail::parse_numeric(v, x, integral)) {
      all_numeric = false;
      break;
    }
    all_int = all_int && integral;
    lo = first ? x : std::min(lo, x);
    hi = first ? x : std::max(hi, x);
    first = false;
  }
  if (!all_numeric) return TimestampClass::NotNumeric;
  if (all_int && lo >= 1e8 && hi <= 4e9) return TimestampClass::UnixEpochSeconds;
  if (all_int && lo >= 1e11 && hi <= 4e12) return TimestampClass::UnixEpochMillis;
  if (lo >= 1 && hi <= 80000) return TimestampClass::ExcelSerial;
  return TimestampClass::PlainNumber;
}

// --- input readers ---------------------------------------------------------

enum class LoadErrorKind {
  Io,
  ColumnNotFound,
  EmptyAfterFiltering,
  NumericTimestamp,
};

class LoadError : public std::runtime_error {
 public:
  LoadError(LoadErrorKind kind, const std::string& what,
            TimestampClass ts = TimestampClass::NotNumeric)
      : std::runtime_error(what), kind_(kind), ts_(ts) {}
  LoadErrorKind kind() const { return kind_; }
  TimestampClass timestamp_class() const { return ts_; }

 private:
  LoadErrorKind kind_;
  TimestampClass ts_;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// RFC 4180 reader: quoted fields, doubled quotes, embedded separators and
// newlines. Data rows beyond max_rows are dropped.
inline CsvTable read_csv(std::istream& in, size_t max_rows = kMaxRows) {
  CsvTable table;
  std::vector<std::string> row;
  std::string field;
  bool in_quotes = false;
  bool any_field = false;
  auto end_field = [&] {
    row.push_back(field);
    field.clear();
    any_field = false;
  };
  auto end_row = [&] {
    end_field();
    if (table.header.empty())
      table.header = std::move(row);
    else if (table.rows.size() < max_rows)
      table.rows.push_back(std::move(row));
    row = {};
  };
  char c;
  bool saw_any = false;
  while (in.get(c)) {
    saw_any = true;
    if (in_quotes) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get(c);
          field += '"';
        } else {
          in_quotes = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        in_quotes = true;
        any_field = true;
        break;
      case ',':
        end_field();
        break;
      case '\r':
        break;
      case '\n':
        end_row();
        break;
      default:
        field += c;
        any_field = true;
        break;
    }
  }
  if (!field.empty() || !row.empty() || (saw_any && any_field)) end_row();
  return table;
}

inline std::vector<std::string> read_lines(std::istream& in,
                                           size_t max_rows = kMaxRows) {
  std::vector<std::string> out;
  std::string line;
  while (out.size() < max_rows && std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    out.push_back(line);
  }
  return out;
}

// Column selector: a header name, or a zero-based index given as digits.
struct ColumnRef {
  std::string file;
  std::string column;  // empty means "only column"
};

inline ColumnSample make_column_sample(std::string name,
                                       std::vector<std::string> raw,
                                       const LocaleSpec& loc,
                                       size_t sample_size,
                                       bool exclude_timestamps = true) {
  ColumnSample cs;
  cs.column_name = std::move(name);
  cs.raw_count = raw.size();
  std::vector<std::string> kept = filter_nulls(raw, loc);
  if (kept.empty())
    throw LoadError(LoadErrorKind::EmptyAfterFiltering,
                    "column '" + cs.column_name + "' empty after filtering");
  // distinct, preserving first-seen order
  std::set<std::string_view> seen;
  for (auto& v : kept)
    if (seen.insert(v).second) cs.non_null_values.push_back(v);
  cs.stats.non_null_count = kept.size();
  cs.stats.distinct_count = cs.non_null_values.size();
  for (const auto& v : cs.non_null_values)
    cs.stats.max_length = std::max(cs.stats.max_length, v.size());
  cs.timestamp_class = classify_timestamps(cs.non_null_values);
  if (exclude_timestamps &&
      (cs.timestamp_class == TimestampClass::UnixEpochSeconds ||
       cs.timestamp_class == TimestampClass::UnixEpochMillis ||
       cs.timestamp_class == TimestampClass::ExcelSerial))
    throw LoadError(LoadErrorKind::NumericTimestamp,
                    "column '" + cs.column_name + "' holds numeric timestamps (" +
                        timestamp_class_name(cs.timestamp_class) + ")",
                    cs.timestamp_class);
  cs.sample = sample_column(cs.non_null_values, sample_size);
  return cs;
}

inline bool has_suffix(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// Reads one column from a CSV (by header name or zero-based index) or from a
// newline-delimited text file. Rows are capped at 100K.
inline ColumnSample load_column(const std::string& path,
                                const std::string& selector,
                                const LocaleSpec& loc,
                                size_t sample_size = kDefaultSampleSize,
                                bool exclude_timestamps = true) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError(LoadErrorKind::Io, "cannot open " + path);
  if (has_suffix(path, ".csv")) {
    CsvTable table = read_csv(in);
    if (table.header.empty())
      throw LoadError(LoadErrorKind::Io, "empty csv: " + path);
    size_t col = table.header.size();
    if (selector.empty()) {
      if (table.header.size() == 1)
        col = 0;
      else
        throw LoadError(LoadErrorKind::ColumnNotFound,
                        "csv has multiple columns; pass --column");
    } else {
      for (size_t i = 0; i < table.header.size(); ++i)
        if (table.header[i] == selector) col = i;
      if (col == table.header.size() && !selector.empty()) {
        bool digits = !selector.empty() &&
                      selector.find_first_not_of("0123456789") ==
                          std::string::npos;
        if (digits) {
          size_t idx = std::stoul(selector);
          if (idx < table.header.size()) col = idx;
        }
      }
    }
    if (col >= table.header.size())
      throw LoadError(LoadErrorKind::ColumnNotFound,
                      "column not found: " + selector);
    std::vector<std::string> raw;
    raw.reserve(table.rows.size());
    for (const auto& row : table.rows)
      raw.push_back(col < row.size() ? row[col] : "");
    return make_column_sample(table.header[col], std::move(raw), loc,
                              sample_size, exclude_timestamps);
  }
  // newline-delimited text: single anonymous column named by file stem
  std::vector<std::string> raw = read_lines(in);
  std::string name = std::filesystem::path(path).stem().string();
  return make_column_sample(name, std::move(raw), loc, sample_size,
                            exclude_timestamps);
}

// Raw values of one column in row order: no filtering, no deduplication.
inline std::vector<std::string> load_raw_values(const std::string& path,
                                                const std::string& selector) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError(LoadErrorKind::Io, "cannot open " + path);
  if (!has_suffix(path, ".csv")) return read_lines(in);
  CsvTable table = read_csv(in);
  if (table.header.empty())
    throw LoadError(LoadErrorKind::Io, "empty csv: " + path);
  size_t col = table.header.size();
  if (selector.empty() && table.header.size() == 1) col = 0;
  for (size_t i = 0; i < table.header.size(); ++i)
    if (table.header[i] == selector) col = i;
  if (col >= table.header.size() && !selector.empty() &&
      selector.find_first_not_of("0123456789") == std::string::npos) {
    size_t idx = std::stoul(selector);
    if (idx < table.header.size()) col = idx;
  }
  if (col >= table.header.size())
    throw LoadError(LoadErrorKind::ColumnNotFound,
                    "column not found: " + selector);
  std::vector<std::string> out;
  out.reserve(table.rows.size());
  for (const auto& row : table.rows)
    out.push_back(col < row.size() ? row[col] : "");
  return out;
}

// All columns available in a file, for corpus-wide commands.
inline std::vector<std::string> list_columns(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError(LoadErrorKind::Io, "cannot open " + path);
  if (has_suffix(path, ".csv")) {
    CsvTable table = read_csv(in, 1);
    return table.header;
  }
  return {std::filesystem::path(path).stem().string()};
}

}  // namespace datefmt
