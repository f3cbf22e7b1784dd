#pragma once

// Dual-engine cross-validation: run MDL and NLP detection over a corpus
// directory, compare normalized top-1 formats, and categorize mismatches.

#include <algorithm>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "datefmt/corpus.hpp"
#include "datefmt/detection.hpp"
#include "datefmt/mdl.hpp"
#include "datefmt/parallel.hpp"
#include "datefmt/pcfg.hpp"

namespace datefmt {

enum class DiscrepancyCategory {
  LeadingSignNumeric,
  ExcelDateSupport,
  SeasonalExpression,
  NumericDateVsTime,
  Other,
};

inline const char* discrepancy_category_name(DiscrepancyCategory c) {
  switch (c) {
    case DiscrepancyCategory::LeadingSignNumeric: return "leading-sign-numeric";
    case DiscrepancyCategory::ExcelDateSupport: return "excel-date-support";
    case DiscrepancyCategory::SeasonalExpression: return "seasonal-expression";
    case DiscrepancyCategory::NumericDateVsTime: return "numeric-date-vs-time";
    case DiscrepancyCategory::Other: return "other";
  }
  return "?";
}

struct Discrepancy {
  std::string column;     // file:column
  std::string mdl_format; // empty when the engine found nothing
  std::string nlp_format;
  DiscrepancyCategory category = DiscrepancyCategory::Other;
};

struct CrossvalReport {
  size_t total_columns = 0;
  size_t both_detected = 0;  // comparisons made (at least one top-1)
  size_t match_count = 0;
  double match_rate = 0.0;
  std::vector<Discrepancy> discrepancies;
};

// Canonical comparison text: width-equivalent codes are unified and literal
// whitespace runs collapse, so two formats compare equal exactly when they
// accept the same value language.
inline std::string normalize_for_comparison(const FormatString& fs) {
  return normalized_format_key(fs);
}

namespace detail {

inline bool all_leading_sign(const std::vector<std::string>& values) {
  if (values.empty()) return false;
  for (const auto& v : values)
    if (v.empty() || (v[0] != '+' && v[0] != '-')) return false;
  return true;
}

inline bool has_season_word(const std::vector<std::string>& values) {
  static const char* kSeasons[] = {"fall", "spring", "summer", "winter",
                                   "autumn"};
  for (const auto& v : values) {
    std::string lower = ascii_lower(v);
    for (const char* s : kSeasons)
      if (lower.find(s) != std::string::npos) return true;
  }
  return false;
}

inline bool all_digits(const std::vector<std::string>& values) {
  if (values.empty()) return false;
  for (const auto& v : values) {
    if (v.empty()) return false;
    for (char c : v)
      if (c < '0' || c > '9') return false;
  }
  return true;
}

}  // namespace detail

// Deterministic mismatch categorization from the column's content.
inline DiscrepancyCategory categorize_discrepancy(
    const std::vector<std::string>& values, TimestampClass ts) {
  if (ts == TimestampClass::ExcelSerial)
    return DiscrepancyCategory::ExcelDateSupport;
  if (detail::all_leading_sign(values))
    return DiscrepancyCategory::LeadingSignNumeric;
  if (detail::has_season_word(values))
    return DiscrepancyCategory::SeasonalExpression;
  if (detail::all_digits(values))
    return DiscrepancyCategory::NumericDateVsTime;
  return DiscrepancyCategory::Other;
}

struct CrossvalOptions {
  DetectOptions detect;
  unsigned jobs = 1;
};

inline std::vector<std::pair<std::string, std::string>> corpus_columns(
    const std::string& corpus_dir) {
  namespace fs = std::filesystem;
  std::vector<std::string> files;
  for (const auto& e : fs::directory_iterator(corpus_dir)) {
    if (!e.is_regular_file()) continue;
    std::string p = e.path().string();
    if (has_suffix(p, ".csv") || has_suffix(p, ".txt")) files.push_back(p);
  }
  std::sort(files.begin(), files.end());
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& f : files) {
    try {
      for (const auto& c : list_columns(f)) out.emplace_back(f, c);
    } catch (const LoadError&) {
      // unreadable file: skipped
    }
  }
  return out;
}

// Runs both engines over every column of the corpus and reports the
// agreement rate. Per-column failures are recorded, not fatal.
inline CrossvalReport cross_validate(const std::string& corpus_dir,
                                     const LocaleSpec& loc,
                                     const CrossvalOptions& opts = {}) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(corpus_dir))
    throw LoadError(LoadErrorKind::Io, "not a directory: " + corpus_dir);

  auto columns = corpus_columns(corpus_dir);

  struct Outcome {
    std::string column;
    bool loaded = false;
    bool excel = false;
    bool skipped = false;  // unix timestamps or load failure
    std::optional<std::string> mdl, nlp;      // normalized top-1
    std::string mdl_text, nlp_text;           // rendered top-1
    std::vector<std::string> values;
    TimestampClass ts = TimestampClass::NotNumeric;
  };

  Grammar base = binarize(build_datetime_grammar(loc));

  auto work = [&](size_t i) -> Outcome {
    const auto& [file, colname] = columns[i];
    Outcome o;
    o.column = fs::path(file).filename().string() + ":" + colname;
    ColumnSample cs;
    try {
      cs = load_column(file, colname, loc, opts.detect.sample_size);
    } catch (const LoadError& e) {
      if (e.kind() == LoadErrorKind::NumericTimestamp &&
          e.timestamp_class() == TimestampClass::ExcelSerial) {
        o.excel = true;
        o.ts = TimestampClass::ExcelSerial;
      } else {
        o.skipped = true;
      }
      return o;
    }
    o.loaded = true;
    o.ts = cs.timestamp_class;
    o.values = cs.non_null_values;
    DetectionResult m = detect_mdl(cs, loc, opts.detect);
    DetectionResult n = detect_nlp(cs, loc, base, opts.detect);
    if (m.found()) {
      o.mdl = normalize_for_comparison(m.top().format);
      o.mdl_text = render_format(m.top().format);
    }
    if (n.found()) {
      o.nlp = normalize_for_comparison(n.top().format);
      o.nlp_text = render_format(n.top().format);
    }
    return o;
  };

  std::vector<Outcome> outcomes = parallel_map_ordered<Outcome>(
      columns.size(), opts.jobs, work);

  CrossvalReport report;
  report.total_columns = outcomes.size();
  for (const auto& o : outcomes) {
    if (o.excel) {
      // the MDL side recognizes spreadsheet serial dates; the grammar has
      // no production for them
      report.both_detected += 1;
      report.discrepancies.push_back({o.column, "(excel-serial)", "",
                                      DiscrepancyCategory::ExcelDateSupport});
      continue;
    }
    if (o.skipped || !o.loaded) continue;
    if (!o.mdl && !o.nlp) continue;
    report.both_detected += 1;
    if (o.mdl && o.nlp && *o.mdl == *o.nlp) {
      report.match_count += 1;
      continue;
    }
    Discrepancy d;
    d.column = o.column;
    d.mdl_format = o.mdl_text;
    d.nlp_format = o.nlp_text;
    d.category = categorize_discrepancy(o.values, o.ts);
    report.discrepancies.push_back(std::move(d));
  }
  report.match_rate =
      report.both_detected == 0
          ? 0.0
          : static_cast<double>(report.match_count) /
                static_cast<double>(report.both_detected);
  return report;
}

}  // namespace datefmt
