#pragma once

// Deterministic synthetic corpus: single-column CSV files drawn from a
// catalog of real-world format patterns, with ground-truth labels. Stands
// in for the production column corpus in tests and benchmarks.

#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "datefmt/calendar.hpp"
#include "datefmt/dateparse.hpp"
#include "datefmt/icu_format.hpp"
#include "datefmt/locale.hpp"

namespace datefmt {

// Patterns both engines are expected to recover, including the unusual
// formats observed in real corpora (bracketed log stamps, quoted years,
// 12-hour clocks with six fractional digits).
inline const std::vector<std::string>& format_catalog() {
  static const std::vector<std::string> kCatalog = {
      "EEE MMM dd HH:mm:ss zzz yyyy",
      "[dd/MMM/yyyy:HH:mm:ss",
      "dd-MMM-yy hh.mm.ss.SSSSSS a",
      "MM ''yyyy",
      "MM/dd/yyyy - HH:mm",
      "yyyy-MM-dd",
      "yyyy/MM/dd",
      "yyyy.MM.dd",
      "MM/dd/yyyy",
      "MM-dd-yyyy",
      "dd/MM/yyyy",
      "dd.MM.yyyy",
      "dd-MM-yyyy",
      "M/d/yyyy",
      "yyyy-MM-dd HH:mm:ss",
      "yyyy-MM-dd'T'HH:mm:ss",
      "yyyy-MM-dd'T'HH:mm:ssZ",
      "yyyy-MM-dd HH:mm:ss.SSS",
      "yyyy-MM-dd HH:mm:ss ZZZZZ",
      "MM/dd/yyyy HH:mm",
      "MM/dd/yyyy hh:mm:ss a",
      "MM/dd/yy",
      "dd/MM/yyyy HH:mm",
      "dd.MM.yyyy HH:mm",
      "dd-MMM-yyyy",
      "dd MMM yyyy",
      "d MMMM yyyy",
      "dd MMMM yyyy",
      "MMM dd, yyyy",
      "MMMM dd, yyyy",
      "MMM dd yyyy",
      "EEE, dd MMM yyyy HH:mm:ss",
      "EEEE, MMMM dd, yyyy",
      "dd MMM yyyy HH:mm:ss zzz",
      "HH:mm",
      "HH:mm:ss",
      "HH:mm:ss.SSS",
      "hh:mm a",
      "hh:mm:ss a",
      "hh.mm.ss a",
      "MM/yyyy",
      "MM-yyyy",
      "MMM yyyy",
      "MMMM yyyy",
      "yyyy-MM",
      "QQQ yyyy",
  };
  return kCatalog;
}

struct GeneratedColumn {
  std::string file;     // path relative to the output directory
  std::string column;   // header name
  std::string format;   // ground-truth pattern
  std::string locale_id = "en";
};

struct GenOptions {
  size_t n_columns = 500;
  uint64_t seed = 1;
  size_t values_per_column = 50;  // median non-null count in real columns
};

namespace detail {

inline uint64_t bounded(std::mt19937_64& rng, uint64_t lo, uint64_t hi) {
  return lo + rng() % (hi - lo + 1);
}

inline ResolvedInstant random_instant_for(const FormatString& fs,
                                          std::mt19937_64& rng) {
  bool two_digit_year = false, zone_name = false, zone_offset = false;
  for (const auto& t : fs.tokens()) {
    if (!t.is_field) continue;
    if (t.code.field == Field::Year && t.code.width <= 2)
      two_digit_year = true;
    if (t.code.field == Field::ZoneName) zone_name = true;
    if (t.code.field == Field::ZoneOffset) zone_offset = true;
  }
  ResolvedInstant r;
  r.year = two_digit_year ? static_cast<int>(bounded(rng, 2000, 2035))
                          : static_cast<int>(bounded(rng, 1990, 2035));
  r.month = static_cast<int>(bounded(rng, 1, 12));
  r.day = static_cast<int>(
      bounded(rng, 1, days_in_month_bound(r.month, r.year)));
  r.hour = static_cast<int>(bounded(rng, 0, 23));
  r.minute = static_cast<int>(bounded(rng, 0, 59));
  r.second = static_cast<int>(bounded(rng, 0, 59));
  r.millisecond = static_cast<int>(bounded(rng, 0, 999));
  if (zone_name) {
    static const int kNamed[] = {0, -240, -300, -360, -420, -480};
    r.tz_offset_minutes = kNamed[bounded(rng, 0, std::size(kNamed) - 1)];
  } else if (zone_offset) {
    static const int kOffsets[] = {-480, -300, -240, 0, 60, 330};
    r.tz_offset_minutes = kOffsets[bounded(rng, 0, std::size(kOffsets) - 1)];
  }
  return r;
}

}  // namespace detail

inline std::vector<std::string> generate_column_values(
    const std::string& pattern, uint64_t seed, size_t count,
    const LocaleSpec& loc) {
  FormatString fs = tokenize_format(pattern);
  std::mt19937_64 rng(seed);
  std::vector<std::string> out;
  out.reserve(count);
  for (size_t i = 0; i < count; ++i)
    out.push_back(format_instant(detail::random_instant_for(fs, rng), fs, loc));
  return out;
}

// Writes n single-column CSV files; byte-identical for identical options.
inline std::vector<GeneratedColumn> generate_corpus(
    const std::string& out_dir, const GenOptions& opts,
    const LocaleSpec& loc = english_locale()) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  const auto& catalog = format_catalog();
  std::vector<GeneratedColumn> manifest;
  manifest.reserve(opts.n_columns);
  for (size_t i = 0; i < opts.n_columns; ++i) {
    const std::string& pattern = catalog[i % catalog.size()];
    char name[32];
    std::snprintf(name, sizeof(name), "col_%04zu", i);
    std::string file = std::string(name) + ".csv";
    uint64_t col_seed = opts.seed * 1000003ULL + i;
    std::vector<std::string> values =
        generate_column_values(pattern, col_seed, opts.values_per_column, loc);
    std::ofstream out(fs::path(out_dir) / file, std::ios::binary);
    out << name << "\n";
    for (const auto& v : values) {
      bool quote = v.find_first_of(",\"\n") != std::string::npos;
      if (!quote) {
        out << v << "\n";
        continue;
      }
      out << '"';
      for (char c : v) {
        if (c == '"') out << '"';
        out << c;
      }
      out << '"' << "\n";
    }
    manifest.push_back({file, name, pattern, loc.id()});
  }
  return manifest;
}

}  // namespace datefmt
