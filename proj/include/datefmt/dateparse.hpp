#pragma once

// DATEPARSE: apply a FormatString to a value string, producing a partial
// date-time with a presence mask, plus partial-date defaulting and the
// inverse formatting path used for validation and data generation.

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "datefmt/calendar.hpp"
#include "datefmt/icu_format.hpp"
#include "datefmt/locale.hpp"

namespace datefmt {

struct DateTimeValue {
  std::optional<int> year, month, day;
  std::optional<int> hour, minute, second, millisecond;
  std::optional<int> tz_offset_minutes;
  std::optional<int> quarter;

  bool has_date_part() const {
    return year || month || day || quarter;
  }
  bool operator==(const DateTimeValue&) const = default;
};

// DateTimeValue after defaulting; every date and time field is present.
struct ResolvedInstant {
  int year = 2000, month = 1, day = 1;
  int hour = 0, minute = 0, second = 0, millisecond = 0;
  std::optional<int> tz_offset_minutes;

  DateTimeValue as_value() const {
    DateTimeValue v;
    v.year = year;
    v.month = month;
    v.day = day;
    v.hour = hour;
    v.minute = minute;
    v.second = second;
    v.millisecond = millisecond;
    v.tz_offset_minutes = tz_offset_minutes;
    return v;
  }
  bool operator==(const ResolvedInstant&) const = default;
};

enum class ParseErrorKind {
  LiteralMismatch,
  FieldOutOfRange,
  TrailingInput,
  IncompleteInput,
};

inline const char* parse_error_name(ParseErrorKind k) {
  switch (k) {
    case ParseErrorKind::LiteralMismatch: return "literal-mismatch";
    case ParseErrorKind::FieldOutOfRange: return "field-out-of-range";
    case ParseErrorKind::TrailingInput: return "trailing-input";
    case ParseErrorKind::IncompleteInput: return "incomplete-input";
  }
  return "?";
}

struct ParseError {
  ParseErrorKind kind = ParseErrorKind::LiteralMismatch;
  size_t byte_offset = 0;
  size_t token_index = 0;
};

class ParseResult {
 public:
  static ParseResult success(DateTimeValue v) {
    ParseResult r;
    r.value_ = std::move(v);
    return r;
  }
  static ParseResult failure(ParseError e) {
    ParseResult r;
    r.error_ = e;
    return r;
  }
  bool ok() const { return value_.has_value(); }
  const DateTimeValue& value() const { return *value_; }
  const ParseError& error() const { return error_; }

 private:
  std::optional<DateTimeValue> value_;
  ParseError error_{};
};

namespace detail {

struct ZoneName {
  const char* name;
  int offset_minutes;
};

// Fixed abbreviation table; unknown names are a parse error.
inline const ZoneName kZoneNames[] = {
    {"GMT", 0},    {"UTC", 0},    {"UT", 0},
    {"EDT", -240}, {"EST", -300}, {"CDT", -300}, {"CST", -360},
    {"MDT", -360}, {"MST", -420}, {"PDT", -420}, {"PST", -480},
    {"AKDT", -480}, {"AKST", -540}, {"HST", -600},
    {"BST", 60},   {"CET", 60},   {"CEST", 120},
};

inline std::optional<int> zone_name_offset(std::string_view text) {
  std::string up(text);
  for (char& c : up)
    if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
  for (const auto& z : kZoneNames)
    if (up == z.name) return z.offset_minutes;
  return std::nullopt;
}

// Preferred rendering for zzz by offset; anything else falls back to a
// localized GMT form.
inline std::string zone_name_for_offset(int offset_minutes) {
  switch (offset_minutes) {
    case 0: return "GMT";
    case -240: return "EDT";
    case -300: return "EST";
    case -360: return "CST";
    case -420: return "MST";
    case -480: return "PST";
    default: break;
  }
  char buf[16];
  int off = offset_minutes;
  char sign = off < 0 ? '-' : '+';
  if (off < 0) off = -off;
  std::snprintf(buf, sizeof(buf), "GMT%c%02d:%02d", sign, off / 60, off % 60);
  return buf;
}

inline bool is_digit(char c) { return c >= '0' && c <= '9'; }
inline bool is_word_byte(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         static_cast<unsigned char>(c) >= 0x80;
}

struct RawFields {
  std::optional<int> year, month, day, hour24, hour12, minute, second, millis,
      quarter, tz;
  std::optional<MeridianMark> meridian;
  size_t day_token = 0;
  size_t day_offset = 0;
};

inline int two_digit_year_pivot(int yy) {
  return yy <= 68 ? 2000 + yy : 1900 + yy;
}

class Parser {
 public:
  Parser(std::string_view text, const FormatString& fs, const LocaleSpec& loc)
      : text_(text), fs_(fs), loc_(loc) {}

  ParseResult run() {
    RawFields f;
    deepest_ = ParseError{ParseErrorKind::IncompleteInput, 0, 0};
    have_error_ = false;
    if (auto v = walk(0, 0, f)) return ParseResult::success(*v);
    return ParseResult::failure(deepest_);
  }

 private:
  // Attempts run greedy-first, so the first failure is the most natural
  // diagnosis; later backtracking noise never overwrites it.
  void note_error(ParseErrorKind kind, size_t pos, size_t tok) {
    if (!have_error_) {
      deepest_ = ParseError{kind, pos, tok};
      have_error_ = true;
    }
  }

  std::optional<DateTimeValue> finalize(const RawFields& f, size_t pos) {
    if (pos != text_.size()) {
      note_error(ParseErrorKind::TrailingInput, pos, fs_.size());
      return std::nullopt;
    }
    if (f.month && f.day) {
      long y = f.year ? *f.year : 2000;
      if (*f.day > days_in_month_bound(*f.month, y)) {
        note_error(ParseErrorKind::FieldOutOfRange, f.day_offset, f.day_token);
        return std::nullopt;
      }
    }
    DateTimeValue v;
    v.year = f.year;
    v.month = f.month;
    v.day = f.day;
    if (f.hour24) {
      v.hour = f.hour24;
    } else if (f.hour12) {
      int h = *f.hour12 % 12;
      if (f.meridian && *f.meridian == MeridianMark::PM) h += 12;
      v.hour = h;
    }
    v.minute = f.minute;
    v.second = f.second;
    v.millisecond = f.millis;
    v.tz_offset_minutes = f.tz;
    v.quarter = f.quarter;
    return v;
  }

  std::optional<DateTimeValue> walk(size_t ti, size_t pos, RawFields f) {
    if (ti == fs_.size()) return finalize(f, pos);
    const FormatToken& tok = fs_[ti];
    if (!tok.is_field) {
      const std::string& lit = tok.literal;
      if (pos + lit.size() <= text_.size() &&
          text_.compare(pos, lit.size(), lit) == 0)
        return walk(ti + 1, pos + lit.size(), f);
      note_error(pos >= text_.size() ? ParseErrorKind::IncompleteInput
                                     : ParseErrorKind::LiteralMismatch,
                 std::min(pos, text_.size()), ti);
      return std::nullopt;
    }
    const FieldCode& fc = tok.code;
    ValueRange range = field_value_range(fc);
    if (!range.textual) return numeric_field(ti, pos, f, fc, range);
    return textual_field(ti, pos, f, fc);
  }

  std::optional<DateTimeValue> numeric_field(size_t ti, size_t pos,
                                             const RawFields& f,
                                             const FieldCode& fc,
                                             const ValueRange& range) {
    if (pos >= text_.size()) {
      note_error(ParseErrorKind::IncompleteInput, text_.size(), ti);
      return std::nullopt;
    }
    size_t avail = 0;
    while (pos + avail < text_.size() && is_digit(text_[pos + avail])) ++avail;
    if (avail == 0) {
      note_error(ParseErrorKind::FieldOutOfRange, pos, ti);
      return std::nullopt;
    }
    // Greedy up to the code width (one-digit codes still accept two digits),
    // backtracking by one digit when the remainder cannot parse. Subsecond
    // runs are fixed-width.
    int maxd, mind;
    if (fc.field == Field::Subsecond) {
      maxd = fc.width;
      mind = fc.width;
    } else if (fc.width == 1) {
      maxd = 2;
      mind = 1;
    } else {
      maxd = fc.width;
      mind = fc.width - 1;
    }
    int greedy = static_cast<int>(std::min<size_t>(avail, maxd));
    if (greedy < mind) {
      note_error(ParseErrorKind::FieldOutOfRange, pos, ti);
      return std::nullopt;
    }
    for (int len = greedy; len >= mind && len >= greedy - 1; --len) {
      if (len < 1) break;
      long raw = 0;
      for (int k = 0; k < len; ++k) raw = raw * 10 + (text_[pos + k] - '0');
      if (raw < range.min || raw > range.max) {
        note_error(ParseErrorKind::FieldOutOfRange, pos, ti);
        continue;
      }
      RawFields g = f;
      if (!assign_numeric(g, fc, raw, ti, pos)) {
        note_error(ParseErrorKind::FieldOutOfRange, pos, ti);
        continue;
      }
      if (auto v = walk(ti + 1, pos + len, g)) return v;
    }
    return std::nullopt;
  }

  bool assign_numeric(RawFields& f, const FieldCode& fc, long raw, size_t ti,
                      size_t pos) {
    switch (fc.field) {
      case Field::Year:
        f.year = fc.width <= 2 ? two_digit_year_pivot(static_cast<int>(raw))
                               : static_cast<int>(raw);
        return true;
      case Field::Month:
        f.month = static_cast<int>(raw);
        return true;
      case Field::Day:
        f.day = static_cast<int>(raw);
        f.day_token = ti;
        f.day_offset = pos;
        return true;
      case Field::Hour12:
        f.hour12 = static_cast<int>(raw);
        return true;
      case Field::Hour24:
        f.hour24 = static_cast<int>(raw);
        return true;
      case Field::Minute:
        f.minute = static_cast<int>(raw);
        return true;
      case Field::Second:
        f.second = static_cast<int>(raw);
        return true;
      case Field::Subsecond: {
        // Fractional-second digits; the first three carry milliseconds.
        long ms = raw;
        int w = fc.width;
        while (w > 3) {
          ms /= 10;
          --w;
        }
        while (w < 3) {
          ms *= 10;
          ++w;
        }
        f.millis = static_cast<int>(ms);
        return true;
      }
      case Field::Quarter:
        f.quarter = static_cast<int>(raw);
        return true;
      default:
        return false;
    }
  }

  size_t word_run(size_t pos) const {
    size_t end = pos;
    while (end < text_.size() && is_word_byte(text_[end])) ++end;
    return end - pos;
  }

  std::optional<DateTimeValue> textual_field(size_t ti, size_t pos,
                                             const RawFields& f,
                                             const FieldCode& fc) {
    if (pos >= text_.size()) {
      note_error(ParseErrorKind::IncompleteInput, text_.size(), ti);
      return std::nullopt;
    }
    switch (fc.field) {
      case Field::Month:
      case Field::Weekday: {
        size_t run = word_run(pos);
        if (run == 0) {
          note_error(ParseErrorKind::FieldOutOfRange, pos, ti);
          return std::nullopt;
        }
        bool dotted = pos + run < text_.size() && text_[pos + run] == '.';
        std::vector<size_t> lens{run};
        if (dotted) lens.push_back(run + 1);
        for (size_t len : lens) {
          std::string_view w = text_.substr(pos, len);
          RawFields g = f;
          if (fc.field == Field::Month) {
            auto m = match_month(w, loc_);
            if (!m) continue;
            g.month = m->index;
          } else if (!match_weekday(w, loc_)) {
            continue;
          }
          if (auto v = walk(ti + 1, pos + len, g)) return v;
        }
        note_error(ParseErrorKind::FieldOutOfRange, pos, ti);
        return std::nullopt;
      }
      case Field::Meridian:
        return meridian_field(ti, pos, f);
      case Field::Quarter:
        return quarter_field(ti, pos, f, fc);
      case Field::ZoneName:
        return zone_name_field(ti, pos, f);
      case Field::ZoneOffset:
        return zone_offset_field(ti, pos, f, fc);
      default:
        note_error(ParseErrorKind::FieldOutOfRange, pos, ti);
        return std::nullopt;
    }
  }

  std::optional<DateTimeValue> meridian_field(size_t ti, size_t pos,
                                              const RawFields& f) {
    size_t end = pos;
    while (end < text_.size() &&
           (is_word_byte(text_[end]) || text_[end] == '.'))
      ++end;
    std::vector<size_t> lens;
    // two-word forms like "a. m."
    if (end > pos && text_[end - 1] == '.' && end < text_.size() &&
        text_[end] == ' ') {
      size_t e2 = end + 1;
      while (e2 < text_.size() &&
             (is_word_byte(text_[e2]) || text_[e2] == '.'))
        ++e2;
      if (e2 > end + 1) lens.push_back(e2 - pos);
    }
    if (end > pos) lens.push_back(end - pos);
    for (size_t len : lens) {
      auto m = match_meridian(text_.substr(pos, len), loc_);
      if (!m) continue;
      RawFields g = f;
      g.meridian = m;
      if (auto v = walk(ti + 1, pos + len, g)) return v;
    }
    note_error(ParseErrorKind::FieldOutOfRange, pos, ti);
    return std::nullopt;
  }

  std::optional<DateTimeValue> quarter_field(size_t ti, size_t pos,
                                             const RawFields& f,
                                             const FieldCode& fc) {
    if (fc.width == 3) {
      // "Q2"
      if (pos + 1 < text_.size() &&
          (text_[pos] == 'Q' || text_[pos] == 'q') &&
          text_[pos + 1] >= '1' && text_[pos + 1] <= '4') {
        RawFields g = f;
        g.quarter = text_[pos + 1] - '0';
        if (auto v = walk(ti + 1, pos + 2, g)) return v;
      }
      note_error(ParseErrorKind::FieldOutOfRange, pos, ti);
      return std::nullopt;
    }
    // "2nd quarter": match the locale's (or English) full quarter words.
    for (const LocaleSpec* ls : {&loc_, &english_locale()}) {
      for (int q = 1; q <= 4; ++q) {
        const std::string& w = ls->quarter_word(q);
        if (w.size() && text_.size() - pos >= w.size()) {
          std::string_view cand = text_.substr(pos, w.size());
          if (ascii_lower(cand) == ascii_lower(w)) {
            RawFields g = f;
            g.quarter = q;
            if (auto v = walk(ti + 1, pos + w.size(), g)) return v;
          }
        }
      }
      if (loc_.id() == "en") break;
    }
    note_error(ParseErrorKind::FieldOutOfRange, pos, ti);
    return std::nullopt;
  }

  std::optional<DateTimeValue> zone_name_field(size_t ti, size_t pos,
                                               const RawFields& f) {
    size_t run = word_run(pos);
    if (run == 0) {
      note_error(ParseErrorKind::FieldOutOfRange, pos, ti);
      return std::nullopt;
    }
    std::string_view name = text_.substr(pos, run);
    auto base = zone_name_offset(name);
    if (!base) {
      note_error(ParseErrorKind::FieldOutOfRange, pos, ti);
      return std::nullopt;
    }
    // GMT/UTC may carry an explicit offset: GMT+05:30, UTC-8.
    if (*base == 0 && pos + run < text_.size() &&
        (text_[pos + run] == '+' || text_[pos + run] == '-')) {
      size_t p = pos + run;
      int sign = text_[p] == '-' ? -1 : 1;
      ++p;
      int hours = 0, digs = 0;
      while (p < text_.size() && is_digit(text_[p]) && digs < 2) {
        hours = hours * 10 + (text_[p] - '0');
        ++p;
        ++digs;
      }
      if (digs > 0 && hours <= 14) {
        int mins = 0;
        size_t p2 = p;
        if (p2 + 3 <= text_.size() && text_[p2] == ':' &&
            is_digit(text_[p2 + 1]) && is_digit(text_[p2 + 2])) {
          mins = (text_[p2 + 1] - '0') * 10 + (text_[p2 + 2] - '0');
          p2 += 3;
        }
        if (mins < 60) {
          RawFields g = f;
          g.tz = sign * (hours * 60 + mins);
          if (auto v = walk(ti + 1, p2, g)) return v;
        }
      }
    }
    RawFields g = f;
    g.tz = *base;
    if (auto v = walk(ti + 1, pos + run, g)) return v;
    return std::nullopt;
  }

  std::optional<DateTimeValue> zone_offset_field(size_t ti, size_t pos,
                                                 const RawFields& f,
                                                 const FieldCode& fc) {
    auto fail = [&]() {
      note_error(ParseErrorKind::FieldOutOfRange, pos, ti);
      return std::optional<DateTimeValue>{};
    };
    if (fc.width <= 3) {
      // RFC 822: +hhmm
      if (pos + 5 > text_.size()) return fail();
      char s = text_[pos];
      if (s != '+' && s != '-') return fail();
      for (int k = 1; k <= 4; ++k)
        if (!is_digit(text_[pos + k])) return fail();
      int hh = (text_[pos + 1] - '0') * 10 + (text_[pos + 2] - '0');
      int mm = (text_[pos + 3] - '0') * 10 + (text_[pos + 4] - '0');
      if (hh > 14 || mm > 59) return fail();
      RawFields g = f;
      g.tz = (s == '-' ? -1 : 1) * (hh * 60 + mm);
      return walk(ti + 1, pos + 5, g);
    }
    if (fc.width == 4) {
      // localized GMT: GMT or GMT±hh:mm
      if (text_.compare(pos, 3, "GMT") != 0) return fail();
      size_t p = pos + 3;
      int off = 0;
      if (p + 6 <= text_.size() && (text_[p] == '+' || text_[p] == '-') &&
          is_digit(text_[p + 1]) && is_digit(text_[p + 2]) &&
          text_[p + 3] == ':' && is_digit(text_[p + 4]) &&
          is_digit(text_[p + 5])) {
        int hh = (text_[p + 1] - '0') * 10 + (text_[p + 2] - '0');
        int mm = (text_[p + 4] - '0') * 10 + (text_[p + 5] - '0');
        if (hh > 14 || mm > 59) return fail();
        off = (text_[p] == '-' ? -1 : 1) * (hh * 60 + mm);
        p += 6;
      }
      RawFields g = f;
      g.tz = off;
      return walk(ti + 1, p, g);
    }
    // ISO 8601: ±hh:mm or Z
    if (pos < text_.size() && (text_[pos] == 'Z' || text_[pos] == 'z')) {
      RawFields g = f;
      g.tz = 0;
      if (auto v = walk(ti + 1, pos + 1, g)) return v;
      return std::nullopt;
    }
    if (pos + 6 > text_.size()) return fail();
    char s = text_[pos];
    if (s != '+' && s != '-') return fail();
    if (!is_digit(text_[pos + 1]) || !is_digit(text_[pos + 2]) ||
        text_[pos + 3] != ':' || !is_digit(text_[pos + 4]) ||
        !is_digit(text_[pos + 5]))
      return fail();
    int hh = (text_[pos + 1] - '0') * 10 + (text_[pos + 2] - '0');
    int mm = (text_[pos + 4] - '0') * 10 + (text_[pos + 5] - '0');
    if (hh > 14 || mm > 59) return fail();
    RawFields g = f;
    g.tz = (s == '-' ? -1 : 1) * (hh * 60 + mm);
    return walk(ti + 1, pos + 6, g);
  }

  std::string_view text_;
  const FormatString& fs_;
  const LocaleSpec& loc_;
  ParseError deepest_{};
  bool have_error_ = false;
};

}  // namespace detail

inline ParseResult dateparse(std::string_view value_text,
                             const FormatString& fs, const LocaleSpec& loc) {
  detail::Parser p(value_text, fs, loc);
  return p.run();
}

inline ParseResult dateparse(std::string_view value_text,
                             std::string_view pattern, const LocaleSpec& loc) {
  return dateparse(value_text, tokenize_format(pattern), loc);
}

// Missing time fields become 0. If any date field was parsed the date is
// completed within 2000-01-01; a value with no date part at all lands on
// 1899-12-30. A quarter without a month selects the quarter's first month.
inline ResolvedInstant apply_defaults(const DateTimeValue& v) {
  ResolvedInstant r;
  std::optional<int> month = v.month;
  if (!month && v.quarter) month = (*v.quarter - 1) * 3 + 1;
  if (v.year || month || v.day) {
    r.year = v.year.value_or(2000);
    r.month = month.value_or(1);
    r.day = v.day.value_or(1);
  } else {
    r.year = 1899;
    r.month = 12;
    r.day = 30;
  }
  r.hour = v.hour.value_or(0);
  r.minute = v.minute.value_or(0);
  r.second = v.second.value_or(0);
  r.millisecond = v.millisecond.value_or(0);
  r.tz_offset_minutes = v.tz_offset_minutes;
  return r;
}

// Day of week for a civil date, Monday=1 .. Sunday=7.
inline int day_of_week(int y, int m, int d) {
  static const int t[] = {0, 3, 2, 5, 0, 3, 5, 1, 4, 6, 2, 4};
  if (m < 3) y -= 1;
  int dow = (y + y / 4 - y / 100 + y / 400 + t[m - 1] + d) % 7;  // 0=Sunday
  return dow == 0 ? 7 : dow;
}

namespace detail {
inline void pad_num(std::string& out, long v, int width) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%0*ld", width, v);
  out += buf;
}
}  // namespace detail

// Inverse of dateparse over resolved instants; used for validation
// round-trips and synthetic data generation.
inline std::string format_instant(const ResolvedInstant& r,
                                  const FormatString& fs,
                                  const LocaleSpec& loc) {
  std::string out;
  for (const auto& t : fs.tokens()) {
    if (!t.is_field) {
      out += t.literal;
      continue;
    }
    const FieldCode& fc = t.code;
    switch (fc.field) {
      case Field::Year:
        if (fc.width <= 2)
          detail::pad_num(out, ((r.year % 100) + 100) % 100, 2);
        else
          detail::pad_num(out, r.year, 4);
        break;
      case Field::Quarter: {
        int q = (r.month - 1) / 3 + 1;
        if (fc.width <= 2)
          detail::pad_num(out, q, fc.width);
        else if (fc.width == 3)
          out += "Q" + std::to_string(q);
        else
          out += loc.quarter_word(q);
        break;
      }
      case Field::Month:
        if (fc.width == 1)
          out += std::to_string(r.month);
        else if (fc.width == 2)
          detail::pad_num(out, r.month, 2);
        else if (fc.width == 3)
          out += loc.month(r.month).abbr;
        else
          out += loc.month(r.month).full;
        break;
      case Field::Day:
        if (fc.width == 1)
          out += std::to_string(r.day);
        else
          detail::pad_num(out, r.day, 2);
        break;
      case Field::Weekday: {
        int wd = day_of_week(r.year, r.month, r.day);
        out += fc.width >= 4 ? loc.weekday(wd).full : loc.weekday(wd).abbr;
        break;
      }
      case Field::Meridian:
        out += r.hour < 12 ? loc.am() : loc.pm();
        break;
      case Field::Hour12: {
        int h = r.hour % 12;
        if (h == 0) h = 12;
        if (fc.width == 1)
          out += std::to_string(h);
        else
          detail::pad_num(out, h, 2);
        break;
      }
      case Field::Hour24:
        if (fc.width == 1)
          out += std::to_string(r.hour);
        else
          detail::pad_num(out, r.hour, 2);
        break;
      case Field::Minute:
        detail::pad_num(out, r.minute, 2);
        break;
      case Field::Second:
        detail::pad_num(out, r.second, 2);
        break;
      case Field::Subsecond: {
        char buf[8];
        std::snprintf(buf, sizeof(buf), "%03d", r.millisecond);
        std::string frac(buf);
        if (fc.width < 3)
          frac = frac.substr(0, fc.width);
        else
          frac.append(fc.width - 3, '0');
        out += frac;
        break;
      }
      case Field::ZoneName:
        out += detail::zone_name_for_offset(r.tz_offset_minutes.value_or(0));
        break;
      case Field::ZoneOffset: {
        int off = r.tz_offset_minutes.value_or(0);
        char sign = off < 0 ? '-' : '+';
        int a = off < 0 ? -off : off;
        char buf[16];
        if (fc.width <= 3)
          std::snprintf(buf, sizeof(buf), "%c%02d%02d", sign, a / 60, a % 60);
        else if (fc.width == 4)
          std::snprintf(buf, sizeof(buf), "GMT%c%02d:%02d", sign, a / 60,
                        a % 60);
        else
          std::snprintf(buf, sizeof(buf), "%c%02d:%02d", sign, a / 60, a % 60);
        out += buf;
        break;
      }
    }
  }
  return out;
}

inline std::string iso8601(const ResolvedInstant& r, bool include_millis) {
  std::string out;
  detail::pad_num(out, r.year, 4);
  out += '-';
  detail::pad_num(out, r.month, 2);
  out += '-';
  detail::pad_num(out, r.day, 2);
  out += 'T';
  detail::pad_num(out, r.hour, 2);
  out += ':';
  detail::pad_num(out, r.minute, 2);
  out += ':';
  detail::pad_num(out, r.second, 2);
  if (include_millis) {
    out += '.';
    detail::pad_num(out, r.millisecond, 3);
  }
  if (r.tz_offset_minutes) {
    int off = *r.tz_offset_minutes;
    out += off < 0 ? '-' : '+';
    if (off < 0) off = -off;
    detail::pad_num(out, off / 60, 2);
    out += ':';
    detail::pad_num(out, off % 60, 2);
  }
  return out;
}

// Fraction of values that fail to parse under the given format.
inline double column_error_rate(const std::vector<std::string>& values,
                                const FormatString& fs,
                                const LocaleSpec& loc) {
  if (values.empty()) return 0.0;
  size_t bad = 0;
  for (const auto& v : values)
    if (!dateparse(v, fs, loc).ok()) ++bad;
  return static_cast<double>(bad) / static_cast<double>(values.size());
}

}  // namespace datefmt
