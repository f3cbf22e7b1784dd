#pragma once

// Minimum-description-length structure extraction: recursive enumeration of
// domain sequences that cover every sample value, redundancy and context
// pruning, description-length scoring, translation to format strings, and
// the four-key ranking.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "datefmt/corpus.hpp"
#include "datefmt/dateparse.hpp"
#include "datefmt/detection.hpp"
#include "datefmt/locale.hpp"

namespace datefmt {

enum class DomainKind {
  Year2,
  Year4,
  MonthNum,
  MonthWord,
  DayNum,
  WeekdayWord,
  Hour12,
  Hour24,
  Minute,
  Second,
  Millis,  // carries a fractional-digit width
  Meridian,
  TimeZoneName,
  TimeZoneOffset,
  Quarter,
  ConstantLiteral,
  Whitespace,
  Punctuation,
  BoundedNumber,  // carries a digit width; never translatable
};

enum class DatePart {
  None,
  Year,
  Month,
  Day,
  Weekday,
  Hour,
  Minute,
  Second,
  Millis,
  Meridian,
  Zone,
  Quarter,
};

namespace detail {

inline bool is_punct_char(char c) {
  return !(c >= '0' && c <= '9') && !is_word_byte(c) && c != ' ' && c != '\t';
}

inline size_t digit_run(std::string_view s, size_t pos) {
  size_t j = pos;
  while (j < s.size() && s[j] >= '0' && s[j] <= '9') ++j;
  return j - pos;
}

inline size_t alpha_run(std::string_view s, size_t pos) {
  size_t j = pos;
  while (j < s.size() && is_word_byte(s[j])) ++j;
  return j - pos;
}

inline long digits_value(std::string_view s, size_t pos, size_t len) {
  long v = 0;
  for (size_t i = 0; i < len; ++i) v = v * 10 + (s[pos + i] - '0');
  return v;
}

}  // namespace detail

struct DomainMatch {
  int length;
  bool via_english = false;
};

struct Domain {
  DomainKind kind;
  int width = 0;      // Millis / BoundedNumber digit count
  std::string text;   // ConstantLiteral

  bool operator==(const Domain&) const = default;

  DatePart part() const {
    switch (kind) {
      case DomainKind::Year2:
      case DomainKind::Year4: return DatePart::Year;
      case DomainKind::MonthNum:
      case DomainKind::MonthWord: return DatePart::Month;
      case DomainKind::DayNum: return DatePart::Day;
      case DomainKind::WeekdayWord: return DatePart::Weekday;
      case DomainKind::Hour12:
      case DomainKind::Hour24: return DatePart::Hour;
      case DomainKind::Minute: return DatePart::Minute;
      case DomainKind::Second: return DatePart::Second;
      case DomainKind::Millis: return DatePart::Millis;
      case DomainKind::Meridian: return DatePart::Meridian;
      case DomainKind::TimeZoneName:
      case DomainKind::TimeZoneOffset: return DatePart::Zone;
      case DomainKind::Quarter: return DatePart::Quarter;
      default: return DatePart::None;
    }
  }

  // A domain carrying a date part may appear at most once per structure.
  bool prunable() const { return part() != DatePart::None; }

  // Numeric kinds cannot be adjacent without a separator (except the
  // explicit composite steps the enumerator knows about).
  bool numeric() const {
    switch (kind) {
      case DomainKind::Year2:
      case DomainKind::Year4:
      case DomainKind::MonthNum:
      case DomainKind::DayNum:
      case DomainKind::Hour12:
      case DomainKind::Hour24:
      case DomainKind::Minute:
      case DomainKind::Second:
      case DomainKind::Millis:
      case DomainKind::BoundedNumber: return true;
      default: return false;
    }
  }

  int max_len() const {
    switch (kind) {
      case DomainKind::Year2: return 2;
      case DomainKind::Year4: return 4;
      case DomainKind::MonthNum:
      case DomainKind::DayNum:
      case DomainKind::Hour12:
      case DomainKind::Hour24:
      case DomainKind::Minute:
      case DomainKind::Second: return 2;
      case DomainKind::Millis:
      case DomainKind::BoundedNumber: return width;
      case DomainKind::MonthWord: return 16;
      case DomainKind::WeekdayWord: return 16;
      case DomainKind::Meridian: return 8;
      case DomainKind::TimeZoneName: return 8;
      case DomainKind::TimeZoneOffset: return 6;
      case DomainKind::Quarter: return 16;
      case DomainKind::ConstantLiteral: return static_cast<int>(text.size());
      case DomainKind::Whitespace: return 8;
      case DomainKind::Punctuation: return 1;
    }
    return 0;
  }

  // Possible match lengths at `pos`. Numeric domains consume whole digit
  // runs; word domains consume whole alpha runs (plus an optional trailing
  // period).
  std::vector<DomainMatch> match(std::string_view v, size_t pos,
                                 const LocaleSpec& loc) const {
    std::vector<DomainMatch> out;
    if (pos >= v.size()) return out;
    switch (kind) {
      case DomainKind::Year4: {
        if (detail::digit_run(v, pos) == 4) out.push_back({4});
        break;
      }
      case DomainKind::Year2: {
        if (detail::digit_run(v, pos) == 2) out.push_back({2});
        break;
      }
      case DomainKind::MonthNum:
      case DomainKind::DayNum:
      case DomainKind::Hour12:
      case DomainKind::Hour24:
      case DomainKind::Minute:
      case DomainKind::Second: {
        size_t run = detail::digit_run(v, pos);
        if (run < 1 || run > 2) break;
        if ((kind == DomainKind::Minute || kind == DomainKind::Second) &&
            run != 2)
          break;
        long val = detail::digits_value(v, pos, run);
        long lo = 1, hi = 12;
        if (kind == DomainKind::DayNum) hi = 31;
        if (kind == DomainKind::Hour24) { lo = 0; hi = 23; }
        if (kind == DomainKind::Minute || kind == DomainKind::Second) {
          lo = 0;
          hi = 59;
        }
        if (val >= lo && val <= hi) out.push_back({static_cast<int>(run)});
        break;
      }
      case DomainKind::Millis:
      case DomainKind::BoundedNumber: {
        if (detail::digit_run(v, pos) == static_cast<size_t>(width))
          out.push_back({width});
        break;
      }
      case DomainKind::MonthWord:
      case DomainKind::WeekdayWord: {
        size_t run = detail::alpha_run(v, pos);
        if (run < 2 || run > 12) break;
        bool dotted = pos + run < v.size() && v[pos + run] == '.';
        for (size_t len : {run, dotted ? run + 1 : run}) {
          std::string_view w = v.substr(pos, len);
          auto m = kind == DomainKind::MonthWord ? match_month(w, loc)
                                                 : match_weekday(w, loc);
          if (m) {
            out.push_back({static_cast<int>(len), m->via_english});
            break;
          }
        }
        break;
      }
      case DomainKind::Meridian: {
        size_t end = pos;
        while (end < v.size() && (detail::is_word_byte(v[end]) || v[end] == '.'))
          ++end;
        if (end == pos) break;
        // prefer the longer two-word spelling ("a. m.") when present
        if (v[end - 1] == '.' && end < v.size() && v[end] == ' ') {
          size_t e2 = end + 1;
          while (e2 < v.size() &&
                 (detail::is_word_byte(v[e2]) || v[e2] == '.'))
            ++e2;
          if (e2 > end + 1 && match_meridian(v.substr(pos, e2 - pos), loc)) {
            out.push_back({static_cast<int>(e2 - pos)});
            break;
          }
        }
        if (match_meridian(v.substr(pos, end - pos), loc))
          out.push_back({static_cast<int>(end - pos)});
        break;
      }
      case DomainKind::TimeZoneName: {
        size_t run = detail::alpha_run(v, pos);
        if (run >= 2 && run <= 5 &&
            detail::zone_name_offset(v.substr(pos, run)))
          out.push_back({static_cast<int>(run)});
        break;
      }
      case DomainKind::TimeZoneOffset: {
        if (v[pos] != '+' && v[pos] != '-') break;
        size_t run = detail::digit_run(v, pos + 1);
        if (run == 4) {
          long val = detail::digits_value(v, pos + 1, 4);
          if (val / 100 <= 14 && val % 100 <= 59) out.push_back({5});
        } else if (run == 2 && pos + 6 <= v.size() && v[pos + 3] == ':' &&
                   detail::digit_run(v, pos + 4) == 2) {
          long hh = detail::digits_value(v, pos + 1, 2);
          long mm = detail::digits_value(v, pos + 4, 2);
          if (hh <= 14 && mm <= 59) out.push_back({6});
        }
        break;
      }
      case DomainKind::Quarter: {
        if ((v[pos] == 'Q' || v[pos] == 'q') && pos + 1 < v.size() &&
            v[pos + 1] >= '1' && v[pos + 1] <= '4') {
          size_t run = detail::digit_run(v, pos + 1);
          if (run == 1) out.push_back({2});
          break;
        }
        for (const LocaleSpec* ls : {&loc, &english_locale()}) {
          for (int q = 1; q <= 4; ++q) {
            const std::string& w = ls->quarter_word(q);
            if (v.size() - pos >= w.size() &&
                ascii_lower(v.substr(pos, w.size())) == ascii_lower(w)) {
              out.push_back({static_cast<int>(w.size()), ls != &loc});
              return out;
            }
          }
          if (loc.id() == "en") break;
        }
        break;
      }
      case DomainKind::ConstantLiteral: {
        if (!text.empty() && pos + text.size() <= v.size() &&
            v.compare(pos, text.size(), text) == 0)
          out.push_back({static_cast<int>(text.size())});
        break;
      }
      case DomainKind::Whitespace: {
        size_t j = pos;
        while (j < v.size() && (v[j] == ' ' || v[j] == '\t')) ++j;
        if (j > pos) out.push_back({static_cast<int>(j - pos)});
        break;
      }
      case DomainKind::Punctuation: {
        if (detail::is_punct_char(v[pos])) out.push_back({1});
        break;
      }
    }
    return out;
  }

  // Encoding size of one matched value; the data cost is log2 of this.
  double cardinality(std::string_view /*matched*/) const {
    switch (kind) {
      case DomainKind::Year2: return 100;
      case DomainKind::Year4: return 10000;
      case DomainKind::MonthNum:
      case DomainKind::MonthWord: return 12;
      case DomainKind::DayNum: return 31;
      case DomainKind::WeekdayWord: return 7;
      case DomainKind::Hour12: return 12;
      case DomainKind::Hour24: return 24;
      case DomainKind::Minute:
      case DomainKind::Second: return 60;
      case DomainKind::Millis:
      case DomainKind::BoundedNumber: {
        double c = 1;
        for (int i = 0; i < width; ++i) c *= 10;
        return c;
      }
      case DomainKind::Meridian: return 2;
      case DomainKind::TimeZoneName: return 17;
      case DomainKind::TimeZoneOffset: return 2880;
      case DomainKind::Quarter: return 4;
      case DomainKind::ConstantLiteral: return 1;
      case DomainKind::Whitespace: return 1;
      case DomainKind::Punctuation: return 20;
    }
    return 1;
  }

  // Model cost: a fixed header per domain, literal bytes for constants, and
  // a penalty that keeps unconstrained numbers behind the date fields.
  double header_bits() const {
    double bits = 8.0;
    if (kind == DomainKind::ConstantLiteral) bits += 8.0 * text.size();
    if (kind == DomainKind::BoundedNumber) bits += 4.0;
    return bits;
  }
};

// Accumulated per-domain statistics over the sample.
struct DomainStats {
  std::map<std::string, int> texts;
  bool via_english = false;

  void add(std::string_view t, bool english) {
    texts[std::string(t)] += 1;
    via_english = via_english || english;
  }
  const std::string& most_common() const {
    static const std::string empty;
    const std::string* best = &empty;
    int n = -1;
    for (const auto& [t, c] : texts)
      if (c > n) {
        best = &t;
        n = c;
      }
    return *best;
  }
};

struct Structure {
  std::vector<Domain> domains;
  std::vector<DomainStats> stats;  // parallel to domains
  double description_length = 0.0;
};

// True when a second domain of the candidate's date part already occurs, or
// the candidate's sequencing context is unmet (meridians need a 12-hour
// hour; minutes need an hour; seconds need minutes; subseconds need
// seconds).
inline bool is_redundant(const Domain& candidate,
                         const std::vector<Domain>& prefix) {
  DatePart p = candidate.part();
  if (p != DatePart::None)
    for (const auto& d : prefix)
      if (d.part() == p) return true;
  auto has_part = [&](DatePart q) {
    for (const auto& d : prefix)
      if (d.part() == q) return true;
    return false;
  };
  auto has_kind = [&](DomainKind k) {
    for (const auto& d : prefix)
      if (d.kind == k) return true;
    return false;
  };
  switch (candidate.kind) {
    case DomainKind::Meridian:
      if (!has_kind(DomainKind::Hour12)) return true;
      break;
    case DomainKind::Minute:
      if (!has_part(DatePart::Hour)) return true;
      break;
    case DomainKind::Second:
      if (!has_part(DatePart::Minute)) return true;
      break;
    case DomainKind::Millis:
      if (!has_part(DatePart::Second)) return true;
      break;
    default:
      break;
  }
  return false;
}

namespace detail {

// One deterministic segmentation of a value under a structure: each domain
// takes its longest feasible match.
inline bool segment_value(std::string_view v, const std::vector<Domain>& ds,
                          size_t di, size_t pos, const LocaleSpec& loc,
                          std::vector<std::pair<int, bool>>& lens) {
  if (di == ds.size()) return pos == v.size();
  auto ms = ds[di].match(v, pos, loc);
  std::sort(ms.begin(), ms.end(),
            [](const DomainMatch& a, const DomainMatch& b) {
              return a.length > b.length;
            });
  for (const auto& m : ms) {
    lens.push_back({m.length, m.via_english});
    if (segment_value(v, ds, di + 1, pos + m.length, loc, lens)) return true;
    lens.pop_back();
  }
  return false;
}

}  // namespace detail

// DL = model cost (headers) + data cost (sum over values and domains of
// log2(cardinality of the matched text)).
inline double description_length(const Structure& s,
                                 const std::vector<std::string>& values,
                                 const LocaleSpec& loc) {
  double bits = 0.0;
  for (const auto& d : s.domains) bits += d.header_bits();
  for (const auto& v : values) {
    std::vector<std::pair<int, bool>> lens;
    if (!detail::segment_value(v, s.domains, 0, 0, loc, lens)) continue;
    size_t pos = 0;
    for (size_t i = 0; i < s.domains.size(); ++i) {
      std::string_view matched = std::string_view(v).substr(pos, lens[i].first);
      bits += std::log2(s.domains[i].cardinality(matched));
      pos += lens[i].first;
    }
  }
  return bits;
}

namespace detail {

struct EnumLimits {
  size_t max_structures = 4096;
  size_t max_nodes = 500000;
  size_t max_depth = 40;
};

class Enumerator {
 public:
  Enumerator(const std::vector<std::string>& values, const LocaleSpec& loc,
             EnumLimits limits = {})
      : values_(values), loc_(loc), limits_(limits) {}

  std::vector<Structure> run() {
    std::vector<std::vector<uint16_t>> pos(values_.size(),
                                           std::vector<uint16_t>{0});
    std::vector<Domain> prefix;
    dfs(pos, prefix);
    finalize();
    return std::move(results_);
  }

 private:
  // static domain catalog, in a fixed order
  static const std::vector<Domain>& catalog() {
    static const std::vector<Domain> c = [] {
      std::vector<Domain> v;
      auto add = [&](DomainKind k, int w = 0) { v.push_back({k, w, ""}); };
      add(DomainKind::Year4);
      add(DomainKind::Year2);
      add(DomainKind::MonthNum);
      add(DomainKind::MonthWord);
      add(DomainKind::DayNum);
      add(DomainKind::WeekdayWord);
      add(DomainKind::Hour24);
      add(DomainKind::Hour12);
      add(DomainKind::Minute);
      add(DomainKind::Second);
      add(DomainKind::Millis, 1);
      add(DomainKind::Millis, 2);
      add(DomainKind::Millis, 3);
      add(DomainKind::Millis, 6);
      add(DomainKind::Meridian);
      add(DomainKind::TimeZoneName);
      add(DomainKind::TimeZoneOffset);
      add(DomainKind::Quarter);
      add(DomainKind::Whitespace);
      add(DomainKind::Punctuation);
      add(DomainKind::BoundedNumber, 1);
      add(DomainKind::BoundedNumber, 2);
      add(DomainKind::BoundedNumber, 3);
      add(DomainKind::BoundedNumber, 4);
      return v;
    }();
    return c;
  }

  using PosSets = std::vector<std::vector<uint16_t>>;

  // Advances every value through the domain; empty result when any value
  // has no match.
  bool advance(const Domain& d, const PosSets& pos, PosSets& out) {
    out.assign(values_.size(), {});
    for (size_t vi = 0; vi < values_.size(); ++vi) {
      const std::string& v = values_[vi];
      std::set<uint16_t> next;
      for (uint16_t p : pos[vi]) {
        if (p >= v.size()) continue;
        for (const auto& m : d.match(v, p, loc_))
          next.insert(static_cast<uint16_t>(p + m.length));
      }
      if (next.empty()) return false;
      out[vi].assign(next.begin(), next.end());
    }
    return true;
  }

  bool all_done(const PosSets& pos) const {
    for (size_t vi = 0; vi < values_.size(); ++vi) {
      bool done = false;
      for (uint16_t p : pos[vi])
        if (p == values_[vi].size()) done = true;
      if (!done) return false;
    }
    return true;
  }

  void dfs(const PosSets& pos, std::vector<Domain>& prefix) {
    if (results_.size() >= limits_.max_structures) return;
    if (++nodes_ > limits_.max_nodes) return;
    if (!prefix.empty() && all_done(pos)) {
      Structure s;
      s.domains = prefix;
      results_.push_back(std::move(s));
      return;
    }
    if (prefix.size() >= limits_.max_depth) return;

    const Domain* last = prefix.empty() ? nullptr : &prefix.back();

    // dynamic constant-literal candidates from the first value
    std::vector<Domain> lits;
    {
      const std::string& anchor = values_.front();
      uint16_t p0 = pos.front().front();
      if (p0 < anchor.size()) {
        char c = anchor[p0];
        if (!(c >= '0' && c <= '9')) {
          size_t j = p0;
          if (is_word_byte(c)) {
            while (j < anchor.size() && is_word_byte(anchor[j])) ++j;
          } else {
            while (j < anchor.size() && !(anchor[j] >= '0' && anchor[j] <= '9') &&
                   !is_word_byte(anchor[j]))
              ++j;
          }
          std::string run = anchor.substr(p0, j - p0);
          // "Q" directly before a quarter digit belongs to the quarter
          // lexeme, not to a literal
          bool quarter_prefix =
              (run == "Q" || run == "q") && j < anchor.size() &&
              anchor[j] >= '1' && anchor[j] <= '4';
          if (!quarter_prefix) {
            lits.push_back({DomainKind::ConstantLiteral, 0, run});
            if (run.size() > 1)
              lits.push_back({DomainKind::ConstantLiteral, 0, run.substr(0, 1)});
          }
        }
      }
    }

    // which literal advances succeed (used to suppress dominated
    // whitespace/punctuation branches)
    std::vector<PosSets> lit_next(lits.size());
    std::vector<bool> lit_ok(lits.size(), false);
    for (size_t i = 0; i < lits.size(); ++i)
      lit_ok[i] = advance(lits[i], pos, lit_next[i]);

    auto try_domain = [&](const Domain& d, const PosSets& next) {
      prefix.push_back(d);
      dfs(next, prefix);
      prefix.pop_back();
    };

    for (size_t i = 0; i < lits.size(); ++i) {
      if (!lit_ok[i]) continue;
      if (last && last->kind == DomainKind::ConstantLiteral) continue;
      try_domain(lits[i], lit_next[i]);
      if (results_.size() >= limits_.max_structures) return;
    }

    for (const Domain& d : catalog()) {
      if (is_redundant(d, prefix)) continue;
      if (last) {
        if (d.numeric() && last->numeric()) continue;
        if (d.kind == DomainKind::Whitespace &&
            last->kind == DomainKind::Whitespace)
          continue;
        if (d.kind == DomainKind::Punctuation &&
            last->kind == DomainKind::Punctuation)
          continue;
      }
      PosSets next;
      if (!advance(d, pos, next)) continue;
      // skip separator domains dominated by an equivalent constant literal
      if (d.kind == DomainKind::Whitespace ||
          d.kind == DomainKind::Punctuation) {
        bool dominated = false;
        for (size_t i = 0; i < lits.size(); ++i)
          if (lit_ok[i] && lit_next[i] == next &&
              !(last && last->kind == DomainKind::ConstantLiteral))
            dominated = true;
        if (dominated) continue;
      }
      try_domain(d, next);
      if (results_.size() >= limits_.max_structures) return;
    }

    // composite digit-run splits for undelimited columns
    composites(pos, prefix);
  }

  void composites(const PosSets& pos, std::vector<Domain>& prefix) {
    const Domain* last = prefix.empty() ? nullptr : &prefix.back();
    if (last && last->numeric()) return;
    // MMyyyy and HHmmss over six-digit runs
    static const std::vector<std::vector<Domain>> kComposites = {
        {{DomainKind::MonthNum, 0, ""}, {DomainKind::Year4, 0, ""}},
        {{DomainKind::Hour24, 0, ""},
         {DomainKind::Minute, 0, ""},
         {DomainKind::Second, 0, ""}},
    };
    for (const auto& comp : kComposites) {
      bool redundant = false;
      std::vector<Domain> probe = prefix;
      for (const auto& d : comp) {
        if (is_redundant(d, probe)) {
          redundant = true;
          break;
        }
        probe.push_back(d);
      }
      if (redundant) continue;
      PosSets cur = pos;
      // every value must sit on a six-digit run
      bool viable = true;
      for (size_t vi = 0; vi < values_.size() && viable; ++vi) {
        bool any = false;
        for (uint16_t p : cur[vi])
          if (digit_run(values_[vi], p) == 6) any = true;
        viable = any;
      }
      if (!viable) continue;
      // advance through fixed widths 2/4 or 2/2/2
      std::vector<int> widths =
          comp.size() == 2 ? std::vector<int>{2, 4} : std::vector<int>{2, 2, 2};
      bool ok = true;
      for (size_t k = 0; k < comp.size() && ok; ++k) {
        PosSets next(values_.size());
        for (size_t vi = 0; vi < values_.size() && ok; ++vi) {
          std::set<uint16_t> n;
          for (uint16_t p : cur[vi]) {
            if (k == 0 && digit_run(values_[vi], p) != 6) continue;
            bool fits = false;
            if (p + widths[k] <= values_[vi].size() &&
                digit_run(values_[vi], p) >= static_cast<size_t>(widths[k])) {
              long val = digits_value(values_[vi], p, widths[k]);
              switch (comp[k].kind) {
                case DomainKind::MonthNum: fits = val >= 1 && val <= 12; break;
                case DomainKind::Year4: fits = true; break;
                case DomainKind::Hour24: fits = val <= 23; break;
                case DomainKind::Minute:
                case DomainKind::Second: fits = val <= 59; break;
                default: fits = false;
              }
            }
            if (fits) n.insert(static_cast<uint16_t>(p + widths[k]));
          }
          if (n.empty()) ok = false;
          else next[vi].assign(n.begin(), n.end());
        }
        if (ok) cur = std::move(next);
      }
      if (!ok) continue;
      for (const auto& d : comp) prefix.push_back(d);
      dfs(cur, prefix);
      for (size_t k = 0; k < comp.size(); ++k) prefix.pop_back();
      if (results_.size() >= limits_.max_structures) return;
    }
  }

  // stats + description length for every emitted structure
  void finalize() {
    for (auto& s : results_) {
      s.stats.assign(s.domains.size(), {});
      for (const auto& v : values_) {
        std::vector<std::pair<int, bool>> lens;
        if (!segment_value(v, s.domains, 0, 0, loc_, lens)) continue;
        size_t p = 0;
        for (size_t i = 0; i < s.domains.size(); ++i) {
          s.stats[i].add(std::string_view(v).substr(p, lens[i].first),
                         lens[i].second);
          p += lens[i].first;
        }
      }
      s.description_length = description_length(s, values_, loc_);
    }
  }

  const std::vector<std::string>& values_;
  const LocaleSpec& loc_;
  EnumLimits limits_;
  std::vector<Structure> results_;
  size_t nodes_ = 0;
};

}  // namespace detail

// All maximal structures that fully cover every sample value. Deterministic:
// fixed catalog order, depth-first.
inline std::vector<Structure> enumerate_structures(
    const std::vector<std::string>& sample_values, const LocaleSpec& loc) {
  if (sample_values.empty())
    throw std::invalid_argument("enumerate_structures: empty sample");
  detail::Enumerator e(sample_values, loc);
  return e.run();
}

// Structure-level pruning: incomplete date parts and two-digit years in
// punctuation-digit ambiguity are dropped.
inline bool structure_survives_global_prune(const Structure& s) {
  bool year = false, month = false, day = false, hour = false;
  for (const auto& d : s.domains) {
    switch (d.part()) {
      case DatePart::Year: year = true; break;
      case DatePart::Month: month = true; break;
      case DatePart::Day: day = true; break;
      case DatePart::Hour: hour = true; break;
      default: break;
    }
  }
  if (day && !month) return false;
  if (month && !(year || day)) return false;
  if (!year && !month && !hour) return false;
  // a two-digit year is only credible when anchored to a month or day;
  // anything else is a minutes/seconds slot in disguise
  for (const auto& d : s.domains)
    if (d.kind == DomainKind::Year2 && !month && !day) return false;
  // Year2 next to punctuation next to an unconstrained number
  auto punctish = [](const Domain& d) {
    if (d.kind == DomainKind::Punctuation) return true;
    if (d.kind != DomainKind::ConstantLiteral) return false;
    for (char c : d.text)
      if (!detail::is_punct_char(c)) return false;
    return !d.text.empty();
  };
  for (size_t i = 0; i + 3 <= s.domains.size(); ++i) {
    const Domain& a = s.domains[i];
    const Domain& b = s.domains[i + 1];
    const Domain& c = s.domains[i + 2];
    if (!punctish(b)) continue;
    bool ay = a.kind == DomainKind::Year2, cy = c.kind == DomainKind::Year2;
    bool an = a.kind == DomainKind::BoundedNumber,
         cn = c.kind == DomainKind::BoundedNumber;
    if ((ay && cn) || (an && cy)) return false;
  }
  return true;
}

inline std::vector<Structure> global_prune(std::vector<Structure> candidates) {
  std::vector<Structure> out;
  for (auto& s : candidates)
    if (structure_survives_global_prune(s)) out.push_back(std::move(s));
  return out;
}

class UntranslatableDomain : public std::runtime_error {
 public:
  explicit UntranslatableDomain(const std::string& what)
      : std::runtime_error(what) {}
};

// Maps a structure onto the format language using the accumulated
// statistics; constant literals that spell a month or weekday are tagged
// with that date part.
inline FormatString unparameterize(const Structure& s, const LocaleSpec& loc) {
  std::vector<FormatToken> toks;
  bool month_used = false, weekday_used = false;
  for (const auto& d : s.domains)
    if (d.part() == DatePart::Month) month_used = true;
    else if (d.part() == DatePart::Weekday) weekday_used = true;
  for (size_t i = 0; i < s.domains.size(); ++i) {
    const Domain& d = s.domains[i];
    const DomainStats& st = s.stats[i];
    switch (d.kind) {
      case DomainKind::Year2: toks.push_back(FormatToken::field(Field::Year, 2)); break;
      case DomainKind::Year4: toks.push_back(FormatToken::field(Field::Year, 4)); break;
      case DomainKind::MonthNum: toks.push_back(FormatToken::field(Field::Month, 2)); break;
      case DomainKind::MonthWord: {
        bool all_full = !st.texts.empty();
        for (const auto& [t, c] : st.texts) {
          auto m = match_month(t, loc);
          if (!m || !is_full_month_form(t, m->index, loc)) all_full = false;
        }
        toks.push_back(FormatToken::field(Field::Month, all_full ? 4 : 3));
        break;
      }
      case DomainKind::DayNum: toks.push_back(FormatToken::field(Field::Day, 2)); break;
      case DomainKind::WeekdayWord: {
        bool all_full = !st.texts.empty();
        for (const auto& [t, c] : st.texts) {
          auto m = match_weekday(t, loc);
          if (!m || !is_full_weekday_form(t, m->index, loc)) all_full = false;
        }
        toks.push_back(FormatToken::field(Field::Weekday, all_full ? 4 : 3));
        break;
      }
      case DomainKind::Hour12: toks.push_back(FormatToken::field(Field::Hour12, 2)); break;
      case DomainKind::Hour24: toks.push_back(FormatToken::field(Field::Hour24, 2)); break;
      case DomainKind::Minute: toks.push_back(FormatToken::field(Field::Minute, 2)); break;
      case DomainKind::Second: toks.push_back(FormatToken::field(Field::Second, 2)); break;
      case DomainKind::Millis:
        toks.push_back(FormatToken::field(Field::Subsecond, d.width));
        break;
      case DomainKind::Meridian: toks.push_back(FormatToken::field(Field::Meridian, 1)); break;
      case DomainKind::TimeZoneName:
        toks.push_back(FormatToken::field(Field::ZoneName, 3));
        break;
      case DomainKind::TimeZoneOffset: {
        bool iso = st.most_common().find(':') != std::string::npos;
        toks.push_back(FormatToken::field(Field::ZoneOffset, iso ? 5 : 1));
        break;
      }
      case DomainKind::Quarter: {
        const std::string& t = st.most_common();
        bool letter = !t.empty() && (t[0] == 'Q' || t[0] == 'q');
        toks.push_back(FormatToken::field(Field::Quarter, letter ? 3 : 4));
        break;
      }
      case DomainKind::ConstantLiteral: {
        // constant month/weekday words become tagged date parts
        if (!month_used) {
          if (auto m = match_month(d.text, loc)) {
            toks.push_back(FormatToken::field(
                Field::Month, is_full_month_form(d.text, m->index, loc) ? 4 : 3));
            month_used = true;
            break;
          }
        }
        if (!weekday_used) {
          if (auto w = match_weekday(d.text, loc)) {
            toks.push_back(FormatToken::field(
                Field::Weekday,
                is_full_weekday_form(d.text, w->index, loc) ? 4 : 3));
            weekday_used = true;
            break;
          }
        }
        toks.push_back(FormatToken::lit(d.text));
        break;
      }
      case DomainKind::Whitespace:
      case DomainKind::Punctuation: {
        const std::string& t = st.most_common();
        toks.push_back(FormatToken::lit(t.empty() ? std::string(" ") : t));
        break;
      }
      case DomainKind::BoundedNumber:
        throw UntranslatableDomain("unconstrained number has no field code");
    }
  }
  return FormatString(std::move(toks));
}

// --- ranking ---------------------------------------------------------------

namespace detail {

inline int significance_rank(Field f, int width) {
  switch (f) {
    case Field::Year: return width >= 3 ? 0 : 1;
    case Field::Month: return 2;
    case Field::Day: return 3;
    case Field::Hour12:
    case Field::Hour24: return 4;
    case Field::Minute: return 5;
    case Field::Second: return 6;
    case Field::Subsecond: return 7;
    case Field::ZoneName:
    case Field::ZoneOffset: return 8;
    case Field::Quarter: return 9;
    case Field::Weekday: return 10;
    case Field::Meridian: return 99;  // does not contribute
  }
  return 99;
}

inline std::vector<int> significance_vector(const FormatString& fs) {
  std::vector<int> v;
  for (const auto& t : fs.tokens())
    if (t.is_field) {
      int r = significance_rank(t.code.field, t.code.width);
      if (r != 99) v.push_back(r);
    }
  std::sort(v.begin(), v.end());
  return v;
}

// More significant parts first; with a common prefix, more parts win.
inline bool significance_greater(const std::vector<int>& a,
                                 const std::vector<int>& b) {
  size_t n = std::min(a.size(), b.size());
  for (size_t i = 0; i < n; ++i)
    if (a[i] != b[i]) return a[i] < b[i];
  return a.size() > b.size();
}

}  // namespace detail

struct MdlCandidate {
  FormatString format;
  std::string locale_id;
  double description_length = 0.0;
  double error_rate = 0.0;
};

// Four-key order: parsing accuracy, date-part significance, locale match,
// MDL compactness; ties broken by pattern text.
inline void rank_candidates(std::vector<MdlCandidate>& cands,
                            const std::string& requested_locale) {
  struct Key {
    double err;
    std::vector<int> sig;
    int locale_mismatch;
    double dl;
    std::string text;
  };
  std::vector<std::pair<Key, size_t>> keyed;
  keyed.reserve(cands.size());
  for (size_t i = 0; i < cands.size(); ++i) {
    keyed.push_back(
        {{cands[i].error_rate, detail::significance_vector(cands[i].format),
          cands[i].locale_id == requested_locale ? 0 : 1,
          cands[i].description_length, render_format(cands[i].format)},
         i});
  }
  std::stable_sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    if (a.first.err != b.first.err) return a.first.err < b.first.err;
    if (a.first.sig != b.first.sig)
      return detail::significance_greater(a.first.sig, b.first.sig);
    if (a.first.locale_mismatch != b.first.locale_mismatch)
      return a.first.locale_mismatch < b.first.locale_mismatch;
    if (a.first.dl != b.first.dl) return a.first.dl < b.first.dl;
    return a.first.text < b.first.text;
  });
  std::vector<MdlCandidate> out;
  out.reserve(cands.size());
  for (auto& [k, i] : keyed) out.push_back(std::move(cands[i]));
  cands = std::move(out);
}

// End-to-end MDL detection: enumerate over the sample, prune, translate,
// validate against the full column, rank.
inline DetectionResult detect_mdl(const ColumnSample& sample,
                                  const LocaleSpec& loc,
                                  const DetectOptions& opts = {}) {
  DetectionResult res;
  res.engine = "mdl";
  res.column = sample.column_name;
  auto t0 = std::chrono::steady_clock::now();

  std::vector<Structure> structures;
  if (!sample.sample.empty())
    structures = enumerate_structures(sample.sample, loc);
  structures = global_prune(std::move(structures));

  struct Entry {
    MdlCandidate cand;
    bool seen_word_via_english = false;
  };
  std::map<std::string, Entry> by_text;  // dedupe on canonical pattern
  for (const auto& s : structures) {
    FormatString fs;
    try {
      fs = unparameterize(s, loc);
    } catch (const UntranslatableDomain&) {
      continue;
    }
    bool via_english = false;
    bool has_word = false;
    for (size_t i = 0; i < s.domains.size(); ++i) {
      DomainKind k = s.domains[i].kind;
      if (k == DomainKind::MonthWord || k == DomainKind::WeekdayWord ||
          k == DomainKind::Meridian || k == DomainKind::Quarter) {
        has_word = true;
        via_english = via_english || s.stats[i].via_english;
      }
    }
    std::string text = render_format(fs);
    auto it = by_text.find(text);
    if (it == by_text.end() ||
        s.description_length < it->second.cand.description_length) {
      Entry e;
      e.cand.format = fs;
      e.cand.description_length = s.description_length;
      e.cand.locale_id = (has_word && via_english) ? "en" : loc.id();
      by_text[text] = std::move(e);
    }
  }
  auto t1 = std::chrono::steady_clock::now();

  std::vector<MdlCandidate> cands;
  for (auto& [text, e] : by_text) {
    e.cand.error_rate =
        column_error_rate(sample.non_null_values, e.cand.format, loc);
    if (e.cand.error_rate <= opts.max_error_rate)
      cands.push_back(std::move(e.cand));
  }
  rank_candidates(cands, loc.id());
  auto t2 = std::chrono::steady_clock::now();

  for (auto& c : cands) {
    FormatCandidate fc;
    fc.format = c.format;
    fc.locale_id = c.locale_id;
    fc.error_rate = c.error_rate;
    fc.score = c.description_length;
    res.candidates.push_back(std::move(fc));
  }
  res.analysis_micros =
      std::chrono::duration_cast<std::chrono::microseconds>(t1 - t0).count();
  res.validation_micros =
      std::chrono::duration_cast<std::chrono::microseconds>(t2 - t1).count();
  return res;
}

}  // namespace datefmt
