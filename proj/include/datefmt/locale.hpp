#pragma once

// Locale tables for month names, weekday names, meridian markers and their
// abbreviations. Matching is case-insensitive (ASCII fold), tolerates a
// trailing period on abbreviations, and falls back to English when the
// requested locale has no match.
//
// Data file format: UTF-8, line-oriented key=value with keys
//   month.N.full, month.N.abbr (N in 1..12)
//   weekday.N.full, weekday.N.abbr (N in 1..7, Monday=1)
//   am, pm, quarter.N (N in 1..4)
// Repeating a key appends an extra accepted variant; the first occurrence
// is the canonical form used for rendering.

#include <array>
#include <istream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace datefmt {

inline std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  return out;
}

enum class MeridianMark { AM, PM };

struct NameSlot {
  std::string full;                  // canonical full form
  std::string abbr;                  // canonical abbreviation
  std::vector<std::string> extras;   // additional accepted spellings
};

class LocaleSpec {
 public:
  LocaleSpec() = default;
  explicit LocaleSpec(std::string id) : id_(std::move(id)) {}

  const std::string& id() const { return id_; }

  const NameSlot& month(int i) const { return months_.at(i - 1); }        // 1..12
  const NameSlot& weekday(int i) const { return weekdays_.at(i - 1); }    // 1..7
  const std::string& am() const { return am_.empty() ? empty_ : am_[0]; }
  const std::string& pm() const { return pm_.empty() ? empty_ : pm_[0]; }
  const std::string& quarter_word(int q) const { return quarters_.at(q - 1); }

  void set_month(int i, std::string full, std::string abbr) {
    months_.at(i - 1).full = std::move(full);
    months_.at(i - 1).abbr = std::move(abbr);
  }
  void set_weekday(int i, std::string full, std::string abbr) {
    weekdays_.at(i - 1).full = std::move(full);
    weekdays_.at(i - 1).abbr = std::move(abbr);
  }
  void add_month_variant(int i, std::string v) { months_.at(i - 1).extras.push_back(std::move(v)); }
  void add_weekday_variant(int i, std::string v) { weekdays_.at(i - 1).extras.push_back(std::move(v)); }
  void add_am(std::string v) { am_.push_back(std::move(v)); }
  void add_pm(std::string v) { pm_.push_back(std::move(v)); }
  void set_quarter_word(int q, std::string v) { quarters_.at(q - 1) = std::move(v); }

  bool complete() const {
    for (const auto& m : months_)
      if (m.full.empty() || m.abbr.empty()) return false;
    for (const auto& w : weekdays_)
      if (w.full.empty() || w.abbr.empty()) return false;
    return !am_.empty() && !pm_.empty();
  }

  // Matches one slot table: full name, abbreviation, a listed variant, or a
  // prefix of the full name of length >= 3 ("Sept", "Tues", "Thurs").
  // An optional trailing period is stripped first.
  template <size_t N>
  static std::optional<int> match_slot(std::string_view text,
                                       const std::array<NameSlot, N>& slots) {
    std::string t = ascii_lower(strip_period(text));
    if (t.size() < 2) return std::nullopt;
    for (size_t i = 0; i < N; ++i) {
      const NameSlot& s = slots[i];
      std::string full = ascii_lower(s.full);
      if (t == full || t == ascii_lower(s.abbr))
        return static_cast<int>(i + 1);
      if (t.size() >= 3 && t.size() < full.size() &&
          full.compare(0, t.size(), t) == 0)
        return static_cast<int>(i + 1);
      for (const auto& v : s.extras)
        if (t == ascii_lower(v)) return static_cast<int>(i + 1);
    }
    return std::nullopt;
  }

  std::optional<int> month_index(std::string_view text) const {
    return match_slot(text, months_);
  }
  std::optional<int> weekday_index(std::string_view text) const {
    return match_slot(text, weekdays_);
  }
  std::optional<MeridianMark> meridian(std::string_view text) const {
    std::string t = strip_dots_lower(text);
    if (t.empty()) return std::nullopt;
    for (const auto& v : am_)
      if (t == strip_dots_lower(v)) return MeridianMark::AM;
    for (const auto& v : pm_)
      if (t == strip_dots_lower(v)) return MeridianMark::PM;
    return std::nullopt;
  }
  std::optional<int> quarter_index(std::string_view text) const {
    std::string t = ascii_lower(strip_period(text));
    for (int q = 1; q <= 4; ++q)
      if (t == ascii_lower(quarters_[q - 1])) return q;
    return std::nullopt;
  }

  static std::string_view strip_period(std::string_view s) {
    if (!s.empty() && s.back() == '.') s.remove_suffix(1);
    return s;
  }
  static std::string strip_dots_lower(std::string_view s) {
    std::string out;
    for (char c : s)
      if (c != '.' && c != ' ') out += c;
    return ascii_lower(out);
  }

 private:
  std::string id_;
  std::array<NameSlot, 12> months_{};
  std::array<NameSlot, 7> weekdays_{};
  std::vector<std::string> am_, pm_;
  std::array<std::string, 4> quarters_{
      {"1st quarter", "2nd quarter", "3rd quarter", "4th quarter"}};
  inline static const std::string empty_;
};

inline LocaleSpec parse_locale_data(std::istream& in, std::string id) {
  LocaleSpec loc(std::move(id));
  std::array<bool, 12> mf{}, ma{};
  std::array<bool, 7> wf{}, wa{};
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("locale data: missing '=' on line " +
                               std::to_string(lineno));
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    auto slot_key = [&](std::string_view prefix, std::string_view suffix,
                        int hi) -> int {
      if (key.size() <= prefix.size() + suffix.size()) return 0;
      if (key.compare(0, prefix.size(), prefix) != 0) return 0;
      if (key.compare(key.size() - suffix.size(), suffix.size(), suffix) != 0)
        return 0;
      std::string num =
          key.substr(prefix.size(), key.size() - prefix.size() - suffix.size());
      int n = 0;
      for (char c : num) {
        if (c < '0' || c > '9') return 0;
        n = n * 10 + (c - '0');
      }
      return (n >= 1 && n <= hi) ? n : 0;
    };
    if (int n = slot_key("month.", ".full", 12)) {
      if (!mf[n - 1]) {
        loc.set_month(n, value, loc.month(n).abbr);
        mf[n - 1] = true;
      } else {
        loc.add_month_variant(n, value);
      }
    } else if (int n2 = slot_key("month.", ".abbr", 12)) {
      if (!ma[n2 - 1]) {
        loc.set_month(n2, loc.month(n2).full, value);
        ma[n2 - 1] = true;
      } else {
        loc.add_month_variant(n2, value);
      }
    } else if (int n3 = slot_key("weekday.", ".full", 7)) {
      if (!wf[n3 - 1]) {
        loc.set_weekday(n3, value, loc.weekday(n3).abbr);
        wf[n3 - 1] = true;
      } else {
        loc.add_weekday_variant(n3, value);
      }
    } else if (int n4 = slot_key("weekday.", ".abbr", 7)) {
      if (!wa[n4 - 1]) {
        loc.set_weekday(n4, loc.weekday(n4).full, value);
        wa[n4 - 1] = true;
      } else {
        loc.add_weekday_variant(n4, value);
      }
    } else if (key == "am") {
      loc.add_am(value);
    } else if (key == "pm") {
      loc.add_pm(value);
    } else if (int n5 = slot_key("quarter.", "", 4)) {
      loc.set_quarter_word(n5, value);
    } else {
      throw std::runtime_error("locale data: unknown key '" + key +
                               "' on line " + std::to_string(lineno));
    }
  }
  if (!loc.complete())
    throw std::runtime_error("locale data: incomplete tables for '" +
                             loc.id() + "'");
  return loc;
}

inline void write_locale_data(const LocaleSpec& loc, std::ostream& out) {
  for (int i = 1; i <= 12; ++i) {
    out << "month." << i << ".full=" << loc.month(i).full << "\n";
    out << "month." << i << ".abbr=" << loc.month(i).abbr << "\n";
    for (const auto& v : loc.month(i).extras)
      out << "month." << i << ".full=" << v << "\n";
  }
  for (int i = 1; i <= 7; ++i) {
    out << "weekday." << i << ".full=" << loc.weekday(i).full << "\n";
    out << "weekday." << i << ".abbr=" << loc.weekday(i).abbr << "\n";
    for (const auto& v : loc.weekday(i).extras)
      out << "weekday." << i << ".full=" << v << "\n";
  }
  out << "am=" << loc.am() << "\n";
  out << "pm=" << loc.pm() << "\n";
  for (int q = 1; q <= 4; ++q)
    out << "quarter." << q << "=" << loc.quarter_word(q) << "\n";
}

namespace detail {

inline const char* kEnglishLocaleData = R"(month.1.full=January
month.1.abbr=Jan
month.2.full=February
month.2.abbr=Feb
month.3.full=March
month.3.abbr=Mar
month.4.full=April
month.4.abbr=Apr
month.5.full=May
month.5.abbr=May
month.6.full=June
month.6.abbr=Jun
month.7.full=July
month.7.abbr=Jul
month.8.full=August
month.8.abbr=Aug
month.9.full=September
month.9.abbr=Sep
month.9.abbr=Sept
month.10.full=October
month.10.abbr=Oct
month.11.full=November
month.11.abbr=Nov
month.12.full=December
month.12.abbr=Dec
weekday.1.full=Monday
weekday.1.abbr=Mon
weekday.2.full=Tuesday
weekday.2.abbr=Tue
weekday.2.abbr=Tues
weekday.3.full=Wednesday
weekday.3.abbr=Wed
weekday.4.full=Thursday
weekday.4.abbr=Thu
weekday.4.abbr=Thurs
weekday.5.full=Friday
weekday.5.abbr=Fri
weekday.6.full=Saturday
weekday.6.abbr=Sat
weekday.7.full=Sunday
weekday.7.abbr=Sun
am=AM
am=a.m.
pm=PM
pm=p.m.
quarter.1=1st quarter
quarter.2=2nd quarter
quarter.3=3rd quarter
quarter.4=4th quarter
)";

inline const char* kSpanishLocaleData = R"(month.1.full=enero
month.1.abbr=ene
month.2.full=febrero
month.2.abbr=feb
month.3.full=marzo
month.3.abbr=mar
month.4.full=abril
month.4.abbr=abr
month.5.full=mayo
month.5.abbr=may
month.6.full=junio
month.6.abbr=jun
month.7.full=julio
month.7.abbr=jul
month.8.full=agosto
month.8.abbr=ago
month.9.full=septiembre
month.9.abbr=sep
month.9.full=setiembre
month.10.full=octubre
month.10.abbr=oct
month.11.full=noviembre
month.11.abbr=nov
month.12.full=diciembre
month.12.abbr=dic
weekday.1.full=lunes
weekday.1.abbr=lun
weekday.2.full=martes
weekday.2.abbr=mar
weekday.3.full=miércoles
weekday.3.abbr=mié
weekday.3.full=miercoles
weekday.3.abbr=mie
weekday.4.full=jueves
weekday.4.abbr=jue
weekday.5.full=viernes
weekday.5.abbr=vie
weekday.6.full=sábado
weekday.6.abbr=sáb
weekday.6.full=sabado
weekday.6.abbr=sab
weekday.7.full=domingo
weekday.7.abbr=dom
am=a. m.
am=AM
am=a.m.
pm=p. m.
pm=PM
pm=p.m.
quarter.1=1er trimestre
quarter.2=2do trimestre
quarter.3=3er trimestre
quarter.4=4to trimestre
)";

inline LocaleSpec make_builtin(const char* data, const char* id) {
  std::istringstream in(data);
  return parse_locale_data(in, id);
}

}  // namespace detail

inline const LocaleSpec& english_locale() {
  static const LocaleSpec en =
      detail::make_builtin(detail::kEnglishLocaleData, "en");
  return en;
}

inline const LocaleSpec& spanish_locale() {
  static const LocaleSpec es =
      detail::make_builtin(detail::kSpanishLocaleData, "es");
  return es;
}

inline const LocaleSpec* find_builtin_locale(std::string_view id) {
  std::string key = ascii_lower(id);
  if (auto dash = key.find_first_of("-_"); dash != std::string::npos)
    key.resize(dash);
  if (key == "en") return &english_locale();
  if (key == "es") return &spanish_locale();
  return nullptr;
}

// Matchers try the requested locale first, then English. They return the
// 1-based slot index (months 1..12, weekdays Monday=1..Sunday=7).

struct LocaleMatch {
  int index;        // 1-based slot
  bool via_english; // matched through the fallback tables
};

inline std::optional<LocaleMatch> match_month(std::string_view text,
                                              const LocaleSpec& loc) {
  if (auto m = loc.month_index(text)) return LocaleMatch{*m, false};
  if (loc.id() != "en")
    if (auto m = english_locale().month_index(text))
      return LocaleMatch{*m, true};
  return std::nullopt;
}

inline std::optional<LocaleMatch> match_weekday(std::string_view text,
                                                const LocaleSpec& loc) {
  if (auto m = loc.weekday_index(text)) return LocaleMatch{*m, false};
  if (loc.id() != "en")
    if (auto m = english_locale().weekday_index(text))
      return LocaleMatch{*m, true};
  return std::nullopt;
}

inline std::optional<MeridianMark> match_meridian(std::string_view text,
                                                  const LocaleSpec& loc) {
  if (auto m = loc.meridian(text)) return m;
  if (loc.id() != "en")
    if (auto m = english_locale().meridian(text)) return m;
  return std::nullopt;
}

inline std::optional<int> match_quarter_word(std::string_view text,
                                             const LocaleSpec& loc) {
  if (auto q = loc.quarter_index(text)) return q;
  if (loc.id() != "en")
    if (auto q = english_locale().quarter_index(text)) return q;
  return std::nullopt;
}

// True when text is the unabbreviated name for the slot, in the requested
// locale or the English fallback.
inline bool is_full_month_form(std::string_view text, int index,
                               const LocaleSpec& loc) {
  std::string t = ascii_lower(LocaleSpec::strip_period(text));
  if (t == ascii_lower(loc.month(index).full)) return true;
  return loc.id() != "en" &&
         t == ascii_lower(english_locale().month(index).full);
}

inline bool is_full_weekday_form(std::string_view text, int index,
                                 const LocaleSpec& loc) {
  std::string t = ascii_lower(LocaleSpec::strip_period(text));
  if (t == ascii_lower(loc.weekday(index).full)) return true;
  return loc.id() != "en" &&
         t == ascii_lower(english_locale().weekday(index).full);
}

}  // namespace datefmt
