#pragma once

// The context-free date-time grammar: lexing into digit/alpha/separator
// tokens, the production set with morpho-syntactic variations and calendar
// constraints, binarization for CYK, and the one-rule-per-line dump format.

#include <cstdio>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "datefmt/calendar.hpp"
#include "datefmt/dateparse.hpp"
#include "datefmt/locale.hpp"

namespace datefmt {

// --- lexer -------------------------------------------------------------

enum class TokKind { Digits, Alpha, Sep };

struct LexedToken {
  TokKind kind;
  std::string text;
  size_t begin = 0;

  bool operator==(const LexedToken&) const = default;
};

inline bool is_alpha_byte(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         static_cast<unsigned char>(c) >= 0x80;
}

// Maximal digit runs, maximal alpha runs, single-character separators.
// Concatenating token texts reproduces the input exactly.
inline std::vector<LexedToken> lex(std::string_view text) {
  std::vector<LexedToken> out;
  size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c >= '0' && c <= '9') {
      size_t j = i;
      while (j < text.size() && text[j] >= '0' && text[j] <= '9') ++j;
      out.push_back({TokKind::Digits, std::string(text.substr(i, j - i)), i});
      i = j;
    } else if (is_alpha_byte(c)) {
      size_t j = i;
      while (j < text.size() && is_alpha_byte(text[j])) ++j;
      out.push_back({TokKind::Alpha, std::string(text.substr(i, j - i)), i});
      i = j;
    } else {
      out.push_back({TokKind::Sep, std::string(1, c), i});
      ++i;
    }
  }
  return out;
}

// --- terminals ---------------------------------------------------------

enum class TermKind {
  DigitRun,      // exact token length
  MonthWordT,
  WeekdayWordT,
  MeridianWordT, // whole-token meridian like "PM"
  ApLetter,      // 'a' or 'p' (the dotted spellings)
  ExactAlpha,    // fixed word, optionally case-insensitive
  ZoneWordT,
  SepChar,       // exact one-character separator
};

struct TerminalSpec {
  std::string name;
  TermKind kind;
  int digit_len = 0;
  std::string text;
  bool case_sensitive = false;
};

// Matches one lexed token; the returned value feeds preterminal range
// checks and the semantic fields (month index, day value, ...).
inline std::optional<long> match_terminal(const TerminalSpec& t,
                                          const LexedToken& tok,
                                          const LocaleSpec& loc) {
  switch (t.kind) {
    case TermKind::DigitRun: {
      if (tok.kind != TokKind::Digits ||
          tok.text.size() != static_cast<size_t>(t.digit_len))
        return std::nullopt;
      long v = 0;
      for (char c : tok.text) v = v * 10 + (c - '0');
      return v;
    }
    case TermKind::MonthWordT: {
      if (tok.kind != TokKind::Alpha) return std::nullopt;
      auto m = match_month(tok.text, loc);
      if (!m) return std::nullopt;
      return m->index;
    }
    case TermKind::WeekdayWordT: {
      if (tok.kind != TokKind::Alpha) return std::nullopt;
      auto m = match_weekday(tok.text, loc);
      if (!m) return std::nullopt;
      return m->index;
    }
    case TermKind::MeridianWordT: {
      if (tok.kind != TokKind::Alpha) return std::nullopt;
      auto m = match_meridian(tok.text, loc);
      if (!m) return std::nullopt;
      return *m == MeridianMark::AM ? 0 : 1;
    }
    case TermKind::ApLetter: {
      if (tok.kind != TokKind::Alpha || tok.text.size() != 1)
        return std::nullopt;
      char c = tok.text[0];
      if (c == 'a' || c == 'A') return 0;
      if (c == 'p' || c == 'P') return 1;
      return std::nullopt;
    }
    case TermKind::ExactAlpha: {
      if (tok.kind != TokKind::Alpha) return std::nullopt;
      if (t.case_sensitive) return tok.text == t.text ? std::optional<long>(0)
                                                      : std::nullopt;
      return ascii_lower(tok.text) == ascii_lower(t.text)
                 ? std::optional<long>(0)
                 : std::nullopt;
    }
    case TermKind::ZoneWordT: {
      if (tok.kind != TokKind::Alpha) return std::nullopt;
      auto off = detail::zone_name_offset(tok.text);
      if (!off) return std::nullopt;
      return *off;
    }
    case TermKind::SepChar:
      if (tok.kind != TokKind::Sep || tok.text != t.text) return std::nullopt;
      return 0;
  }
  return std::nullopt;
}

// --- rules -------------------------------------------------------------

struct SymRef {
  bool terminal = false;
  int id = 0;
  bool operator==(const SymRef&) const = default;
};

// Semantic slot filled by a preterminal rule from its token value.
enum class Slot {
  None,
  Year2,    // two-digit year, pivoted
  Year4,
  Month,    // numeric month or month-word index
  Day,
  Offset4,  // RFC 822 hhmm digits: hh <= 14, mm <= 59
};

struct SemFields {
  int year = -1;
  int month = -1;
  int day = -1;

  void merge(const SemFields& o) {
    if (year < 0) year = o.year;
    if (month < 0) month = o.month;
    if (day < 0) day = o.day;
  }
};

struct Rule {
  int lhs = 0;
  std::vector<SymRef> rhs;
  double prior = 1.0;  // raw weight before per-lhs normalization
  double prob = 1.0;   // normalized probability
  // preterminal extras
  Slot slot = Slot::None;
  long lo = 0, hi = -1;      // token-value range; lo > hi means unchecked
  bool day_weighted = false; // p = 1.0 for values > 12, else 0.5
  bool date_guard = false;   // day must fit the month/year calendar bound
};

struct BinLex {
  int lhs, term, orig;
  double prob;
};
struct BinUn {
  int lhs, child, orig;
  double prob;
};
struct BinBin {
  int lhs, a, b, orig;
  double prob;
};

struct BinForm {
  std::vector<BinLex> lex;
  std::vector<BinUn> un;
  std::vector<BinBin> bin;
  std::vector<std::string> extra_nts;  // introduced + wrapper symbols
};

struct Grammar {
  std::vector<std::string> nts;
  std::vector<TerminalSpec> terms;
  std::vector<Rule> rules;
  int start = 0;
  std::string locale_id = "en";
  std::optional<BinForm> bin;

  int nt(const std::string& name) {
    for (size_t i = 0; i < nts.size(); ++i)
      if (nts[i] == name) return static_cast<int>(i);
    nts.push_back(name);
    return static_cast<int>(nts.size() - 1);
  }
  int find_nt(std::string_view name) const {
    for (size_t i = 0; i < nts.size(); ++i)
      if (nts[i] == name) return static_cast<int>(i);
    return -1;
  }
  int term(TerminalSpec spec) {
    for (size_t i = 0; i < terms.size(); ++i)
      if (terms[i].name == spec.name) return static_cast<int>(i);
    terms.push_back(std::move(spec));
    return static_cast<int>(terms.size() - 1);
  }
  int find_term(std::string_view name) const {
    for (size_t i = 0; i < terms.size(); ++i)
      if (terms[i].name == name) return static_cast<int>(i);
    return -1;
  }

  Rule& add(int lhs, std::vector<SymRef> rhs, double prior = 1.0) {
    Rule r;
    r.lhs = lhs;
    r.rhs = std::move(rhs);
    r.prior = prior;
    rules.push_back(std::move(r));
    return rules.back();
  }

  size_t nonterminal_count() const { return nts.size(); }
  size_t terminal_count() const { return terms.size(); }

  std::string symbol_name(const SymRef& s) const {
    if (s.terminal) return terms[s.id].name;
    if (s.id < static_cast<int>(nts.size())) return nts[s.id];
    if (bin) return bin->extra_nts[s.id - nts.size()];
    return "?";
  }

  // True when both the month/day pair (if present) fits the calendar.
  bool check_date_guard(const SemFields& f) const {
    if (f.month >= 1 && f.day >= 1) {
      long y = f.year >= 0 ? f.year : 2000;
      if (f.day > days_in_month_bound(f.month, y)) return false;
    }
    return true;
  }
};

// Per-lhs normalization of the raw priors into probabilities.
inline void normalize_probabilities(Grammar& g) {
  std::map<int, double> totals;
  for (const auto& r : g.rules) totals[r.lhs] += r.prior;
  for (auto& r : g.rules) {
    double t = totals[r.lhs];
    r.prob = t > 0 ? r.prior / t : 0.0;
  }
}

// --- binarization --------------------------------------------------------

// Rewrites every rule to at most two symbols on the right-hand side.
// Introduced symbols carry probability 1, so tree probabilities are
// unchanged; guards stay attached to the completing rule (the one that
// keeps the original left-hand side). Terminals inside longer rules are
// wrapped in unit preterminals so inner positions are uniform.
inline Grammar binarize(const Grammar& g) {
  Grammar out = g;
  BinForm bf;
  int next_id = static_cast<int>(out.nts.size());
  std::map<int, int> wrapper;  // terminal id -> wrapper NT id
  auto wrap = [&](const SymRef& s) -> int {
    if (!s.terminal) return s.id;
    auto it = wrapper.find(s.id);
    if (it != wrapper.end()) return it->second;
    int id = next_id++;
    bf.extra_nts.push_back("@" + g.terms[s.id].name);
    bf.lex.push_back({id, s.id, -1, 1.0});
    wrapper[s.id] = id;
    return id;
  };
  for (size_t ri = 0; ri < g.rules.size(); ++ri) {
    const Rule& r = g.rules[ri];
    int orig = static_cast<int>(ri);
    if (r.rhs.size() == 1) {
      if (r.rhs[0].terminal)
        bf.lex.push_back({r.lhs, r.rhs[0].id, orig, r.prob});
      else
        bf.un.push_back({r.lhs, r.rhs[0].id, orig, r.prob});
      continue;
    }
    if (r.rhs.size() == 2) {
      bf.bin.push_back({r.lhs, wrap(r.rhs[0]), wrap(r.rhs[1]), orig, r.prob});
      continue;
    }
    // chain: A -> X0 I1, I1 -> X1 I2, ..., I_last -> X_{n-2} X_{n-1}
    int cur = r.lhs;
    double p = r.prob;
    int o = orig;
    for (size_t i = 0; i + 2 < r.rhs.size(); ++i) {
      int intro = next_id++;
      bf.extra_nts.push_back(g.nts[r.lhs] + "~" + std::to_string(ri) + "." +
                             std::to_string(i));
      bf.bin.push_back({cur, wrap(r.rhs[i]), intro, o, p});
      cur = intro;
      p = 1.0;
      o = -1;
    }
    bf.bin.push_back({cur, wrap(r.rhs[r.rhs.size() - 2]),
                      wrap(r.rhs[r.rhs.size() - 1]), o, p});
  }
  out.bin = std::move(bf);
  return out;
}

// Re-syncs binarized-rule probabilities after training updated the
// original rules.
inline void refresh_binarized(Grammar& g) {
  if (!g.bin) return;
  for (auto& l : g.bin->lex)
    if (l.orig >= 0) l.prob = g.rules[l.orig].prob;
  for (auto& u : g.bin->un)
    if (u.orig >= 0) u.prob = g.rules[u.orig].prob;
  for (auto& b : g.bin->bin)
    if (b.orig >= 0) b.prob = g.rules[b.orig].prob;
}

// --- the date-time grammar ----------------------------------------------

// Nonterminal names used by tree-to-format conversion.
namespace nt {
inline constexpr const char* kStart = "DateTimeGrammar";
inline constexpr const char* kDate = "DateGrammar";
inline constexpr const char* kTime = "TimeGrammar";
inline constexpr const char* kBig = "BigEndianDate";
inline constexpr const char* kMiddle = "MiddleEndianDate";
inline constexpr const char* kLittle = "LittleEndianDate";
inline constexpr const char* kMonthYear = "MonthYear";
inline constexpr const char* kYearMonth = "YearMonth";
inline constexpr const char* kAscTime = "AscTimeDate";
inline constexpr const char* kQuarterYear = "QuarterYear";
inline constexpr const char* kYear = "Year";
inline constexpr const char* kTwoYear = "TwoYear";
inline constexpr const char* kFourYear = "FourYear";
inline constexpr const char* kMonth = "Month";
inline constexpr const char* kMonthWord = "MonthWord";
inline constexpr const char* kMonthNumber = "MonthNumber";
inline constexpr const char* kDay = "Day";
inline constexpr const char* kDayOfWeek = "DayOfWeek";
inline constexpr const char* kTwelveHour = "TwelveHour";
inline constexpr const char* kTwentyFourHour = "TwentyFourHour";
inline constexpr const char* kMinute = "Minute";
inline constexpr const char* kSecond = "Second";
inline constexpr const char* kSubSecond = "SubSecond";
inline constexpr const char* kAmPm = "AMPM";
inline constexpr const char* kTimeZone = "TimeZone";
inline constexpr const char* kQuarter = "Quarter";
}  // namespace nt

// Builds the full date-time grammar for a locale: the endianness date
// productions, 12/24-hour time with optional seconds, fractions, zones and
// meridians, quarter-year, plus variation productions for punctuation
// alternatives, combined date-times, weekday prefixes and leading
// punctuation. Word terminals match through the locale tables (with the
// English fallback), so the structure itself is locale-independent.
inline Grammar build_datetime_grammar(const LocaleSpec& loc) {
  Grammar g;
  g.locale_id = loc.id();

  // terminals
  auto digits = [&](int n) {
    return SymRef{true, g.term({"digits" + std::to_string(n),
                                TermKind::DigitRun, n, "", false})};
  };
  auto sep = [&](char c, const char* name) {
    return SymRef{true,
                  g.term({name, TermKind::SepChar, 0, std::string(1, c), false})};
  };
  SymRef d1 = digits(1), d2 = digits(2), d3 = digits(3), d4 = digits(4),
         d6 = digits(6);
  SymRef slash = sep('/', "slash"), dash = sep('-', "dash"),
         dot = sep('.', "dot"), colon = sep(':', "colon"),
         comma = sep(',', "comma"), space = sep(' ', "space"),
         quote = sep('\'', "quote"), lbracket = sep('[', "lbracket"),
         plus = sep('+', "plus");
  SymRef month_w = {true, g.term({"month_word", TermKind::MonthWordT, 0, "", false})};
  SymRef weekday_w = {true, g.term({"weekday_word", TermKind::WeekdayWordT, 0, "", false})};
  SymRef ampm_w = {true, g.term({"ampm_word", TermKind::MeridianWordT, 0, "", false})};
  SymRef zone_w = {true, g.term({"zone_word", TermKind::ZoneWordT, 0, "", false})};
  SymRef ap_letter = {true, g.term({"ap_letter", TermKind::ApLetter, 0, "", false})};
  SymRef m_letter = {true, g.term({"m_letter", TermKind::ExactAlpha, 0, "m", false})};
  SymRef q_letter = {true, g.term({"q_letter", TermKind::ExactAlpha, 0, "q", false})};
  SymRef t_letter = {true, g.term({"t_letter", TermKind::ExactAlpha, 0, "T", true})};

  // nonterminals
  int S = g.nt(nt::kStart);
  int D = g.nt(nt::kDate);
  int Tm = g.nt(nt::kTime);
  int Big = g.nt(nt::kBig), Mid = g.nt(nt::kMiddle), Lit = g.nt(nt::kLittle);
  int MY = g.nt(nt::kMonthYear), YM = g.nt(nt::kYearMonth);
  int Asc = g.nt(nt::kAscTime);
  int QY = g.nt(nt::kQuarterYear);
  int Y = g.nt(nt::kYear), Y2 = g.nt(nt::kTwoYear), Y4 = g.nt(nt::kFourYear);
  int Mo = g.nt(nt::kMonth), MoW = g.nt(nt::kMonthWord), MoN = g.nt(nt::kMonthNumber);
  int Da = g.nt(nt::kDay), Dow = g.nt(nt::kDayOfWeek);
  int H12 = g.nt(nt::kTwelveHour), H24 = g.nt(nt::kTwentyFourHour);
  int Mi = g.nt(nt::kMinute), Se = g.nt(nt::kSecond), Sub = g.nt(nt::kSubSecond);
  int Ap = g.nt(nt::kAmPm), Tz = g.nt(nt::kTimeZone), Qu = g.nt(nt::kQuarter);
  int Core24 = g.nt("TimeCore24"), Core12 = g.nt("TimeCore12");
  int DSep = g.nt("DateSep"), TSep = g.nt("TimeSep"), FSep = g.nt("FracSep");
  int DTSep = g.nt("DateTimeSep"), WSep = g.nt("WeekdaySep");
  int Pre = g.nt("PunctPrefix");
  int OffHH = g.nt("OffsetHours"), OffMM = g.nt("OffsetMinutes"),
      Off4 = g.nt("OffsetDigits");
  g.start = S;

  auto N = [](int id) { return SymRef{false, id}; };

  // start alternatives; dates weigh 0.9, times 0.7
  g.add(S, {N(D)}, 0.9);
  g.add(S, {N(Tm)}, 0.7);
  g.add(S, {N(D), N(DTSep), N(Tm)}, 0.9);
  g.add(S, {N(Asc)}, 0.9);
  g.add(S, {N(QY)}, 0.7);
  g.add(S, {N(Dow), N(WSep), N(S)}, 0.5);
  g.add(S, {N(Pre), N(S)}, 0.3);

  // date endianness
  g.add(D, {N(Big)}, 0.9);
  g.add(D, {N(Mid)}, 0.9);
  g.add(D, {N(Lit)}, 0.9);
  g.add(D, {N(MY)}, 0.85);
  g.add(D, {N(YM)}, 0.85);
  g.add(Big, {N(Y), N(DSep), N(Mo), N(DSep), N(Da)}).date_guard = true;
  g.add(Mid, {N(Mo), N(DSep), N(Da), N(DSep), N(Y)}).date_guard = true;
  g.add(Lit, {N(Da), N(DSep), N(Mo), N(DSep), N(Y)}).date_guard = true;
  g.add(MY, {N(Mo), N(DSep), N(Y)});
  g.add(YM, {N(Y), N(DSep), N(Mo)});
  // asctime layout: weekday month day time year
  g.add(Asc, {N(Dow), space, N(MoW), space, N(Da), space, N(Tm), space, N(Y4)})
      .date_guard = true;

  // quarter-year
  int QDigit = g.nt("QuarterDigit");
  g.add(QY, {N(Qu), N(DSep), N(Y)});
  g.add(Qu, {q_letter, N(QDigit)});

  // years / months / days
  g.add(Y, {N(Y2)});
  g.add(Y, {N(Y4)});
  auto lexr = [&](int lhs, SymRef t, Slot slot, long lo, long hi,
                  bool day_weighted = false) -> Rule& {
    Rule& r = g.add(lhs, {t});
    r.slot = slot;
    r.lo = lo;
    r.hi = hi;
    r.day_weighted = day_weighted;
    return r;
  };
  lexr(Y2, d2, Slot::Year2, 0, 99);
  lexr(Y4, d4, Slot::Year4, 0, 9999);
  g.add(Mo, {N(MoW)});
  g.add(Mo, {N(MoN)});
  lexr(MoW, month_w, Slot::Month, 0, -1);
  lexr(MoN, d1, Slot::Month, 1, 12);
  lexr(MoN, d2, Slot::Month, 1, 12);
  lexr(Da, d1, Slot::Day, 1, 31, true);
  lexr(Da, d2, Slot::Day, 1, 31, true);
  g.add(Dow, {weekday_w});

  // time of day
  g.add(Tm, {N(Core24)}, 0.7);
  g.add(Tm, {N(Core24), space, N(Tz)}, 0.7);
  g.add(Tm, {N(Core24), N(Tz)}, 0.5);  // attached offsets: 09:30:40-08:00
  g.add(Tm, {N(Core12), N(Ap)}, 0.5);
  g.add(Tm, {N(Core12), space, N(Ap)}, 0.7);
  g.add(Tm, {N(Core12), space, N(Ap), space, N(Tz)}, 0.7);
  g.add(Core24, {N(H24), N(TSep), N(Mi)});
  g.add(Core24, {N(H24), N(TSep), N(Mi), N(TSep), N(Se)});
  g.add(Core24, {N(H24), N(TSep), N(Mi), N(TSep), N(Se), N(FSep), N(Sub)});
  g.add(Core12, {N(H12), N(TSep), N(Mi)});
  g.add(Core12, {N(H12), N(TSep), N(Mi), N(TSep), N(Se)});
  g.add(Core12, {N(H12), N(TSep), N(Mi), N(TSep), N(Se), N(FSep), N(Sub)});
  lexr(H12, d1, Slot::None, 1, 12);
  lexr(H12, d2, Slot::None, 1, 12);
  lexr(H24, d1, Slot::None, 0, 23);
  lexr(H24, d2, Slot::None, 0, 23);
  lexr(Mi, d2, Slot::None, 0, 59);
  lexr(Se, d2, Slot::None, 0, 59);
  g.add(Sub, {d1});
  g.add(Sub, {d2});
  g.add(Sub, {d3});
  g.add(Sub, {d6});

  // meridian spellings: PM, p.m., p. m.
  g.add(Ap, {ampm_w});
  g.add(Ap, {ap_letter, dot, m_letter, dot});
  g.add(Ap, {ap_letter, dot, space, m_letter, dot});

  // time zones: named, RFC 822, ISO 8601
  g.add(Tz, {zone_w});
  g.add(Tz, {plus, N(Off4)});
  g.add(Tz, {dash, N(Off4)});
  g.add(Tz, {plus, N(OffHH), colon, N(OffMM)});
  g.add(Tz, {dash, N(OffHH), colon, N(OffMM)});
  lexr(Off4, d4, Slot::Offset4, 0, 1459);
  lexr(OffHH, d2, Slot::None, 0, 14);
  lexr(OffMM, d2, Slot::None, 0, 59);
  lexr(QDigit, d1, Slot::None, 1, 4);

  // separators and prefixes (punctuation alternatives)
  g.add(DSep, {slash});
  g.add(DSep, {dash});
  g.add(DSep, {dot});
  g.add(DSep, {space});
  g.add(DSep, {comma, space});
  g.add(DSep, {space, quote});
  g.add(TSep, {colon});
  g.add(TSep, {dot});
  g.add(FSep, {dot});
  g.add(FSep, {comma});
  g.add(DTSep, {space});
  g.add(DTSep, {colon});
  g.add(DTSep, {t_letter});
  g.add(DTSep, {space, dash, space});
  g.add(DTSep, {comma, space});
  g.add(WSep, {space});
  g.add(WSep, {comma, space});
  g.add(Pre, {lbracket});
  g.add(Pre, {quote});

  normalize_probabilities(g);
  return g;
}

// --- dump format -----------------------------------------------------------

// One rule per line: `p lhs -> rhs...`
inline std::string dump_grammar(const Grammar& g) {
  std::ostringstream out;
  char buf[32];
  for (const auto& r : g.rules) {
    std::snprintf(buf, sizeof(buf), "%.9g", r.prob);
    out << buf << " " << g.nts[r.lhs] << " ->";
    for (const auto& s : r.rhs) out << " " << g.symbol_name(s);
    out << "\n";
  }
  return out.str();
}

// Applies probabilities from a dump onto a structurally identical grammar.
inline void load_weights(Grammar& g, std::istream& in) {
  std::map<std::string, std::vector<size_t>> by_sig;
  auto signature = [&](const Rule& r) {
    std::string s = g.nts[r.lhs] + " ->";
    for (const auto& sym : r.rhs) s += " " + g.symbol_name(sym);
    return s;
  };
  for (size_t i = 0; i < g.rules.size(); ++i)
    by_sig[signature(g.rules[i])].push_back(i);
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    size_t sp = line.find(' ');
    if (sp == std::string::npos)
      throw std::runtime_error("grammar dump: bad line " +
                               std::to_string(lineno));
    double p = std::stod(line.substr(0, sp));
    std::string sig = line.substr(sp + 1);
    auto it = by_sig.find(sig);
    if (it == by_sig.end())
      throw std::runtime_error("grammar dump: unknown rule on line " +
                               std::to_string(lineno) + ": " + sig);
    for (size_t idx : it->second) g.rules[idx].prob = p;
  }
  refresh_binarized(g);
}

}  // namespace datefmt
