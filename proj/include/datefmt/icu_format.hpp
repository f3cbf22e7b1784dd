#pragma once

// Model of the ICU SimpleDateFormat pattern language, restricted to the
// field codes this library emits and parses: tokenization of pattern text
// into field codes and quoted literals, canonical rendering, and per-field
// value ranges.

#include <cctype>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace datefmt {

enum class Field : char {
  Year = 'y',
  Quarter = 'Q',
  Month = 'M',
  Day = 'd',
  Weekday = 'E',
  Meridian = 'a',
  Hour12 = 'h',
  Hour24 = 'H',
  Minute = 'm',
  Second = 's',
  Subsecond = 'S',
  ZoneName = 'z',
  ZoneOffset = 'Z',
};

inline bool is_format_letter(char c) {
  switch (c) {
    case 'y': case 'Q': case 'M': case 'd': case 'E': case 'a':
    case 'h': case 'H': case 'm': case 's': case 'S': case 'z': case 'Z':
      return true;
    default:
      return false;
  }
}

// Widest repeat count accepted per field letter. Canonical inference output
// sticks to the documented widths (yy/yyyy, MM/MMM/MMMM, ...) but parsing
// accepts the full range so patterns like SSSSSS still tokenize.
inline int max_field_width(Field f) {
  switch (f) {
    case Field::Year: return 4;
    case Field::Quarter: return 4;
    case Field::Month: return 4;
    case Field::Day: return 2;
    case Field::Weekday: return 4;
    case Field::Meridian: return 1;
    case Field::Hour12: return 2;
    case Field::Hour24: return 2;
    case Field::Minute: return 2;
    case Field::Second: return 2;
    case Field::Subsecond: return 9;
    case Field::ZoneName: return 4;
    case Field::ZoneOffset: return 5;
  }
  return 0;
}

struct FieldCode {
  Field field;
  int width = 1;

  bool operator==(const FieldCode&) const = default;
};

// Numeric fields report an inclusive value range; word-form fields (month
// names, weekday names, meridian markers, zone names) report textual.
struct ValueRange {
  bool textual = false;
  long min = 0;
  long max = 0;
};

inline ValueRange field_value_range(const FieldCode& fc) {
  auto numeric = [](long lo, long hi) { return ValueRange{false, lo, hi}; };
  constexpr ValueRange textual{true, 0, 0};
  switch (fc.field) {
    case Field::Year: return fc.width <= 2 ? numeric(0, 99) : numeric(0, 9999);
    case Field::Quarter: return fc.width <= 2 ? numeric(1, 4) : textual;
    case Field::Month: return fc.width <= 2 ? numeric(1, 12) : textual;
    case Field::Day: return numeric(1, 31);
    case Field::Weekday: return textual;
    case Field::Meridian: return textual;
    case Field::Hour12: return numeric(1, 12);
    case Field::Hour24: return numeric(0, 23);
    case Field::Minute: return numeric(0, 59);
    case Field::Second: return numeric(0, 59);
    case Field::Subsecond: {
      long hi = 1;
      for (int i = 0; i < fc.width; ++i) hi *= 10;
      return numeric(0, hi - 1);
    }
    case Field::ZoneName: return textual;
    case Field::ZoneOffset: return textual;
  }
  return textual;
}

struct FormatToken {
  // Exactly one of the two variants is active: a field code, or a literal
  // span of text (already unescaped).
  bool is_field = false;
  FieldCode code{};
  std::string literal;

  static FormatToken field(Field f, int width) {
    FormatToken t;
    t.is_field = true;
    t.code = FieldCode{f, width};
    return t;
  }
  static FormatToken lit(std::string text) {
    FormatToken t;
    t.literal = std::move(text);
    return t;
  }

  bool operator==(const FormatToken&) const = default;
};

enum class FormatErrorKind {
  UnbalancedQuote,
  UnknownFieldCode,
  UnsupportedWidth,
};

class FormatError : public std::runtime_error {
 public:
  FormatError(FormatErrorKind kind, size_t position, const std::string& what)
      : std::runtime_error(what), kind_(kind), position_(position) {}
  FormatErrorKind kind() const { return kind_; }
  size_t position() const { return position_; }

 private:
  FormatErrorKind kind_;
  size_t position_;
};

// Ordered token sequence. Construction merges adjacent literals and drops
// empty ones, so equal value languages built the same way compare equal.
class FormatString {
 public:
  FormatString() = default;
  explicit FormatString(std::vector<FormatToken> tokens) {
    for (auto& t : tokens) push(std::move(t));
  }

  void push(FormatToken t) {
    if (!t.is_field) {
      if (t.literal.empty()) return;
      if (!tokens_.empty() && !tokens_.back().is_field) {
        tokens_.back().literal += t.literal;
        return;
      }
    }
    tokens_.push_back(std::move(t));
  }

  const std::vector<FormatToken>& tokens() const { return tokens_; }
  bool empty() const { return tokens_.empty(); }
  size_t size() const { return tokens_.size(); }
  const FormatToken& operator[](size_t i) const { return tokens_[i]; }

  bool operator==(const FormatString&) const = default;

 private:
  std::vector<FormatToken> tokens_;
};

inline FormatString tokenize_format(std::string_view pattern) {
  FormatString out;
  std::string lit;
  auto flush_lit = [&] {
    if (!lit.empty()) {
      out.push(FormatToken::lit(lit));
      lit.clear();
    }
  };
  size_t i = 0;
  const size_t n = pattern.size();
  while (i < n) {
    char c = pattern[i];
    if (c == '\'') {
      if (i + 1 < n && pattern[i + 1] == '\'') {
        lit += '\'';
        i += 2;
        continue;
      }
      // quoted span
      size_t start = i++;
      bool closed = false;
      while (i < n) {
        if (pattern[i] == '\'') {
          if (i + 1 < n && pattern[i + 1] == '\'') {
            lit += '\'';
            i += 2;
            continue;
          }
          ++i;
          closed = true;
          break;
        }
        lit += pattern[i++];
      }
      if (!closed)
        throw FormatError(FormatErrorKind::UnbalancedQuote, start,
                          "unbalanced quote in pattern");
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      if (!is_format_letter(c))
        throw FormatError(FormatErrorKind::UnknownFieldCode, i,
                          std::string("unknown field code '") + c + "'");
      size_t start = i;
      while (i < n && pattern[i] == c) ++i;
      int width = static_cast<int>(i - start);
      Field f = static_cast<Field>(c);
      if (width > max_field_width(f))
        throw FormatError(FormatErrorKind::UnsupportedWidth, start,
                          std::string("unsupported width for '") + c + "'");
      flush_lit();
      out.push(FormatToken::field(f, width));
      continue;
    }
    lit += c;
    ++i;
  }
  flush_lit();
  return out;
}

// Comparison key under which two formats are equal exactly when they parse
// the same value language: numeric codes unify to their padded widths, word
// codes to the abbreviated form, and literal whitespace runs collapse.
inline std::string normalized_format_key(const FormatString& fs);

// Canonical pattern text: minimal quoting. Only spans containing ASCII
// letters are quoted; a quote character always renders as ''.
inline std::string render_format(const FormatString& fs) {
  std::string out;
  for (const auto& t : fs.tokens()) {
    if (t.is_field) {
      out.append(static_cast<size_t>(t.code.width),
                 static_cast<char>(t.code.field));
      continue;
    }
    bool in_quote = false;
    for (char c : t.literal) {
      if (c == '\'') {
        out += "''";
      } else if (std::isalpha(static_cast<unsigned char>(c))) {
        if (!in_quote) {
          out += '\'';
          in_quote = true;
        }
        out += c;
      } else {
        if (in_quote) {
          out += '\'';
          in_quote = false;
        }
        out += c;
      }
    }
    if (in_quote) out += '\'';
  }
  return out;
}

inline std::string normalized_format_key(const FormatString& fs) {
  std::vector<FormatToken> out;
  for (const auto& t : fs.tokens()) {
    if (!t.is_field) {
      std::string lit;
      bool ws = false;
      for (char c : t.literal) {
        if (c == ' ' || c == '\t') {
          if (!ws) lit += ' ';
          ws = true;
        } else {
          lit += c;
          ws = false;
        }
      }
      out.push_back(FormatToken::lit(lit));
      continue;
    }
    Field f = t.code.field;
    int w = t.code.width;
    switch (f) {
      case Field::Year: w = w <= 2 ? 2 : 4; break;
      case Field::Month: w = w <= 2 ? 2 : 3; break;
      case Field::Day: w = 2; break;
      case Field::Hour12:
      case Field::Hour24:
      case Field::Minute:
      case Field::Second: w = 2; break;
      case Field::Weekday: w = 3; break;
      case Field::Quarter: w = w <= 2 ? 2 : w; break;
      case Field::ZoneName: w = 3; break;
      case Field::ZoneOffset: w = w <= 3 ? 1 : w; break;
      case Field::Meridian: w = 1; break;
      case Field::Subsecond: break;  // width changes the value language
    }
    out.push_back(FormatToken::field(f, w));
  }
  return render_format(FormatString(std::move(out)));
}

}  // namespace datefmt
