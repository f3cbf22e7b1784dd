#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "datefmt/icu_format.hpp"

using namespace datefmt;

TEST_CASE("tokenize basic pattern") {
  FormatString fs = tokenize_format("yyyy-MM-dd");
  REQUIRE(fs.size() == 5);
  CHECK(fs[0] == FormatToken::field(Field::Year, 4));
  CHECK(fs[1] == FormatToken::lit("-"));
  CHECK(fs[2] == FormatToken::field(Field::Month, 2));
  CHECK(fs[3] == FormatToken::lit("-"));
  CHECK(fs[4] == FormatToken::field(Field::Day, 2));
}

TEST_CASE("tokenize doubled quote inside pattern") {
  // "MM ''yyyy" formats values like "01 '2013"
  FormatString fs = tokenize_format("MM ''yyyy");
  REQUIRE(fs.size() == 3);
  CHECK(fs[0] == FormatToken::field(Field::Month, 2));
  CHECK(fs[1] == FormatToken::lit(" '"));
  CHECK(fs[2] == FormatToken::field(Field::Year, 4));
}

TEST_CASE("tokenize empty pattern") {
  CHECK(tokenize_format("").empty());
}

TEST_CASE("tokenize quoted text") {
  FormatString fs = tokenize_format("'at' HH");
  REQUIRE(fs.size() == 2);
  CHECK(fs[0] == FormatToken::lit("at "));
  CHECK(fs[1] == FormatToken::field(Field::Hour24, 2));
}

TEST_CASE("tokenize errors") {
  CHECK_THROWS_AS(tokenize_format("'oops"), FormatError);
  CHECK_THROWS_AS(tokenize_format("yyyy-xx"), FormatError);   // unknown letter
  CHECK_THROWS_AS(tokenize_format("ddddd"), FormatError);     // width too large
  try {
    tokenize_format("ab");
  } catch (const FormatError& e) {
    CHECK(e.kind() == FormatErrorKind::UnknownFieldCode);
  }
}

TEST_CASE("render canonical forms") {
  std::vector<FormatToken> toks = {
      FormatToken::field(Field::Weekday, 3), FormatToken::lit(" "),
      FormatToken::field(Field::Month, 3),   FormatToken::lit(" "),
      FormatToken::field(Field::Day, 2),     FormatToken::lit(" "),
      FormatToken::field(Field::Hour24, 2),  FormatToken::lit(":"),
      FormatToken::field(Field::Minute, 2),  FormatToken::lit(":"),
      FormatToken::field(Field::Second, 2),  FormatToken::lit(" "),
      FormatToken::field(Field::ZoneName, 3), FormatToken::lit(" "),
      FormatToken::field(Field::Year, 4)};
  CHECK(render_format(FormatString(std::move(toks))) ==
        "EEE MMM dd HH:mm:ss zzz yyyy");

  CHECK(render_format(FormatString{}) == "");
  CHECK(render_format(FormatString({FormatToken::lit("at")})) == "'at'");
  CHECK(render_format(FormatString({FormatToken::lit(" '")})) == " ''");
}

TEST_CASE("adjacent literals merge") {
  FormatString fs({FormatToken::lit("a"), FormatToken::lit("b"),
                   FormatToken::field(Field::Year, 4)});
  REQUIRE(fs.size() == 2);
  CHECK(fs[0] == FormatToken::lit("ab"));
}

TEST_CASE("every Table II style format and quirky format round-trips") {
  for (const char* pat : {
           "yy", "yyyy", "QQ", "QQQ", "QQQQ", "MM", "MMM", "MMMM", "dd",
           "EEE", "EEEE", "a", "hh", "HH", "mm", "ss", "S", "SS", "SSS",
           "zzz", "Z", "ZZZZ", "ZZZZZ",
           // unusual formats observed in the wild
           "EEE MMM dd HH:mm:ss zzz yyyy",
           "[dd/MMM/yyyy:HH:mm:ss",
           "dd-MMM-yy hh.mm.ss.SSSSSS a",
           "MM ''yyyy",
           "MM/dd/yyyy - HH:mm",
       }) {
    FormatString fs = tokenize_format(pat);
    CHECK(render_format(fs) == pat);
    CHECK(tokenize_format(render_format(fs)) == fs);
  }
}

TEST_CASE("field value ranges") {
  CHECK(field_value_range({Field::Hour24, 2}).min == 0);
  CHECK(field_value_range({Field::Hour24, 2}).max == 23);
  CHECK(field_value_range({Field::Hour12, 2}).min == 1);
  CHECK(field_value_range({Field::Hour12, 2}).max == 12);
  CHECK(field_value_range({Field::Minute, 2}).max == 59);
  CHECK(field_value_range({Field::Second, 2}).max == 59);
  CHECK(field_value_range({Field::Month, 2}).min == 1);
  CHECK(field_value_range({Field::Month, 2}).max == 12);
  CHECK(field_value_range({Field::Day, 2}).max == 31);
  CHECK(field_value_range({Field::Quarter, 2}).max == 4);
  CHECK(field_value_range({Field::Month, 4}).textual);
  CHECK(field_value_range({Field::Weekday, 4}).textual);
  CHECK(field_value_range({Field::Meridian, 1}).textual);
  CHECK(field_value_range({Field::ZoneName, 3}).textual);
}

namespace {

// Random canonical FormatStrings: valid widths, no adjacent same-letter
// fields, literals drawn from separator-ish characters plus quotes.
FormatString random_format(std::mt19937_64& rng) {
  static const std::pair<Field, int> codes[] = {
      {Field::Year, 2},    {Field::Year, 4},      {Field::Quarter, 3},
      {Field::Month, 2},   {Field::Month, 3},     {Field::Month, 4},
      {Field::Day, 2},     {Field::Weekday, 3},   {Field::Meridian, 1},
      {Field::Hour12, 2},  {Field::Hour24, 2},    {Field::Minute, 2},
      {Field::Second, 2},  {Field::Subsecond, 3}, {Field::Subsecond, 6},
      {Field::ZoneName, 3}, {Field::ZoneOffset, 1}, {Field::ZoneOffset, 5}};
  static const char* lits[] = {"-", "/", ".", ":", " ", ", ", " '", "T",
                               "at", "' '", "["};
  std::vector<FormatToken> toks;
  size_t n = 1 + rng() % 8;
  Field prev{};
  bool prev_field = false;
  for (size_t i = 0; i < n; ++i) {
    if (rng() % 3 == 0) {
      toks.push_back(FormatToken::lit(lits[rng() % std::size(lits)]));
      prev_field = false;
    } else {
      auto [f, w] = codes[rng() % std::size(codes)];
      if (prev_field && f == prev) continue;
      toks.push_back(FormatToken::field(f, w));
      prev = f;
      prev_field = true;
    }
  }
  return FormatString(std::move(toks));
}

}  // namespace

TEST_CASE("property: tokenize(render(fs)) == fs for random formats") {
  std::mt19937_64 rng(20240901);
  for (int i = 0; i < 1000; ++i) {
    FormatString fs = random_format(rng);
    std::string text = render_format(fs);
    FormatString back = tokenize_format(text);
    REQUIRE(back == fs);
  }
}
