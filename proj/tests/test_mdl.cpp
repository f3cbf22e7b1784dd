#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "datefmt/mdl.hpp"
#include "datefmt/synth.hpp"

using namespace datefmt;

namespace {
const LocaleSpec& en = english_locale();

bool contains_structure(const std::vector<Structure>& set,
                        const std::vector<Domain>& domains) {
  for (const auto& s : set)
    if (s.domains == domains) return true;
  return false;
}

ColumnSample column_of(std::vector<std::string> values) {
  ColumnSample cs;
  cs.column_name = "test";
  cs.raw_count = values.size();
  cs.non_null_values = values;
  cs.sample = sample_column(values, 32);
  cs.stats.non_null_count = values.size();
  return cs;
}

Domain dom(DomainKind k, int w = 0, std::string text = "") {
  return Domain{k, w, std::move(text)};
}
}  // namespace

TEST_CASE("enumerate finds the ISO structure") {
  auto structures = enumerate_structures({"2014-01-02", "2015-11-30"}, en);
  CHECK(contains_structure(
      structures,
      {dom(DomainKind::Year4), dom(DomainKind::ConstantLiteral, 0, "-"),
       dom(DomainKind::MonthNum), dom(DomainKind::ConstantLiteral, 0, "-"),
       dom(DomainKind::DayNum)}));
}

TEST_CASE("enumerate finds the quoted-year structure") {
  auto structures = enumerate_structures({"01 '2013"}, en);
  CHECK(contains_structure(
      structures,
      {dom(DomainKind::MonthNum), dom(DomainKind::ConstantLiteral, 0, " '"),
       dom(DomainKind::Year4)}));
}

TEST_CASE("enumerate rejects an empty sample") {
  CHECK_THROWS_AS(enumerate_structures({}, en), std::invalid_argument);
}

TEST_CASE("is_redundant rules") {
  CHECK(is_redundant(dom(DomainKind::Year4),
                     {dom(DomainKind::Year4),
                      dom(DomainKind::ConstantLiteral, 0, "-")}));
  // a second year in any width is still a duplicate date part
  CHECK(is_redundant(dom(DomainKind::Year2), {dom(DomainKind::Year4)}));
  CHECK(is_redundant(dom(DomainKind::MonthWord), {dom(DomainKind::MonthNum)}));
  // context: meridian needs a 12-hour hour
  CHECK(is_redundant(dom(DomainKind::Meridian),
                     {dom(DomainKind::Hour24),
                      dom(DomainKind::ConstantLiteral, 0, ":")}));
  CHECK(!is_redundant(dom(DomainKind::Meridian),
                      {dom(DomainKind::Hour12),
                       dom(DomainKind::ConstantLiteral, 0, ":"),
                       dom(DomainKind::Minute)}));
  CHECK(!is_redundant(dom(DomainKind::DayNum),
                      {dom(DomainKind::MonthNum),
                       dom(DomainKind::ConstantLiteral, 0, "/")}));
  CHECK(is_redundant(dom(DomainKind::Minute),
                     {dom(DomainKind::ConstantLiteral, 0, "x")}));
  CHECK(is_redundant(dom(DomainKind::Millis, 3), {dom(DomainKind::Minute)}));
}

TEST_CASE("description length: constants cost headers only") {
  Structure s;
  s.domains = {dom(DomainKind::ConstantLiteral, 0, "x")};
  // header 8 bits + 8 per literal byte, zero data bits
  CHECK(description_length(s, {"x"}, en) == 16.0);
}

TEST_CASE("description length: year beats an unconstrained number") {
  Structure year;
  year.domains = {dom(DomainKind::Year4)};
  Structure number;
  number.domains = {dom(DomainKind::BoundedNumber, 4)};
  CHECK(description_length(year, {"2014"}, en) <
        description_length(number, {"2014"}, en));
}

TEST_CASE("description length grows with appended uncertain domains") {
  Structure base;
  base.domains = {dom(DomainKind::Year4)};
  Structure longer;
  longer.domains = {dom(DomainKind::Year4),
                    dom(DomainKind::ConstantLiteral, 0, "-"),
                    dom(DomainKind::MonthNum)};
  double a = description_length(base, {"2014"}, en);
  double b = description_length(longer, {"2014-06"}, en);
  CHECK(b > a);
}

TEST_CASE("global prune drops incomplete structures") {
  Structure day_alone;
  day_alone.domains = {dom(DomainKind::DayNum)};
  CHECK(!structure_survives_global_prune(day_alone));

  Structure time_only;
  time_only.domains = {dom(DomainKind::Hour24),
                       dom(DomainKind::ConstantLiteral, 0, ":"),
                       dom(DomainKind::Minute)};
  CHECK(structure_survives_global_prune(time_only));

  Structure ambiguous;
  ambiguous.domains = {dom(DomainKind::Year2),
                       dom(DomainKind::ConstantLiteral, 0, "."),
                       dom(DomainKind::BoundedNumber, 2)};
  CHECK(!structure_survives_global_prune(ambiguous));

  Structure month_no_anchor;
  month_no_anchor.domains = {dom(DomainKind::MonthNum)};
  CHECK(!structure_survives_global_prune(month_no_anchor));

  Structure month_year;
  month_year.domains = {dom(DomainKind::MonthNum),
                        dom(DomainKind::ConstantLiteral, 0, "/"),
                        dom(DomainKind::Year4)};
  CHECK(structure_survives_global_prune(month_year));
}

namespace {
Structure with_stats(std::vector<Domain> domains,
                     const std::vector<std::string>& values) {
  Structure s;
  s.domains = std::move(domains);
  s.stats.assign(s.domains.size(), {});
  for (const auto& v : values) {
    std::vector<std::pair<int, bool>> lens;
    REQUIRE(datefmt::detail::segment_value(v, s.domains, 0, 0, en, lens));
    size_t p = 0;
    for (size_t i = 0; i < s.domains.size(); ++i) {
      s.stats[i].add(std::string_view(v).substr(p, lens[i].first),
                     lens[i].second);
      p += lens[i].first;
    }
  }
  return s;
}
}  // namespace

TEST_CASE("unparameterize maps domains onto field codes") {
  Structure iso = with_stats(
      {dom(DomainKind::Year4), dom(DomainKind::ConstantLiteral, 0, "-"),
       dom(DomainKind::MonthNum), dom(DomainKind::ConstantLiteral, 0, "-"),
       dom(DomainKind::DayNum)},
      {"2014-01-02"});
  CHECK(render_format(unparameterize(iso, en)) == "yyyy-MM-dd");

  Structure quoted = with_stats(
      {dom(DomainKind::MonthNum), dom(DomainKind::ConstantLiteral, 0, " '"),
       dom(DomainKind::Year4)},
      {"01 '2013"});
  CHECK(render_format(unparameterize(quoted, en)) == "MM ''yyyy");

  Structure ctime = with_stats(
      {dom(DomainKind::WeekdayWord), dom(DomainKind::ConstantLiteral, 0, " "),
       dom(DomainKind::MonthWord), dom(DomainKind::ConstantLiteral, 0, " "),
       dom(DomainKind::DayNum)},
      {"Fri Apr 01", "Tue Nov 30"});
  CHECK(render_format(unparameterize(ctime, en)) == "EEE MMM dd");

  Structure full_month = with_stats(
      {dom(DomainKind::MonthWord), dom(DomainKind::ConstantLiteral, 0, " "),
       dom(DomainKind::Year4)},
      {"January 2014", "October 2015"});
  CHECK(render_format(unparameterize(full_month, en)) == "MMMM yyyy");

  Structure untranslatable;
  untranslatable.domains = {dom(DomainKind::BoundedNumber, 4)};
  untranslatable.stats.assign(1, {});
  CHECK_THROWS_AS(unparameterize(untranslatable, en), UntranslatableDomain);
}

TEST_CASE("constant month words are tagged with their date part") {
  Structure s = with_stats(
      {dom(DomainKind::ConstantLiteral, 0, "January"),
       dom(DomainKind::ConstantLiteral, 0, " "), dom(DomainKind::Year4)},
      {"January 2014", "January 2015"});
  CHECK(render_format(unparameterize(s, en)) == "MMMM yyyy");
}

TEST_CASE("rank_candidates ordering") {
  auto mk = [](const char* pat, double err, double dl,
               const char* loc = "en") {
    MdlCandidate c;
    c.format = tokenize_format(pat);
    c.error_rate = err;
    c.description_length = dl;
    c.locale_id = loc;
    return c;
  };

  SECTION("accuracy dominates") {
    std::vector<MdlCandidate> cands = {mk("HHmmss", 0.2, 10.0),
                                       mk("MM/dd/yyyy", 0.0, 99.0)};
    rank_candidates(cands, "en");
    CHECK(render_format(cands[0].format) == "MM/dd/yyyy");
  }

  SECTION("significance outranks compactness") {
    std::vector<MdlCandidate> cands = {mk("MM/yyyy", 0.0, 5.0),
                                       mk("yyyy-MM-dd", 0.0, 50.0)};
    rank_candidates(cands, "en");
    CHECK(render_format(cands[0].format) == "yyyy-MM-dd");
  }

  SECTION("locale match breaks remaining ties") {
    std::vector<MdlCandidate> cands = {mk("dd MMMM yyyy", 0.0, 5.0, "en"),
                                       mk("dd MMMM yyyy", 0.0, 5.0, "es")};
    rank_candidates(cands, "es");
    CHECK(cands[0].locale_id == "es");
    rank_candidates(cands, "en");
    CHECK(cands[0].locale_id == "en");
  }

  SECTION("compactness breaks ties, then pattern text") {
    std::vector<MdlCandidate> cands = {mk("MM-dd-yyyy", 0.0, 50.0),
                                       mk("MM/dd/yyyy", 0.0, 5.0)};
    rank_candidates(cands, "en");
    CHECK(render_format(cands[0].format) == "MM/dd/yyyy");
    std::vector<MdlCandidate> tie = {mk("dd/MM/yyyy", 0.0, 5.0),
                                     mk("MM/dd/yyyy", 0.0, 5.0)};
    rank_candidates(tie, "en");
    CHECK(render_format(tie[0].format) == "MM/dd/yyyy");  // 'M' < 'd'
  }

  SECTION("single candidate stays put") {
    std::vector<MdlCandidate> cands = {mk("yyyy", 0.0, 1.0)};
    rank_candidates(cands, "en");
    CHECK(cands.size() == 1);
  }
}

TEST_CASE("detect_mdl recovers the ISO format") {
  auto res = detect_mdl(column_of({"2014-01-02", "2015-11-30", "2016-06-09"}),
                        en);
  REQUIRE(res.found());
  CHECK(render_format(res.top().format) == "yyyy-MM-dd");
  CHECK(res.top().error_rate == 0.0);
}

TEST_CASE("detect_mdl recovers the bracketed log format") {
  auto res = detect_mdl(column_of({"[10/Aug/2014:09:30:40",
                                   "[25/Dec/2015:23:01:59",
                                   "[03/Jan/2016:00:15:02"}),
                        en);
  REQUIRE(res.found());
  CHECK(render_format(res.top().format) == "[dd/MMM/yyyy:HH:mm:ss");
}

TEST_CASE("detect_mdl finds nothing in non-date text") {
  auto res = detect_mdl(column_of({"abc", "def"}), en);
  CHECK(!res.found());
}

TEST_CASE("detect_mdl on every Table I format") {
  const std::pair<const char*, const char*> table1[] = {
      {"EEE MMM dd HH:mm:ss zzz yyyy", "Fri Apr 01 02:09:27 EDT 2011"},
      {"[dd/MMM/yyyy:HH:mm:ss", "[10/Aug/2014:09:30:40"},
      {"dd-MMM-yy hh.mm.ss.SSSSSS a", "01-OCT-13 01.09.00.000000 PM"},
      {"MM ''yyyy", "01 '2013"},
      {"MM/dd/yyyy - HH:mm", "04/09/2014 - 23:47"},
  };
  for (const auto& [pattern, example] : table1) {
    // a few synthetic values plus the paper's example value
    std::vector<std::string> values =
        generate_column_values(pattern, 7, 12, en);
    values.push_back(example);
    auto res = detect_mdl(column_of(values), en);
    INFO(pattern);
    REQUIRE(res.found());
    CHECK(normalized_format_key(res.top().format) ==
          normalized_format_key(tokenize_format(pattern)));
    CHECK(res.top().error_rate == 0.0);
  }
}

TEST_CASE("ranked structures satisfy prunable and context soundness") {
  for (const char* pattern :
       {"yyyy-MM-dd HH:mm:ss", "hh:mm:ss a", "dd-MMM-yy hh.mm.ss.SSSSSS a"}) {
    auto values = generate_column_values(pattern, 11, 16, en);
    auto structures = global_prune(enumerate_structures(values, en));
    for (const auto& s : structures) {
      std::map<DatePart, int> parts;
      bool hour12 = false, hour12_before_meridian = true;
      for (const auto& d : s.domains) {
        if (d.part() != DatePart::None) parts[d.part()] += 1;
        if (d.kind == DomainKind::Hour12) hour12 = true;
        if (d.kind == DomainKind::Meridian && !hour12)
          hour12_before_meridian = false;
      }
      for (const auto& [part, count] : parts) {
        INFO(pattern);
        CHECK(count == 1);
      }
      CHECK(hour12_before_meridian);
    }
  }
}

TEST_CASE("detect_mdl is deterministic") {
  auto values = generate_column_values("MM/dd/yyyy - HH:mm", 3, 20, en);
  auto a = detect_mdl(column_of(values), en);
  auto b = detect_mdl(column_of(values), en);
  REQUIRE(a.candidates.size() == b.candidates.size());
  for (size_t i = 0; i < a.candidates.size(); ++i) {
    CHECK(render_format(a.candidates[i].format) ==
          render_format(b.candidates[i].format));
    CHECK(a.candidates[i].score == b.candidates[i].score);
    CHECK(a.candidates[i].error_rate == b.candidates[i].error_rate);
  }
}

TEST_CASE("every ranked candidate stays within the error threshold") {
  auto values = generate_column_values("dd/MM/yyyy", 5, 30, en);
  values.push_back("99/99/9999");  // one junk row: 1/31 ~ 3.2% error
  auto res = detect_mdl(column_of(values), en);
  for (const auto& c : res.candidates) CHECK(c.error_rate <= 0.05);
}

TEST_CASE("composite digit runs recover MMyyyy") {
  auto res = detect_mdl(column_of({"012014", "112015", "062016"}), en);
  REQUIRE(res.found());
  CHECK(render_format(res.top().format) == "MMyyyy");
}
