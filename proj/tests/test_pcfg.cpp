#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <map>
#include <random>

#include "datefmt/pcfg.hpp"

using namespace datefmt;

namespace {
const LocaleSpec& en = english_locale();

Grammar& shared_grammar() {
  static Grammar g = [] {
    Grammar b = binarize(build_datetime_grammar(en));
    return b;
  }();
  return g;
}

std::string top_format(const ParseTree& t) {
  return render_format(tree_to_format(t, shared_grammar(), en));
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
}  // namespace

TEST_CASE("per-lhs probabilities sum to one after default weights") {
  Grammar g = build_datetime_grammar(en);
  std::map<int, double> sums;
  for (const auto& r : g.rules) sums[r.lhs] += r.prob;
  for (const auto& [lhs, sum] : sums)
    CHECK_THAT(sum, Catch::Matchers::WithinAbs(1.0, 1e-9));
}

TEST_CASE("default priors carry the documented weights") {
  Grammar g = build_datetime_grammar(en);
  int dg = g.find_nt("DateGrammar");
  int tg = g.find_nt("TimeGrammar");
  int start = g.find_nt("DateTimeGrammar");
  bool saw_date = false, saw_time = false;
  for (const auto& r : g.rules) {
    if (r.lhs == start && r.rhs.size() == 1 && !r.rhs[0].terminal) {
      if (r.rhs[0].id == dg) {
        CHECK(r.prior == 0.9);
        saw_date = true;
      }
      if (r.rhs[0].id == tg) {
        CHECK(r.prior == 0.7);
        saw_time = true;
      }
    }
  }
  CHECK(saw_date);
  CHECK(saw_time);
}

TEST_CASE("day guard weight") {
  CHECK(day_guard_weight(25) == 1.0);
  CHECK(day_guard_weight(13) == 1.0);
  CHECK(day_guard_weight(6) == 0.5);
  CHECK(day_guard_weight(12) == 0.5);
}

TEST_CASE("ambiguous 5/6/2015 yields both endianness trees") {
  auto trees = cyk_parse(lex("5/6/2015"), shared_grammar(), 16, en);
  REQUIRE(trees.size() >= 2);
  std::vector<std::string> fmts;
  for (const auto& t : trees) fmts.push_back(top_format(t));
  CHECK(std::count(fmts.begin(), fmts.end(), "M/d/yyyy") == 1);
  CHECK(std::count(fmts.begin(), fmts.end(), "d/M/yyyy") == 1);
  // both day guards saw values <= 12, so the two trees tie
  size_t middle = std::find(fmts.begin(), fmts.end(), "M/d/yyyy") - fmts.begin();
  size_t little = std::find(fmts.begin(), fmts.end(), "d/M/yyyy") - fmts.begin();
  CHECK_THAT(trees[middle].prob,
             Catch::Matchers::WithinRel(trees[little].prob, 1e-12));
  // declaration order puts the middle-endian reading first
  CHECK(middle < little);
}

TEST_CASE("day over 12 makes the little-endian tree win") {
  auto trees = cyk_parse(lex("25/3/2007"), shared_grammar(), 16, en);
  REQUIRE(!trees.empty());
  // the little-endian reading ranks first; 25 cannot be a month
  CHECK(top_format(trees[0]) == "dd/M/yyyy");
  CHECK(normalized_format_key(tree_to_format(trees[0], shared_grammar(), en)) ==
        normalized_format_key(tokenize_format("d/M/yyyy")));
  for (const auto& t : trees)
    CHECK(normalized_format_key(tree_to_format(t, shared_grammar(), en)) !=
          normalized_format_key(tokenize_format("M/d/yyyy")));
}

TEST_CASE("no parse for impossible values") {
  CHECK(cyk_parse(lex("99/99/9999"), shared_grammar(), 16, en).empty());
  CHECK(cyk_parse(lex("hello world"), shared_grammar(), 16, en).empty());
}

TEST_CASE("tree probability equals the product of its rule probabilities") {
  for (const char* input :
       {"5/6/2015", "04/09/2014 - 23:47", "Fri Apr 01 02:09:27 EDT 2011",
        "Q2 2014", "10:30 p.m."}) {
    auto trees = cyk_parse(lex(input), shared_grammar(), 16, en);
    REQUIRE(!trees.empty());
    for (const auto& t : trees)
      CHECK_THAT(t.prob, Catch::Matchers::WithinRel(
                             recomputed_tree_probability(t, shared_grammar()),
                             1e-9));
  }
}

TEST_CASE("tree_to_format maps the documented examples") {
  auto top = [&](const char* s) {
    auto trees = cyk_parse(lex(s), shared_grammar(), 16, en);
    REQUIRE(!trees.empty());
    return top_format(trees[0]);
  };
  CHECK(top("04/09/2014 - 23:47") == "MM/dd/yyyy - HH:mm");
  CHECK(top("09:30:40") == "HH:mm:ss");
  CHECK(top("Fri Apr 01 02:09:27 EDT 2011") == "EEE MMM dd HH:mm:ss zzz yyyy");
  CHECK(top("[10/Aug/2014:09:30:40") == "[dd/MMM/yyyy:HH:mm:ss");
  CHECK(top("01 '2013") == "MM ''yyyy");
  CHECK(top("September 4, 1998") == "MMMM d, yyyy");
  CHECK(top("25-OCT-13") == "yy-MMM-dd");  // per-value the day guard favors 13 as day
}

TEST_CASE("column evidence resolves two-digit-year placement") {
  // "00" cannot be a day, so the big-endian misreading fails validation
  auto res = detect_nlp(column_of({"01-OCT-13 01.09.00.000000 PM",
                                   "25-DEC-00 11.59.59.000001 AM",
                                   "14-FEB-25 05.30.00.123456 PM"}),
                        en);
  REQUIRE(res.found());
  CHECK(render_format(res.top().format) == "dd-MMM-yy hh.mm.ss.SSSSSS a");
  CHECK(res.top().error_rate == 0.0);
}

TEST_CASE("train estimates probabilities by relative frequency") {
  Grammar g = build_datetime_grammar(en);
  Grammar b = binarize(g);
  // trees for values whose correct parses are unambiguous enough
  std::vector<ParseTree> corpus;
  for (const char* v : {"25/3/2007", "26/4/2008", "27/5/2009"}) {
    auto trees = cyk_parse(lex(v), b, 4, en);
    REQUIRE(!trees.empty());
    corpus.push_back(trees[0]);
  }
  train(b, corpus);
  // every lhs that was seen still sums to 1
  std::map<int, double> sums;
  std::map<int, bool> seen;
  for (const auto& t : corpus) {
    auto mark = [&](auto&& self, const ParseTree& n) -> void {
      if (n.rule >= 0) seen[b.rules[n.rule].lhs] = true;
      for (const auto& c : n.children) self(self, c);
    };
    mark(mark, t);
  }
  for (const auto& r : b.rules) sums[r.lhs] += r.prob;
  for (const auto& [lhs, sum] : sums)
    if (seen[lhs]) CHECK_THAT(sum, Catch::Matchers::WithinAbs(1.0, 1e-9));

  // little-endian was the only date rule in evidence
  int dg = b.find_nt("DateGrammar");
  int little = b.find_nt("LittleEndianDate");
  int middle = b.find_nt("MiddleEndianDate");
  double p_little = 0, p_middle = 0;
  for (const auto& r : b.rules) {
    if (r.lhs == dg && r.rhs.size() == 1 && r.rhs[0].id == little)
      p_little = r.prob;
    if (r.lhs == dg && r.rhs.size() == 1 && r.rhs[0].id == middle)
      p_middle = r.prob;
  }
  CHECK(p_little > 0.9);
  CHECK(p_middle <= kUnseenRuleFloor * 2);

  CHECK_THROWS_AS(train(b, {}), std::invalid_argument);
}

TEST_CASE("train ratio example: three to one") {
  // two rules under one lhs observed 3 and 1 times estimate 0.75 / 0.25
  Grammar g;
  int S = g.nt("S"), A = g.nt("A"), B = g.nt("B");
  g.start = S;
  SymRef ta{true, g.term({"slash", TermKind::SepChar, 0, "/", false})};
  SymRef tb{true, g.term({"dash", TermKind::SepChar, 0, "-", false})};
  g.add(S, {SymRef{false, A}});
  g.add(S, {SymRef{false, B}});
  g.add(A, {ta});
  g.add(B, {tb});
  normalize_probabilities(g);
  Grammar b = binarize(g);
  std::vector<ParseTree> corpus;
  for (int i = 0; i < 3; ++i)
    corpus.push_back(cyk_parse({{TokKind::Sep, "/", 0}}, b, 4, en)[0]);
  corpus.push_back(cyk_parse({{TokKind::Sep, "-", 0}}, b, 4, en)[0]);
  train(b, corpus);
  double pa = 0, pb = 0;
  for (const auto& r : b.rules) {
    if (r.lhs == S && r.rhs[0].id == A && !r.rhs[0].terminal) pa = r.prob;
    if (r.lhs == S && r.rhs[0].id == B && !r.rhs[0].terminal) pb = r.prob;
  }
  CHECK_THAT(pa, Catch::Matchers::WithinAbs(0.75, 1e-9));
  CHECK_THAT(pb, Catch::Matchers::WithinAbs(0.25, 1e-9));
}

TEST_CASE("dominant pattern: single US-style value leans middle-endian") {
  auto res = detect_nlp(column_of({"5/6/2015"}), en);
  REQUIRE(res.found());
  CHECK(render_format(res.top().format) == "M/d/yyyy");
}

TEST_CASE("dominant pattern: unambiguous entry flips the column") {
  auto res = detect_nlp(column_of({"5/6/2015", "25/3/2007"}), en);
  REQUIRE(res.found());
  CHECK(render_format(res.top().format) == "d/M/yyyy");
  CHECK(res.top().error_rate == 0.0);
}

TEST_CASE("homogeneous column carries full mass") {
  auto res = detect_nlp(column_of({"2014-01-02", "2015-11-30", "2016-06-09"}),
                        en);
  REQUIRE(res.found());
  CHECK(render_format(res.top().format) == "yyyy-MM-dd");
  CHECK_THAT(res.top().score,
             Catch::Matchers::WithinAbs(3.0, 1e-9));  // one per value
}

TEST_CASE("dominant pattern invariant under permutation") {
  std::vector<std::string> values = {"5/6/2015", "25/3/2007", "7/8/2009",
                                     "30/1/2011"};
  auto r1 = detect_nlp(column_of(values), en);
  std::reverse(values.begin(), values.end());
  auto r2 = detect_nlp(column_of(values), en);
  REQUIRE(r1.found());
  REQUIRE(r2.found());
  CHECK(render_format(r1.top().format) == render_format(r2.top().format));
  CHECK_THAT(r1.top().score, Catch::Matchers::WithinRel(r2.top().score, 1e-9));
}

TEST_CASE("monotone evidence: adding a little-endian value never hurts it") {
  std::vector<std::string> values = {"5/6/2015", "7/8/2009"};
  auto mass_of = [&](const std::vector<std::string>& vs) {
    auto res = detect_nlp(column_of(vs), en);
    for (const auto& c : res.candidates)
      if (render_format(c.format) == "d/M/yyyy") return c.score;
    return 0.0;
  };
  double before = mass_of(values);
  values.push_back("25/3/2007");
  double after = mass_of(values);
  CHECK(after >= before);
}

TEST_CASE("detect_nlp on the dash-separated date-time") {
  auto res = detect_nlp(column_of({"04/09/2014 - 23:47", "11/23/2014 - 08:15",
                                   "01/02/2015 - 17:59"}),
                        en);
  REQUIRE(res.found());
  CHECK(render_format(res.top().format) == "MM/dd/yyyy - HH:mm");
  CHECK(res.top().error_rate == 0.0);
}
