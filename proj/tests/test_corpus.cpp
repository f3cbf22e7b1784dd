#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>

#include "datefmt/corpus.hpp"

using namespace datefmt;

namespace {
const LocaleSpec& en = english_locale();

std::filesystem::path temp_file(const std::string& name,
                                const std::string& content) {
  auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream out(p, std::ios::binary);
  out << content;
  return p;
}
}  // namespace

TEST_CASE("filter_nulls drops digitless and null-like values") {
  CHECK(filter_nulls({"//", "2014-01-02"}, en) ==
        std::vector<std::string>{"2014-01-02"});
  CHECK(filter_nulls({"0000-00-00"}, en).empty());
  CHECK(filter_nulls({"NaN", "null", "NULL", "Null"}, en).empty());
  CHECK(filter_nulls({"January"}, en) == std::vector<std::string>{"January"});
  CHECK(filter_nulls({"Tue"}, en) == std::vector<std::string>{"Tue"});
  CHECK(filter_nulls({"", "  ", "--"}, en).empty());
  CHECK(filter_nulls({"Fall 2000"}, en) ==
        std::vector<std::string>{"Fall 2000"});
}

TEST_CASE("filter_nulls is idempotent") {
  std::vector<std::string> input = {"//",   "2014-01-02", "null", "Jan",
                                    "NaN",  "12:30",      "",     "what",
                                    "Fri.", "0000-00-00"};
  auto once = filter_nulls(input, en);
  CHECK(filter_nulls(once, en) == once);
}

TEST_CASE("sample_column keeps all distinct values when under k") {
  std::vector<std::string> v;
  for (int i = 0; i < 10; ++i) v.push_back("v" + std::to_string(i));
  CHECK(sample_column(v, 32).size() == 10);
}

TEST_CASE("sample_column caps at k in hash order") {
  std::vector<std::string> v;
  for (int i = 0; i < 100; ++i) v.push_back("value-" + std::to_string(i));
  auto s = sample_column(v, 32);
  REQUIRE(s.size() == 32);
  // independent oracle: hash everything, sort, take 32
  std::vector<std::pair<uint64_t, std::string>> hashed;
  for (const auto& x : v) hashed.emplace_back(fnv1a64(x), x);
  std::sort(hashed.begin(), hashed.end());
  for (size_t i = 0; i < 32; ++i) CHECK(s[i] == hashed[i].second);
}

TEST_CASE("sample_column collapses duplicates and ignores order") {
  std::vector<std::string> v = {"a", "a", "b"};
  auto s = sample_column(v, 32);
  CHECK(s.size() == 2);

  std::vector<std::string> big;
  for (int i = 0; i < 60; ++i) big.push_back("x" + std::to_string(i));
  auto sorted_sample = sample_column(big, 32);
  std::mt19937_64 rng(3);
  std::shuffle(big.begin(), big.end(), rng);
  CHECK(sample_column(big, 32) == sorted_sample);
}

TEST_CASE("timestamp classification") {
  CHECK(classify_timestamps({"1412345678", "1412345999"}) ==
        TimestampClass::UnixEpochSeconds);
  CHECK(classify_timestamps({"1412345678123"}) ==
        TimestampClass::UnixEpochMillis);
  CHECK(classify_timestamps({"42689.5"}) == TimestampClass::ExcelSerial);
  CHECK(classify_timestamps({"42689", "1"}) == TimestampClass::ExcelSerial);
  CHECK(classify_timestamps({"04/09/2014"}) == TimestampClass::NotNumeric);
  CHECK(classify_timestamps({"123456789012345678"}) ==
        TimestampClass::PlainNumber);
  CHECK(classify_timestamps({"-5", "17"}) == TimestampClass::PlainNumber);
  CHECK(classify_timestamps({"20241110"}) == TimestampClass::PlainNumber);
}

TEST_CASE("classification never treats lettered values as numeric") {
  CHECK(classify_timestamps({"1412345678", "x"}) == TimestampClass::NotNumeric);
  CHECK(classify_timestamps({"12e5"}) == TimestampClass::NotNumeric);
}

TEST_CASE("csv reader handles quoting") {
  std::istringstream in(
      "name,date\n"
      "\"Smith, Jo\",2014-01-02\n"
      "plain,\"2014\"\"01\"\n"
      "last,2014-01-03");
  CsvTable t = read_csv(in);
  REQUIRE(t.header == std::vector<std::string>{"name", "date"});
  REQUIRE(t.rows.size() == 3);
  CHECK(t.rows[0][0] == "Smith, Jo");
  CHECK(t.rows[1][1] == "2014\"01");
  CHECK(t.rows[2][1] == "2014-01-03");
}

TEST_CASE("load_column by name and index") {
  auto p = temp_file("datefmt_test_cols.csv",
                     "fecha,other\n2014-01-02,x\n2014-01-03,y\n");
  ColumnSample byname = load_column(p.string(), "fecha", en);
  CHECK(byname.column_name == "fecha");
  CHECK(byname.non_null_values.size() == 2);
  ColumnSample byindex = load_column(p.string(), "0", en);
  CHECK(byindex.column_name == "fecha");
  CHECK_THROWS_AS(load_column(p.string(), "missing", en), LoadError);
}

TEST_CASE("load_column error kinds") {
  auto nan = temp_file("datefmt_test_nan.csv", "c\nNaN\nNaN\n");
  try {
    load_column(nan.string(), "c", en);
    FAIL("expected EmptyAfterFiltering");
  } catch (const LoadError& e) {
    CHECK(e.kind() == LoadErrorKind::EmptyAfterFiltering);
  }

  auto excel = temp_file("datefmt_test_excel.csv", "c\n42689.5\n41000\n");
  try {
    load_column(excel.string(), "c", en);
    FAIL("expected NumericTimestamp");
  } catch (const LoadError& e) {
    CHECK(e.kind() == LoadErrorKind::NumericTimestamp);
    CHECK(e.timestamp_class() == TimestampClass::ExcelSerial);
  }

  CHECK_THROWS_AS(load_column("/nonexistent/file.csv", "c", en), LoadError);
}

TEST_CASE("load_column reads newline-delimited text") {
  auto p = temp_file("datefmt_test_lines.txt", "10:30\n11:45\nnull\n");
  ColumnSample cs = load_column(p.string(), "", en);
  CHECK(cs.column_name == "datefmt_test_lines");
  CHECK(cs.non_null_values == std::vector<std::string>{"10:30", "11:45"});
  CHECK(cs.stats.non_null_count == 2);
}

TEST_CASE("load_column is deterministic for identical bytes") {
  auto p = temp_file("datefmt_test_det.csv", "c\n2014-01-02\n2014-01-03\n");
  ColumnSample a = load_column(p.string(), "c", en);
  ColumnSample b = load_column(p.string(), "c", en);
  CHECK(a.sample == b.sample);
  CHECK(a.non_null_values == b.non_null_values);
}

TEST_CASE("row cap applies") {
  std::string content = "c\n";
  for (int i = 0; i < 1200; ++i)
    content += "v" + std::to_string(i % 1100) + "\n";
  auto p = temp_file("datefmt_test_cap.csv", content);
  std::ifstream in(p, std::ios::binary);
  CsvTable t = read_csv(in, 1000);
  CHECK(t.rows.size() == 1000);
}
