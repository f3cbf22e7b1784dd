// Drives the installed binary end to end and freezes the JSON output
// schemas.

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

using json = nlohmann::json;

namespace {

std::string bin() {
  const char* p = std::getenv("DATEFMT_BIN");
  REQUIRE(p != nullptr);
  return p;
}

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string cmd = bin() + " " + args;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, n);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::filesystem::path corpus_dir() {
  static std::filesystem::path dir = [] {
    auto d = std::filesystem::temp_directory_path() / "datefmt_cli_corpus";
    std::filesystem::remove_all(d);
    RunResult r = run("gen-corpus " + d.string() + " --columns 10 --seed 5");
    REQUIRE(r.exit_code == 0);
    return d;
  }();
  return dir;
}

}  // namespace

TEST_CASE("gen-corpus writes files and a manifest") {
  auto dir = corpus_dir();
  CHECK(std::filesystem::exists(dir / "col_0000.csv"));
  std::ifstream mf(dir / "manifest.json");
  json manifest = json::parse(mf);
  REQUIRE(manifest.contains("columns"));
  REQUIRE(manifest["columns"].is_array());
  CHECK(manifest["columns"].size() == 10);
  CHECK(manifest["seed"].is_number());
  for (const auto& c : manifest["columns"]) {
    CHECK(c["file"].is_string());
    CHECK(c["column"].is_string());
    CHECK(c["format"].is_string());
    CHECK(c["locale"].is_string());
  }
}

TEST_CASE("gen-corpus is deterministic per seed") {
  namespace fs = std::filesystem;
  auto d1 = fs::temp_directory_path() / "datefmt_cli_gen1";
  auto d2 = fs::temp_directory_path() / "datefmt_cli_gen2";
  fs::remove_all(d1);
  fs::remove_all(d2);
  REQUIRE(run("gen-corpus " + d1.string() + " --columns 4 --seed 9").exit_code == 0);
  REQUIRE(run("gen-corpus " + d2.string() + " --columns 4 --seed 9").exit_code == 0);
  for (const char* name : {"col_0000.csv", "col_0003.csv", "manifest.json"}) {
    std::ifstream f1(d1 / name, std::ios::binary), f2(d2 / name, std::ios::binary);
    std::string c1((std::istreambuf_iterator<char>(f1)), {});
    std::string c2((std::istreambuf_iterator<char>(f2)), {});
    CHECK(c1 == c2);
  }
}

TEST_CASE("detect emits the frozen JSON schema") {
  auto dir = corpus_dir();
  RunResult r = run("detect " + (dir / "col_0000.csv").string() +
                    " --engine both");
  REQUIRE(r.exit_code == 0);
  json out = json::parse(r.out);
  CHECK(out["file"].is_string());
  CHECK(out["column"].is_string());
  REQUIRE(out["results"].is_array());
  REQUIRE(out["results"].size() == 2);  // one per engine, same column
  for (const auto& res : out["results"]) {
    CHECK((res["engine"] == "mdl" || res["engine"] == "nlp"));
    CHECK(res["column"] == out["column"]);
    REQUIRE(res["candidates"].is_array());
    REQUIRE(!res["candidates"].empty());
    for (const auto& c : res["candidates"]) {
      CHECK(c["format"].is_string());
      CHECK(c["locale"].is_string());
      CHECK(c["error_rate"].is_number());
      CHECK(c["error_rate"].get<double>() <= 0.05);
      CHECK(c["score"].is_number());
    }
    CHECK(res["timing"]["analysis_micros"].is_number());
    CHECK(res["timing"]["analysis_micros"].get<double>() >= 0);
    CHECK(res["timing"]["validation_micros"].is_number());
  }
  CHECK(out["results"][0]["candidates"][0]["format"] ==
        out["results"][1]["candidates"][0]["format"]);
}

TEST_CASE("detect against the manifest label") {
  auto dir = corpus_dir();
  std::ifstream mf(dir / "manifest.json");
  json manifest = json::parse(mf);
  const auto& col = manifest["columns"][1];
  RunResult r = run("detect " + (dir / col["file"].get<std::string>()).string() +
                    " --engine mdl");
  REQUIRE(r.exit_code == 0);
  json out = json::parse(r.out);
  CHECK(out["results"][0]["candidates"][0]["format"] == col["format"]);
}

TEST_CASE("detect exit codes") {
  auto dir = corpus_dir();
  namespace fs = std::filesystem;
  auto junk = fs::temp_directory_path() / "datefmt_cli_junk.csv";
  {
    std::ofstream f(junk);
    f << "c\nword9foo\nblah7xyz\n";
  }
  CHECK(run("detect " + junk.string() + " --column c 2>/dev/null").exit_code == 2);
  CHECK(run("detect " + (dir / "col_0000.csv").string() +
            " --column missing 2>/dev/null")
            .exit_code == 1);
  CHECK(run("detect /no/such/file.csv 2>/dev/null").exit_code == 1);
  CHECK(run("bogus-subcommand 2>/dev/null").exit_code == 1);
}

TEST_CASE("parse applies defaults and honors --strict") {
  namespace fs = std::filesystem;
  auto vals = fs::temp_directory_path() / "datefmt_cli_vals.txt";
  {
    std::ofstream f(vals);
    f << "01 '2013\n23:47\n";
  }
  RunResult ok = run("parse " + vals.string() + " --pattern \"MM ''''yyyy\" "
                     "2>/dev/null");
  CHECK(ok.exit_code == 0);
  CHECK(ok.out.find("2013-01-01T00:00:00") != std::string::npos);

  auto timeonly = fs::temp_directory_path() / "datefmt_cli_time.txt";
  {
    std::ofstream f(timeonly);
    f << "23:47\n";
  }
  RunResult t = run("parse " + timeonly.string() + " --pattern HH:mm");
  CHECK(t.exit_code == 0);
  CHECK(t.out == "1899-12-30T23:47:00\n");

  RunResult strict = run("parse " + vals.string() +
                         " --pattern HH:mm --strict 2>/dev/null");
  CHECK(strict.exit_code == 3);
  RunResult lax = run("parse " + vals.string() +
                      " --pattern HH:mm 2>/dev/null");
  CHECK(lax.exit_code == 0);

  CHECK(run("parse " + vals.string() + " --pattern \"((\" 2>/dev/null")
            .exit_code == 1);
}

TEST_CASE("crossval JSON schema and determinism across job counts") {
  auto dir = corpus_dir();
  RunResult r1 = run("crossval " + dir.string() + " --jobs 1");
  REQUIRE(r1.exit_code == 0);
  json a = json::parse(r1.out);
  CHECK(a["total_columns"].is_number());
  CHECK(a["both_detected"].is_number());
  CHECK(a["match_count"].is_number());
  CHECK(a["match_rate"].is_number());
  REQUIRE(a["discrepancies"].is_array());
  size_t matches = a["match_count"].get<size_t>();
  CHECK(matches + a["discrepancies"].size() == a["both_detected"].get<size_t>());

  RunResult r4 = run("crossval " + dir.string() + " --jobs 4");
  REQUIRE(r4.exit_code == 0);
  CHECK(r1.out == r4.out);

  CHECK(run("crossval /no/such/dir 2>/dev/null").exit_code == 1);

  RunResult table = run("crossval " + dir.string() + " --format table");
  CHECK(table.exit_code == 0);
  CHECK(table.out.find("match rate") != std::string::npos);
}

TEST_CASE("stats JSON schema") {
  auto dir = corpus_dir();
  RunResult r = run("stats " + dir.string() + " --engine mdl");
  REQUIRE(r.exit_code == 0);
  json out = json::parse(r.out);
  for (const char* key : {"records", "error_rate", "analysis_micros",
                          "validation_micros", "median_not_null"}) {
    INFO(key);
    REQUIRE(out.contains(key));
    CHECK(out[key].is_number());
    CHECK(out[key].get<double>() >= 0);
  }
  CHECK(out["records"].get<int>() == 10);
  CHECK(run("stats /no/such/dir 2>/dev/null").exit_code == 1);
}

TEST_CASE("spanish locale columns detect under --locale es") {
  namespace fs = std::filesystem;
  auto f = fs::temp_directory_path() / "datefmt_cli_es.csv";
  {
    std::ofstream out(f);
    out << "fecha\n05 enero 2014\n23 diciembre 2015\n14 agosto 2016\n";
  }
  RunResult r = run("detect " + f.string() + " --column fecha --locale es "
                    "--engine both");
  REQUIRE(r.exit_code == 0);
  json out = json::parse(r.out);
  for (const auto& res : out["results"]) {
    REQUIRE(!res["candidates"].empty());
    CHECK(res["candidates"][0]["format"] == "dd MMMM yyyy");
    CHECK(res["candidates"][0]["locale"] == "es");
  }
}
