// datefmt: infer ICU date-time formats from columns of raw strings, apply
// them, and cross-validate the two inference engines.
//
// Exit codes: 0 success, 1 usage or I/O error, 2 no format found,
// 3 parse failures under --strict.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "datefmt/crossval.hpp"
#include "datefmt/mdl.hpp"
#include "datefmt/parallel.hpp"
#include "datefmt/pcfg.hpp"
#include "datefmt/synth.hpp"

using json = nlohmann::ordered_json;
using namespace datefmt;

namespace {

struct GlobalOptions {
  std::string format = "json";  // json | table
  std::string locale = "en";
  double max_error_rate = 0.05;
  size_t sample_size = 32;
  unsigned jobs = 1;
  uint64_t seed = 1;
};

const LocaleSpec& resolve_locale(const std::string& id) {
  if (const LocaleSpec* loc = find_builtin_locale(id)) return *loc;
  throw CLI::ValidationError("--locale", "unknown locale: " + id);
}

json candidate_json(const FormatCandidate& c) {
  return json{{"format", render_format(c.format)},
              {"locale", c.locale_id},
              {"error_rate", c.error_rate},
              {"score", c.score}};
}

json result_json(const DetectionResult& r) {
  json cands = json::array();
  for (const auto& c : r.candidates) cands.push_back(candidate_json(c));
  return json{{"engine", r.engine},
              {"column", r.column},
              {"candidates", std::move(cands)},
              {"timing", json{{"analysis_micros", r.analysis_micros},
                              {"validation_micros", r.validation_micros}}}};
}

void print_result_table(const DetectionResult& r) {
  std::printf("engine %s, column %s (analysis %lld us, validation %lld us)\n",
              r.engine.c_str(), r.column.c_str(),
              static_cast<long long>(r.analysis_micros),
              static_cast<long long>(r.validation_micros));
  if (r.candidates.empty()) {
    std::printf("  (no format found)\n");
    return;
  }
  std::printf("  %-4s %-36s %-6s %-10s %s\n", "rank", "format", "locale",
              "error", "score");
  int rank = 1;
  for (const auto& c : r.candidates)
    std::printf("  %-4d %-36s %-6s %-10.4f %.4f\n", rank++,
                render_format(c.format).c_str(), c.locale_id.c_str(),
                c.error_rate, c.score);
}

int cmd_detect(const GlobalOptions& g, const std::string& file,
               const std::string& column, const std::string& engine) {
  const LocaleSpec& loc = resolve_locale(g.locale);
  DetectOptions opts;
  opts.max_error_rate = g.max_error_rate;
  opts.sample_size = g.sample_size;
  ColumnSample cs;
  try {
    cs = load_column(file, column, loc, opts.sample_size);
  } catch (const LoadError& e) {
    std::fprintf(stderr, "datefmt: %s\n", e.what());
    return 1;
  }
  std::vector<DetectionResult> results;
  if (engine == "mdl" || engine == "both")
    results.push_back(detect_mdl(cs, loc, opts));
  if (engine == "nlp" || engine == "both")
    results.push_back(detect_nlp(cs, loc, opts));
  bool any = false;
  for (const auto& r : results) any = any || r.found();
  if (g.format == "json") {
    json out{{"file", file}, {"column", cs.column_name}};
    json arr = json::array();
    for (const auto& r : results) arr.push_back(result_json(r));
    out["results"] = std::move(arr);
    std::cout << out.dump(2) << "\n";
  } else {
    for (const auto& r : results) print_result_table(r);
  }
  return any ? 0 : 2;
}

int cmd_parse(const GlobalOptions& g, const std::string& file,
              const std::string& column, const std::string& format,
              bool strict) {
  const LocaleSpec& loc = resolve_locale(g.locale);
  FormatString fs;
  try {
    fs = tokenize_format(format);
  } catch (const FormatError& e) {
    std::fprintf(stderr, "datefmt: bad format: %s\n", e.what());
    return 1;
  }
  std::vector<std::string> values;
  try {
    values = load_raw_values(file, column);
  } catch (const LoadError& e) {
    std::fprintf(stderr, "datefmt: %s\n", e.what());
    return 1;
  }
  bool has_subsecond = false;
  for (const auto& t : fs.tokens())
    if (t.is_field && t.code.field == Field::Subsecond) has_subsecond = true;
  size_t bad = 0;
  size_t lineno = 0;
  for (const auto& v : values) {
    ++lineno;
    ParseResult r = dateparse(v, fs, loc);
    if (!r.ok()) {
      ++bad;
      std::fprintf(stderr,
                   "datefmt: line %zu: %s at byte %zu (token %zu): %s\n",
                   lineno, parse_error_name(r.error().kind),
                   r.error().byte_offset, r.error().token_index, v.c_str());
      continue;
    }
    std::cout << iso8601(apply_defaults(r.value()), has_subsecond) << "\n";
  }
  if (strict && bad > 0) return 3;
  return 0;
}

json crossval_json(const CrossvalReport& r) {
  json ds = json::array();
  for (const auto& d : r.discrepancies)
    ds.push_back(json{{"column", d.column},
                      {"mdl_format", d.mdl_format},
                      {"nlp_format", d.nlp_format},
                      {"category", discrepancy_category_name(d.category)}});
  return json{{"total_columns", r.total_columns},
              {"both_detected", r.both_detected},
              {"match_count", r.match_count},
              {"match_rate", r.match_rate},
              {"discrepancies", std::move(ds)}};
}

int cmd_crossval(const GlobalOptions& g, const std::string& dir) {
  const LocaleSpec& loc = resolve_locale(g.locale);
  CrossvalOptions opts;
  opts.detect.max_error_rate = g.max_error_rate;
  opts.detect.sample_size = g.sample_size;
  opts.jobs = g.jobs;
  CrossvalReport report;
  try {
    report = cross_validate(dir, loc, opts);
  } catch (const LoadError& e) {
    std::fprintf(stderr, "datefmt: %s\n", e.what());
    return 1;
  }
  if (report.total_columns == 0) {
    std::fprintf(stderr, "datefmt: no loadable columns in %s\n", dir.c_str());
    return 1;
  }
  if (g.format == "json") {
    std::cout << crossval_json(report).dump(2) << "\n";
  } else {
    std::printf("columns %zu, compared %zu, matched %zu, match rate %.4f\n",
                report.total_columns, report.both_detected, report.match_count,
                report.match_rate);
    if (!report.discrepancies.empty()) {
      std::printf("%-28s %-24s %-24s %s\n", "column", "mdl", "nlp", "category");
      for (const auto& d : report.discrepancies)
        std::printf("%-28s %-24s %-24s %s\n", d.column.c_str(),
                    d.mdl_format.empty() ? "-" : d.mdl_format.c_str(),
                    d.nlp_format.empty() ? "-" : d.nlp_format.c_str(),
                    discrepancy_category_name(d.category));
    }
  }
  return 0;
}

int cmd_gen_corpus(const GlobalOptions& g, const std::string& out_dir,
                   size_t n_columns, size_t values) {
  const LocaleSpec& loc = resolve_locale(g.locale);
  GenOptions opts;
  opts.n_columns = n_columns;
  opts.seed = g.seed;
  opts.values_per_column = values;
  std::vector<GeneratedColumn> manifest;
  try {
    manifest = generate_corpus(out_dir, opts, loc);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "datefmt: %s\n", e.what());
    return 1;
  }
  json cols = json::array();
  for (const auto& m : manifest)
    cols.push_back(json{{"file", m.file},
                        {"column", m.column},
                        {"format", m.format},
                        {"locale", m.locale_id}});
  json out{{"seed", opts.seed},
           {"values_per_column", opts.values_per_column},
           {"columns", std::move(cols)}};
  std::ofstream mf(std::filesystem::path(out_dir) / "manifest.json",
                   std::ios::binary);
  mf << out.dump(2) << "\n";
  std::cout << json{{"dir", out_dir},
                    {"columns", manifest.size()},
                    {"manifest", "manifest.json"}}
                   .dump(2)
            << "\n";
  return 0;
}

int cmd_stats(const GlobalOptions& g, const std::string& dir,
              const std::string& engine) {
  const LocaleSpec& loc = resolve_locale(g.locale);
  DetectOptions opts;
  opts.max_error_rate = g.max_error_rate;
  opts.sample_size = g.sample_size;
  std::vector<std::pair<std::string, std::string>> columns;
  try {
    columns = corpus_columns(dir);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "datefmt: %s\n", e.what());
    return 1;
  }
  if (columns.empty()) {
    std::fprintf(stderr, "datefmt: no loadable columns in %s\n", dir.c_str());
    return 1;
  }
  Grammar grammar;
  if (engine == "nlp") grammar = binarize(build_datetime_grammar(loc));

  struct Row {
    bool loaded = false;
    bool zero_error = false;
    double analysis_micros = 0;
    double validation_per_value = 0;
    size_t non_null = 0;
  };
  auto work = [&](size_t i) -> Row {
    Row row;
    ColumnSample cs;
    try {
      cs = load_column(columns[i].first, columns[i].second, loc,
                       opts.sample_size);
    } catch (const LoadError&) {
      return row;
    }
    row.loaded = true;
    row.non_null = cs.stats.non_null_count;
    DetectionResult r = engine == "nlp" ? detect_nlp(cs, loc, grammar, opts)
                                        : detect_mdl(cs, loc, opts);
    row.analysis_micros = static_cast<double>(r.analysis_micros);
    size_t validated = cs.non_null_values.size() *
                       std::max<size_t>(1, r.candidates.size());
    row.validation_per_value =
        static_cast<double>(r.validation_micros) /
        std::max<double>(1.0, static_cast<double>(validated));
    row.zero_error = r.found() && r.top().error_rate == 0.0;
    return row;
  };
  std::vector<Row> rows =
      parallel_map_ordered<Row>(columns.size(), g.jobs, work);

  size_t loaded = 0, with_error = 0;
  double analysis_sum = 0, validation_sum = 0;
  std::vector<double> non_null_counts;
  for (const auto& row : rows) {
    if (!row.loaded) continue;
    loaded += 1;
    if (!row.zero_error) with_error += 1;
    analysis_sum += row.analysis_micros;
    validation_sum += row.validation_per_value;
    non_null_counts.push_back(static_cast<double>(row.non_null));
  }
  if (loaded == 0) {
    std::fprintf(stderr, "datefmt: no loadable columns in %s\n", dir.c_str());
    return 1;
  }
  std::sort(non_null_counts.begin(), non_null_counts.end());
  json out{{"engine", engine},
           {"records", loaded},
           {"error_rate", static_cast<double>(with_error) /
                              static_cast<double>(loaded)},
           {"analysis_micros", analysis_sum / static_cast<double>(loaded)},
           {"validation_micros", validation_sum / static_cast<double>(loaded)},
           {"median_not_null", non_null_counts[non_null_counts.size() / 2]}};
  if (g.format == "json") {
    std::cout << out.dump(2) << "\n";
  } else {
    std::printf("records            %zu\n", loaded);
    std::printf("error rate         %.2f%%\n",
                100.0 * static_cast<double>(with_error) /
                    static_cast<double>(loaded));
    std::printf("analysis speed     %.2f us\n",
                analysis_sum / static_cast<double>(loaded));
    std::printf("validation speed   %.2f us\n",
                validation_sum / static_cast<double>(loaded));
    std::printf("median not null    %.0f\n",
                non_null_counts[non_null_counts.size() / 2]);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "datefmt: infer ICU date-time format strings from string columns"};
  app.require_subcommand(1);

  GlobalOptions g;
  app.add_option("--format", g.format, "output format")
      ->check(CLI::IsMember({"json", "table"}))
      ->capture_default_str();
  app.add_option("--locale", g.locale, "locale tag (en, es)")
      ->capture_default_str();
  app.add_option("--max-error-rate", g.max_error_rate,
                 "drop candidates failing more than this fraction of values")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  app.add_option("--sample-size", g.sample_size,
                 "values sampled per column for analysis")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--jobs", g.jobs, "worker threads for batch commands")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--seed", g.seed, "seed for corpus generation")
      ->capture_default_str();

  // detect
  auto* detect = app.add_subcommand(
      "detect", "infer the format of one column");
  detect->fallthrough();
  std::string detect_file, detect_column, detect_engine = "both";
  detect->add_option("file", detect_file, "csv or newline-delimited text")
      ->required();
  detect->add_option("--column", detect_column, "column name or 0-based index");
  detect->add_option("--engine", detect_engine, "mdl, nlp, or both")
      ->check(CLI::IsMember({"mdl", "nlp", "both"}))
      ->capture_default_str();

  // parse
  auto* parse = app.add_subcommand(
      "parse", "apply a format, print ISO 8601 instants");
  std::string parse_file, parse_column, parse_format;
  bool parse_strict = false;
  parse->fallthrough();
  parse->add_option("file", parse_file, "csv or newline-delimited text")
      ->required();
  parse->add_option("--column", parse_column, "column name or 0-based index");
  parse->add_option("--pattern", parse_format, "ICU format pattern")
      ->required();
  parse->add_flag("--strict", parse_strict, "exit 3 if any value fails");

  // crossval
  auto* crossval = app.add_subcommand(
      "crossval", "compare both engines over a corpus directory");
  std::string crossval_dir;
  crossval->fallthrough();
  crossval->add_option("dir", crossval_dir, "corpus directory")->required();

  // gen-corpus
  auto* gen = app.add_subcommand(
      "gen-corpus", "write a labeled synthetic corpus");
  std::string gen_dir;
  size_t gen_columns = 500, gen_values = 50;
  gen->fallthrough();
  gen->add_option("dir", gen_dir, "output directory")->required();
  gen->add_option("--columns", gen_columns, "number of columns")
      ->capture_default_str();
  gen->add_option("--values", gen_values, "values per column")
      ->capture_default_str();

  // stats
  auto* stats = app.add_subcommand(
      "stats", "per-corpus parsing statistics");
  std::string stats_dir, stats_engine = "mdl";
  stats->fallthrough();
  stats->add_option("dir", stats_dir, "corpus directory")->required();
  stats->add_option("--engine", stats_engine, "mdl or nlp")
      ->check(CLI::IsMember({"mdl", "nlp"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*detect) return cmd_detect(g, detect_file, detect_column, detect_engine);
    if (*parse) return cmd_parse(g, parse_file, parse_column, parse_format,
                                 parse_strict);
    if (*crossval) return cmd_crossval(g, crossval_dir);
    if (*gen) return cmd_gen_corpus(g, gen_dir, gen_columns, gen_values);
    if (*stats) return cmd_stats(g, stats_dir, stats_engine);
  } catch (const CLI::ValidationError& e) {
    std::fprintf(stderr, "datefmt: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "datefmt: %s\n", e.what());
    return 1;
  }
  return 1;
}
