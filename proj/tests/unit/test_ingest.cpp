// Copyright 2026 The vcaudit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <string>

#include "helpers.hpp"
#include "vcaudit/error.hpp"
#include "vcaudit/ingest.hpp"
#include "vcaudit/report.hpp"

using namespace vcaudit;
using vcaudit::testing::TempDir;
using vcaudit::testing::slurp;

namespace {

std::string record(const std::string& problem, int64_t sample_id,
                   const std::string& mode, const std::string& text,
                   const std::string& extra = "") {
  std::string line = "{\"benchmark_id\":\"bench\",\"problem_id\":\"" + problem +
                     "\",\"sample_id\":" + std::to_string(sample_id) +
                     ",\"decode_mode\":\"" + mode + "\",\"text\":\"" + text +
                     "\"";
  if (!extra.empty()) line += "," + extra;
  return line + "}\n";
}

}  // namespace

TEST_CASE("load_inference_log: groups one problem with greedy plus samples") {
  TempDir tmp("ingest");
  std::string log = record("p0", 0, "greedy", "module m; endmodule");
  for (int i = 1; i <= 50; ++i) {
    log += record("p0", i, "sampled", "module m" + std::to_string(i) +
                                          "; endmodule");
  }
  const auto bundles =
      load_inference_log(tmp.write("log.jsonl", log), LexOptions{});
  REQUIRE(bundles.size() == 1);
  CHECK(bundles[0].problem_id == "p0");
  CHECK(bundles[0].samples.size() == 50);
  CHECK(bundles[0].greedy.decode_mode == DecodeMode::Greedy);
  CHECK(!bundles[0].greedy.tokens.empty());
  // Samples come back ordered by sample_id.
  for (size_t i = 1; i < bundles[0].samples.size(); ++i) {
    CHECK(bundles[0].samples[i - 1].sample_id <
          bundles[0].samples[i].sample_id);
  }
}

TEST_CASE("load_inference_log: empty file gives an empty list") {
  TempDir tmp("ingest");
  CHECK(load_inference_log(tmp.write("empty.jsonl", ""), LexOptions{}).empty());
}

TEST_CASE("load_inference_log: schema violations name line and field") {
  TempDir tmp("ingest");

  SUBCASE("logprobs length mismatch") {
    const std::string log =
        record("p0", 0, "greedy", "a") +
        record("p0", 1, "sampled", "b",
               "\"model_tokens\":[\"b\"],\"logprobs\":[-0.5,-0.25]");
    const std::string path = tmp.write("bad.jsonl", log);
    CHECK_THROWS_WITH_AS((void)load_inference_log(path, LexOptions{}),
                         doctest::Contains("bad.jsonl:2"), Error);
    CHECK_THROWS_WITH_AS((void)load_inference_log(path, LexOptions{}),
                         doctest::Contains("logprobs"), Error);
  }
  SUBCASE("positive logprob") {
    const std::string path = tmp.write(
        "bad.jsonl",
        record("p0", 0, "greedy", "a",
               "\"model_tokens\":[\"a\"],\"logprobs\":[0.5]"));
    CHECK_THROWS_WITH_AS((void)load_inference_log(path, LexOptions{}),
                         doctest::Contains("logprobs"), Error);
  }
  SUBCASE("unknown field") {
    const std::string path = tmp.write(
        "bad.jsonl", record("p0", 0, "greedy", "a", "\"bogus\":1"));
    CHECK_THROWS_WITH_AS((void)load_inference_log(path, LexOptions{}),
                         doctest::Contains("bogus"), Error);
  }
  SUBCASE("greedy with nonzero temperature") {
    const std::string path = tmp.write(
        "bad.jsonl", record("p0", 0, "greedy", "a", "\"temperature\":0.8"));
    CHECK_THROWS_WITH_AS((void)load_inference_log(path, LexOptions{}),
                         doctest::Contains("temperature"), Error);
  }
  SUBCASE("pass_func without pass_syntax") {
    const std::string path = tmp.write(
        "bad.jsonl", record("p0", 0, "greedy", "a", "\"pass_func\":true"));
    CHECK_THROWS_WITH_AS((void)load_inference_log(path, LexOptions{}),
                         doctest::Contains("pass_func"), Error);
  }
  SUBCASE("invalid JSON") {
    const std::string path = tmp.write("bad.jsonl", "not json\n");
    CHECK_THROWS_WITH_AS((void)load_inference_log(path, LexOptions{}),
                         doctest::Contains("bad.jsonl:1"), Error);
  }
}

TEST_CASE("load_inference_log: bundle invariants") {
  TempDir tmp("ingest");
  SUBCASE("missing greedy names the problem") {
    const std::string path =
        tmp.write("log.jsonl", record("p_lost", 1, "sampled", "a"));
    CHECK_THROWS_WITH_AS((void)load_inference_log(path, LexOptions{}),
                         doctest::Contains("p_lost"), Error);
  }
  SUBCASE("duplicate sample_id") {
    const std::string path = tmp.write(
        "log.jsonl", record("p0", 0, "greedy", "a") +
                         record("p0", 3, "sampled", "b") +
                         record("p0", 3, "sampled", "c"));
    CHECK_THROWS_WITH_AS((void)load_inference_log(path, LexOptions{}),
                         doctest::Contains("duplicate sample_id"), Error);
  }
  SUBCASE("two greedy records") {
    const std::string path = tmp.write(
        "log.jsonl", record("p0", 0, "greedy", "a") +
                         record("p0", 1, "greedy", "b") +
                         record("p0", 2, "sampled", "c"));
    CHECK_THROWS_AS((void)load_inference_log(path, LexOptions{}), Error);
  }
  SUBCASE("greedy without samples") {
    const std::string path =
        tmp.write("log.jsonl", record("p0", 0, "greedy", "a"));
    CHECK_THROWS_WITH_AS((void)load_inference_log(path, LexOptions{}),
                         doctest::Contains("no sampled completions"), Error);
  }
}

TEST_CASE("grouping is a partition of the input records") {
  TempDir tmp("ingest");
  std::string log;
  int64_t total = 0;
  for (const char* problem : {"p2", "p0", "p1"}) {
    log += record(problem, 0, "greedy", "g");
    for (int i = 1; i <= 4; ++i) {
      log += record(problem, i, "sampled", "s" + std::to_string(i));
      ++total;
    }
    ++total;
  }
  const auto bundles =
      load_inference_log(tmp.write("log.jsonl", log), LexOptions{});
  REQUIRE(bundles.size() == 3);
  int64_t seen = 0;
  for (const auto& bundle : bundles) {
    seen += 1 + static_cast<int64_t>(bundle.samples.size());
  }
  CHECK(seen == total);
  CHECK(bundles[0].problem_id == "p0");
  CHECK(bundles[1].problem_id == "p1");
  CHECK(bundles[2].problem_id == "p2");
}

TEST_CASE("write_inference_log then load round-trips the records") {
  TempDir tmp("ingest");
  std::vector<InferenceSample> records;
  records.push_back(testing::make_sample("p0", 0, "module m; endmodule",
                                         DecodeMode::Greedy));
  auto sampled = testing::make_sample("p0", 1, "module m2; endmodule");
  sampled.model_tokens = {{"module", "m2", ";", "endmodule"}};
  sampled.logprobs = {{-0.1, -0.2, -0.3, 0.0}};
  sampled.pass_syntax = true;
  sampled.pass_func = false;
  records.push_back(sampled);

  const std::string path = tmp.file("out.jsonl");
  write_inference_log(records, path);
  const std::string first = slurp(path);
  write_inference_log(records, path);
  CHECK(slurp(path) == first);  // byte-deterministic

  const auto bundles = load_inference_log(path, LexOptions{});
  REQUIRE(bundles.size() == 1);
  REQUIRE(bundles[0].samples.size() == 1);
  const InferenceSample& back = bundles[0].samples[0];
  CHECK(back.text == "module m2; endmodule");
  REQUIRE(back.logprobs.has_value());
  CHECK(back.logprobs->size() == 4);
  CHECK(back.pass_syntax == true);
  CHECK(back.pass_func == false);
}

TEST_CASE("load_corpus: lexes files in stable order") {
  TempDir tmp("corpus");
  tmp.write("c/z.v", "module z; endmodule");
  tmp.write("c/a.v", "module a; endmodule");
  tmp.write("c/sub/m.v", "module m; endmodule");
  tmp.write("c/skip.txt", "not verilog");
  const auto docs = load_corpus(tmp.file("c"), LexOptions{});
  REQUIRE(docs.size() == 3);
  CHECK(docs[0].doc_id == "a.v");
  CHECK(docs[1].doc_id == "sub/m.v");
  CHECK(docs[2].doc_id == "z.v");
  for (const auto& doc : docs) CHECK(doc.tokens.size() == 4);
}

TEST_CASE("load_corpus: comments-only file gives an empty token stream") {
  TempDir tmp("corpus");
  tmp.write("c/only_comments.v", "// nothing\n/* here */\n");
  const auto docs = load_corpus(tmp.file("c"), LexOptions{});
  REQUIRE(docs.size() == 1);
  CHECK(docs[0].tokens.empty());
}

TEST_CASE("load_corpus: empty directory is allowed, missing one is not") {
  TempDir tmp("corpus");
  std::filesystem::create_directories(tmp.file("empty"));
  CHECK(load_corpus(tmp.file("empty"), LexOptions{}).empty());
  CHECK_THROWS_AS((void)load_corpus(tmp.file("missing"), LexOptions{}), Error);
}

TEST_CASE("load_corpus: unreadable file errors with its name") {
  TempDir tmp("corpus");
  std::filesystem::create_directories(tmp.file("c"));
  // A dangling symlink matches the extension filter but cannot be read.
  std::filesystem::create_symlink(tmp.file("gone.v"), tmp.file("c/broken.v"));
  CHECK_THROWS_WITH_AS((void)load_corpus(tmp.file("c"), LexOptions{}),
                       doctest::Contains("broken.v"), Error);
}

TEST_CASE("load_manifest: resolves and checks referenced files") {
  TempDir tmp("manifest");
  tmp.write("prompts/p0.txt", "prompt");
  tmp.write("golden/p0.v", "module m; endmodule");
  const std::string manifest = tmp.write(
      "bench.jsonl",
      "{\"problem_id\":\"p0\",\"prompt_path\":\"prompts/p0.txt\","
      "\"golden_path\":\"golden/p0.v\"}\n");

  const BenchmarkManifest loaded = load_manifest(manifest);
  CHECK(loaded.benchmark_id == "bench");  // file stem by default
  REQUIRE(loaded.problems.size() == 1);
  CHECK(std::filesystem::exists(loaded.problems[0].golden_path));

  CHECK(load_manifest(manifest, "rtllm").benchmark_id == "rtllm");

  SUBCASE("missing golden file") {
    const std::string bad = tmp.write(
        "bad.jsonl",
        "{\"problem_id\":\"p1\",\"prompt_path\":\"prompts/p0.txt\","
        "\"golden_path\":\"golden/p1.v\"}\n");
    CHECK_THROWS_WITH_AS((void)load_manifest(bad),
                         doctest::Contains("golden/p1.v"), Error);
  }
  SUBCASE("duplicate problem id") {
    const std::string bad = tmp.write(
        "dup.jsonl",
        "{\"problem_id\":\"p0\",\"prompt_path\":\"prompts/p0.txt\","
        "\"golden_path\":\"golden/p0.v\"}\n"
        "{\"problem_id\":\"p0\",\"prompt_path\":\"prompts/p0.txt\","
        "\"golden_path\":\"golden/p0.v\"}\n");
    CHECK_THROWS_WITH_AS((void)load_manifest(bad),
                         doctest::Contains("duplicate"), Error);
  }
}

TEST_CASE("report: structured round-trip and tabular determinism") {
  TempDir tmp("report");
  Report report;
  report.title = "contamination table";
  report.add_meta("tool", "vcaudit test");
  report.add_meta("config", "{\"alpha\":0.05}");
  ReportTable table;
  table.name = "contamination";
  table.columns = {"model", "cdd_rate", "mink_rate"};
  table.rows.push_back({"gpt2", "4.00", "6.41"});
  table.rows.push_back({"with,comma", "0.00", "quote\"cell"});
  report.tables.push_back(table);

  const std::string structured = tmp.file("r.json");
  write_report(report, ReportFormat::Structured, structured);
  CHECK(read_report(structured) == report);

  const std::string again = tmp.file("r2.json");
  write_report(report, ReportFormat::Structured, again);
  CHECK(slurp(structured) == slurp(again));

  const std::string csv = tmp.file("r.csv");
  write_report(report, ReportFormat::Tabular, csv);
  const std::string content = slurp(csv);
  CHECK(content.find("model,cdd_rate,mink_rate\n") == 0);
  CHECK(content.find("gpt2,4.00,6.41\n") != std::string::npos);
  CHECK(content.find("\"with,comma\"") != std::string::npos);
  CHECK(content.find("\"quote\"\"cell\"") != std::string::npos);
  const std::string csv2 = tmp.file("r2.csv");
  write_report(report, ReportFormat::Tabular, csv2);
  CHECK(slurp(csv) == slurp(csv2));
}

TEST_CASE("report: structured round-trip on randomized payloads") {
  TempDir tmp("report");
  std::mt19937_64 rng(67);
  const std::string alphabet =
      "abc,\"\n xyz0123{}[]:;%$#@!~`'\\|/?.<>= \t-_+()*&^";
  auto random_cell = [&]() {
    std::string s;
    const size_t len = rng() % 12;
    for (size_t i = 0; i < len; ++i) s += alphabet[rng() % alphabet.size()];
    return s;
  };
  for (int iter = 0; iter < 25; ++iter) {
    Report report;
    report.title = random_cell();
    for (size_t i = 0; i < rng() % 4; ++i) {
      report.add_meta("k" + std::to_string(i), random_cell());
    }
    for (size_t t = 0; t < rng() % 3; ++t) {
      ReportTable table;
      table.name = "t" + std::to_string(t);
      const size_t width = 1 + rng() % 4;
      for (size_t c = 0; c < width; ++c) {
        table.columns.push_back("c" + std::to_string(c));
      }
      for (size_t r = 0; r < rng() % 5; ++r) {
        std::vector<std::string> row;
        for (size_t c = 0; c < width; ++c) row.push_back(random_cell());
        table.rows.push_back(std::move(row));
      }
      report.tables.push_back(std::move(table));
    }
    const std::string path = tmp.file("roundtrip.json");
    write_report(report, ReportFormat::Structured, path);
    CHECK(read_report(path) == report);
  }
}

TEST_CASE("report: empty table renders header-only CSV") {
  TempDir tmp("report");
  Report report;
  report.title = "sweep";
  ReportTable table;
  table.name = "sweep";
  table.columns = {"model", "benchmark", "method", "threshold", "rate"};
  report.tables.push_back(table);
  const std::string csv = tmp.file("empty.csv");
  write_report(report, ReportFormat::Tabular, csv);
  CHECK(slurp(csv) == "model,benchmark,method,threshold,rate\n");
}

TEST_CASE("report: formatting helpers pin the cell style") {
  CHECK(format_percent(4.0) == "4.00");
  CHECK(format_percent(98.7171) == "98.72");
  CHECK(format_percent(100.0) == "100.00");
  CHECK(format_score(0.60653065971) == "0.606531");
  CHECK(format_threshold(0.05) == "0.0500");
}
