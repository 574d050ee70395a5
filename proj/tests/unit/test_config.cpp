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

#include <filesystem>

#include "helpers.hpp"
#include "vcaudit/commands.hpp"
#include "vcaudit/config.hpp"
#include "vcaudit/error.hpp"
#include "vcaudit/ingest.hpp"

using namespace vcaudit;
using vcaudit::testing::TempDir;
using vcaudit::testing::slurp;

TEST_CASE("config: defaults carry the standard experiment knobs") {
  const AuditConfig config = default_config();
  CHECK(config.cdd.alpha == 0.05);
  CHECK(config.cdd.xi == 0.02);
  CHECK(config.mink.k_percent == 20.0);
  CHECK(config.mink.threshold == 0.55);
  CHECK(config.ted.tau_percent == 50.0);
  CHECK(config.ted.dedup);
  CHECK(config.pass_k == std::vector<int64_t>{1, 5, 15});
  CHECK(config.cdd_alpha_grid.size() == 21);
  CHECK(config.cdd_alpha_grid.front() == 0.0);
  CHECK(config.tau_grid.size() == 11);
  CHECK(config.tau_grid.back() == 100.0);
  CHECK(!config.lex.normalize_identifiers);
  CHECK(config.similarity.lex.normalize_identifiers);
  CHECK(config.similarity.fingerprint.k_gram == 12);
  CHECK(config.similarity.fingerprint.window == 8);
}

TEST_CASE("config: file values load and paths resolve relative to it") {
  TempDir tmp("config");
  tmp.write("logs/m.jsonl", "");
  const std::string path = tmp.write("cfg.json", R"({
    "logs": [{"model_id": "m", "path": "logs/m.jsonl"}],
    "cdd": {"alpha": 0.10, "xi": 0.04},
    "mink": {"k_percent": 10, "threshold": 0.7},
    "ted": {"tau_percent": 25, "dedup": false},
    "pass_k": [1, 2],
    "grids": {"tau": [0, 50, 100]},
    "formats": ["structured"]
  })");
  const AuditConfig config = load_config(path);
  REQUIRE(config.logs.size() == 1);
  CHECK(config.logs[0].model_id == "m");
  CHECK(std::filesystem::exists(config.logs[0].path));
  CHECK(config.cdd.alpha == 0.10);
  CHECK(config.mink.threshold == 0.7);
  CHECK(!config.ted.dedup);
  CHECK(config.pass_k == std::vector<int64_t>{1, 2});
  CHECK(config.tau_grid == std::vector<double>{0.0, 50.0, 100.0});
  CHECK(config.write_structured);
  CHECK(!config.write_tabular);
  // Untouched knobs keep their defaults.
  CHECK(config.cdd_alpha_grid.size() == 21);
}

TEST_CASE("config: unknown keys are usage errors") {
  TempDir tmp("config");
  const std::string path = tmp.write("cfg.json", R"({"alpa": 0.05})");
  CHECK_THROWS_WITH_AS((void)load_config(path), doctest::Contains("alpa"),
                       Error);
}

TEST_CASE("validate_config: names the missing path") {
  AuditConfig config = default_config();
  config.logs.push_back({"m", "/definitely/not/here.jsonl"});
  try {
    validate_config(config);
    FAIL("expected a usage error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Usage);
    CHECK(std::string(e.what()).find("/definitely/not/here.jsonl") !=
          std::string::npos);
  }
}

TEST_CASE("validate_config: rejects bad grids and params") {
  AuditConfig config = default_config();
  config.cdd_alpha_grid = {0.5, 0.5};
  CHECK_THROWS_AS(validate_config(config), Error);
  config = default_config();
  config.cdd.alpha = 1.5;
  CHECK_THROWS_AS(validate_config(config), Error);
  config = default_config();
  config.pass_k = {};
  CHECK_THROWS_AS(validate_config(config), Error);
}

TEST_CASE("cmd_synth + cmd_audit: synthetic audit recovers ground truth") {
  TempDir tmp("commands");
  AuditConfig config = default_config();
  config.output_dir = tmp.file("out");
  config.pass_k = {1, 5};  // the small fixture has only 10 samples/problem

  SynthSpec spec;
  spec.seed = 11;
  spec.problem_count = 12;
  spec.vocab_size = 40;
  spec.solution_len = 48;
  spec.samples_per_problem = 10;
  spec.memorization_fraction = 0.5;
  spec.memorized_emit_prob = 1.0;
  spec.edit_noise = 0.3;

  const Report scorecard = cmd_synth(config, spec);
  REQUIRE(scorecard.tables.size() == 1);
  const ReportTable& table = scorecard.tables[0];
  REQUIRE(table.rows.size() == 2);  // cdd, mink
  // Column order: detector, problems, flagged, precision, recall,
  // measured_rate, true_rate, rate_error.
  CHECK(table.rows[0][0] == "cdd");
  CHECK(table.rows[0][3] == "1.000000");
  CHECK(table.rows[0][4] == "1.000000");
  CHECK(table.rows[0][7] == "0.00");
  CHECK(table.rows[1][0] == "mink");
  CHECK(table.rows[1][4] == "1.000000");

  // The written log is loadable and audit reproduces the true rate.
  config.logs.push_back({"synthetic_model", tmp.file("out/synth_log.jsonl")});
  const Report audit = cmd_audit(config);
  REQUIRE(audit.tables.size() == 2);
  const ReportTable& contamination = audit.tables[0];
  REQUIRE(contamination.rows.size() == 1);
  CHECK(contamination.rows[0][0] == "synthetic_model");
  CHECK(contamination.rows[0][1] == kSynthBenchmarkId);
  CHECK(contamination.rows[0][4] == "50.00");  // cdd_rate == true rate
  CHECK(contamination.rows[0][5] == "mid");
}

TEST_CASE("cmd_audit: usage error when no logs are configured") {
  AuditConfig config = default_config();
  try {
    (void)cmd_audit(config);
    FAIL("expected a usage error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Usage);
  }
}

TEST_CASE("emit_report: writes the selected formats") {
  TempDir tmp("emit");
  AuditConfig config = default_config();
  config.output_dir = tmp.file("out");

  Report report;
  report.title = "t";
  ReportTable a;
  a.name = "alpha";
  a.columns = {"x"};
  a.rows.push_back({"1"});
  ReportTable b;
  b.name = "beta";
  b.columns = {"y"};
  report.tables = {a, b};

  const auto written = emit_report(report, config, "demo");
  REQUIRE(written.size() == 3);  // json + one csv per table
  CHECK(slurp(written[0]).find("\"title\": \"t\"") != std::string::npos);
  CHECK(slurp(written[1]) == "x\n1\n");
  CHECK(slurp(written[2]) == "y\n");

  config.write_structured = false;
  CHECK(emit_report(report, config, "demo").size() == 2);
}
