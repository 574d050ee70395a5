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

#ifndef VCAUDIT_CONFIG_HPP
#define VCAUDIT_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "vcaudit/detectors.hpp"
#include "vcaudit/mitigation.hpp"
#include "vcaudit/similarity.hpp"
#include "vcaudit/token.hpp"

namespace vcaudit {

struct LogSource {
  std::string model_id;
  std::string path;
};

struct CorpusSource {
  std::string corpus_id;
  std::string path;
};

struct BenchmarkSource {
  std::string benchmark_id;
  std::string manifest_path;
};

// Fingerprinting gets its own lex options: identifier normalization makes the
// similarity rename-invariant, while the distance pipeline keeps raw tokens.
struct SimilarityConfig {
  FingerprintParams fingerprint;
  LexOptions lex{.normalize_identifiers = true, .fold_numeric_literals = false};
  std::vector<std::string> extensions = {".v"};
};

// All experiment knobs in one declarative file plus flag overrides (flags
// win); the effective config is echoed into every report so sweeps are
// reproducible.
struct AuditConfig {
  std::vector<BenchmarkSource> benchmarks;
  std::vector<LogSource> logs;
  std::vector<CorpusSource> corpora;
  LexOptions lex;  // distance pipeline (detectors, mitigation)
  SimilarityConfig similarity;
  CddParams cdd;
  MinkParams mink;
  TedParams ted;
  std::vector<int64_t> pass_k = {1, 5, 15};
  std::vector<double> cdd_alpha_grid;   // default 0, 0.05, ..., 1.0
  std::vector<double> mink_threshold_grid;  // default 0, 0.05, ..., 1.0
  std::vector<double> tau_grid;         // default 0, 10, ..., 100
  std::string output_dir = "vcaudit-out";
  bool write_structured = true;
  bool write_tabular = true;
};

// The unit grid 0, 0.05, ..., 1.0 and the tau grid 0, 10, ..., 100.
std::vector<double> default_unit_grid();
std::vector<double> default_tau_grid();

AuditConfig default_config();

// Parses a JSON config file; unknown keys are usage errors.
AuditConfig load_config(const std::string& path);

// Compact JSON echo of the effective configuration (report metadata).
std::string config_to_json(const AuditConfig& config);

// Existence checks for every referenced path plus grid/param validation.
// Throws Error::usage naming the offending path or knob.
void validate_config(const AuditConfig& config);

}  // namespace vcaudit

#endif  // VCAUDIT_CONFIG_HPP
