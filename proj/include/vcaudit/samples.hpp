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

#ifndef VCAUDIT_SAMPLES_HPP
#define VCAUDIT_SAMPLES_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vcaudit/token.hpp"

namespace vcaudit {

enum class DecodeMode : uint8_t { Greedy, Sampled };

// One model completion. Two token granularities coexist: model tokens (as
// logged by the generating runner, carrying the log-probability stream) and
// lexer tokens (recomputed from `text`, used by every distance and
// fingerprint computation).
struct InferenceSample {
  std::string benchmark_id;
  std::string problem_id;
  int64_t sample_id = 0;
  DecodeMode decode_mode = DecodeMode::Sampled;
  std::optional<double> temperature;
  std::string text;
  TokenSeq tokens;  // lexed from text when records are grouped into bundles
  std::optional<std::vector<std::string>> model_tokens;
  std::optional<std::vector<double>> logprobs;  // natural log, each <= 0
  std::optional<bool> pass_syntax;
  std::optional<bool> pass_func;
};

// One benchmark problem's greedy completion plus its N sampled completions.
// Invariants (enforced when grouping log records): exactly one greedy,
// N >= 1, all members share benchmark_id/problem_id, sample_ids unique,
// samples sorted by sample_id.
struct ProblemBundle {
  std::string benchmark_id;
  std::string problem_id;
  InferenceSample greedy;
  std::vector<InferenceSample> samples;
};

}  // namespace vcaudit

#endif  // VCAUDIT_SAMPLES_HPP
