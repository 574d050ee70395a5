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

#ifndef VCAUDIT_SYNTH_HPP
#define VCAUDIT_SYNTH_HPP

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "vcaudit/detectors.hpp"
#include "vcaudit/samples.hpp"

namespace vcaudit {

// Synthetic contaminated/clean inference logs with ground truth, for
// validating detectors and mitigation end to end without any model.
//
// Each problem gets a canonical solution of uniform random vocabulary words.
// Contaminated problems emit the canonical solution as greedy and, per
// sample, the canonical solution with probability memorized_emit_prob, else a
// noised variant. Clean problems emit independently noised variants
// throughout. Noise is per-token substitution only (always to a different
// word), so the expected normalized distance of a noised emission is
// edit_noise. Synthetic log-probabilities straddle the usual membership
// threshold: untouched tokens draw uniform [-0.01, 0], substituted ones
// uniform [-3, -1].
struct SynthSpec {
  uint64_t seed = 0;
  int64_t problem_count = 1;
  int64_t vocab_size = 2;
  int64_t solution_len = 1;       // tokens
  double memorization_fraction = 0.0;  // fraction of problems contaminated
  double memorized_emit_prob = 0.0;    // per-sample canonical-emission prob
  double edit_noise = 0.0;             // per-token substitution prob
  int64_t samples_per_problem = 1;
};

void validate(const SynthSpec& spec);

struct SynthTruth {
  std::map<std::string, bool> contaminated;
  // Sample ids that emitted the canonical solution verbatim, per problem.
  std::map<std::string, std::set<int64_t>> memorized_sample_ids;
};

struct SynthResult {
  std::vector<InferenceSample> records;  // exact inference-log schema order
  SynthTruth truth;
};

inline constexpr const char* kSynthBenchmarkId = "synthetic";

// Deterministic under the seed: each problem derives an independent
// sub-stream from (seed, problem index), and exactly
// floor(memorization_fraction * problem_count) problems are contaminated,
// chosen by a seeded shuffle.
SynthResult generate(const SynthSpec& spec);

struct DetectorScore {
  double precision = 1.0;  // 1.0 when nothing is flagged
  double recall = 1.0;     // 1.0 when nothing is contaminated
  double recovered_rate_error = 0.0;  // |measured rate - true rate|, percent
};

// Verdict set must cover exactly the ground-truth problems.
DetectorScore score_detector(std::span<const DetectorVerdict> verdicts,
                             const SynthTruth& truth);

}  // namespace vcaudit

#endif  // VCAUDIT_SYNTH_HPP
