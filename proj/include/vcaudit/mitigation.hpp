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

#ifndef VCAUDIT_MITIGATION_HPP
#define VCAUDIT_MITIGATION_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "vcaudit/detectors.hpp"
#include "vcaudit/metrics.hpp"
#include "vcaudit/samples.hpp"

namespace vcaudit {

// Inference-side filtering: deduplicate completions, then exclude the top
// tau% most-memorized (smallest-distance-to-greedy) samples before
// re-evaluating.
struct TedParams {
  double tau_percent = 50.0;  // in [0, 100]
  // Alpha at which the before/after verdicts are computed; must match the
  // CddParams handed to ted_filter so the two verdicts stay commensurable.
  double alpha_rank = 0.05;
  bool dedup = true;

  bool operator==(const TedParams&) const = default;
};

void validate(const TedParams& params);

struct MitigationOutcome {
  std::string problem_id;
  // Samples excluded by the top-tau% step, most memorized first.
  std::vector<int64_t> removed_sample_ids;
  // Duplicates collapsed into their lowest-sample_id representative.
  std::vector<int64_t> collapsed_sample_ids;
  // surviving.samples may be empty: tau=100 or total dedup collapse is an
  // explicit no-survivors outcome, not a crash. Downstream pass@k over an
  // empty survival errors.
  ProblemBundle surviving;
  DetectorVerdict verdict_before;
  DetectorVerdict verdict_after;

  bool no_survivors() const { return surviving.samples.empty(); }
};

// (1) dedup: collapse samples with identical lexed token streams to the
//     lowest-sample_id representative;
// (2) rank the remainder by normalized distance to greedy, ascending, ties by
//     ascending sample_id;
// (3) remove the first ceil((tau/100) * N') samples, N' = post-dedup count;
// (4) recompute the CDD verdict on the survivors with the same params as
//     verdict_before. An empty survival yields verdict_after unflagged with
//     score 0 (everything that could peak was removed).
// The greedy completion is the distance reference and never a removal
// candidate.
MitigationOutcome ted_filter(const ProblemBundle& bundle,
                             const TedParams& ted, const CddParams& cdd);

// 100 * |flagged before and not after| / |flagged before|. When nothing was
// flagged before, the rate is not applicable and stays absent.
// Errors when outcomes mix detector parameters.
std::optional<double> mitigation_rate(
    std::span<const MitigationOutcome> outcomes);

struct AccuracyDrop {
  double rate_before = 0.0;  // percent
  double rate_after = 0.0;
  double drop = 0.0;  // rate_before - rate_after
};

// Before/after pass rates on aligned problem sets; after-stats must come from
// surviving samples only. Errors list problem-set differences and name any
// problem whose surviving set cannot support pass@k.
AccuracyDrop accuracy_drop(std::span<const PassStats> before,
                           std::span<const PassStats> after, int64_t k,
                           PassLabel label);

}  // namespace vcaudit

#endif  // VCAUDIT_MITIGATION_HPP
