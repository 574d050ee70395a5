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

#ifndef VCAUDIT_DETECTORS_HPP
#define VCAUDIT_DETECTORS_HPP

#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "vcaudit/samples.hpp"

namespace vcaudit {

// Peakedness detector parameters: alpha is the normalized-distance radius of
// the peak around the greedy completion; xi is the minimum peak mass at which
// a problem is declared contaminated. Default xi = 0.02 means one duplicate
// out of 50 samples flags the problem; it is a first-class parameter so that
// auditors can tighten it.
struct CddParams {
  double alpha = 0.05;  // in [0, 1]
  double xi = 0.02;     // in (0, 1]

  bool operator==(const CddParams&) const = default;
};

// Membership-score parameters: the score is exp(mean of the k% smallest
// token log-probabilities), so it lives on the probability scale and the
// decision threshold T sweeps [0, 1].
struct MinkParams {
  double k_percent = 20.0;  // in (0, 100]
  double threshold = 0.55;  // in [0, 1]

  bool operator==(const MinkParams&) const = default;
};

void validate(const CddParams& params);
void validate(const MinkParams& params);

enum class DetectorMethod : uint8_t { Cdd, Mink };

std::string_view detector_method_name(DetectorMethod method);

// Both detectors use a closed threshold: flagged <=> score >= threshold.
// That choice is recorded in report metadata.
struct DetectorVerdict {
  std::string problem_id;
  DetectorMethod method = DetectorMethod::Cdd;
  double score = 0.0;  // rho for CDD, membership score for Min-K
  bool flagged = false;
  std::variant<CddParams, MinkParams> params;
};

// rho = fraction of sampled completions whose normalized token edit distance
// to the greedy completion is <= alpha. Uses the threshold-bounded distance
// kernel; exactly equivalent to the normalized_distance(...) <= alpha route.
double cdd_peakedness(const ProblemBundle& bundle, double alpha);

// flagged <=> rho >= xi.
DetectorVerdict cdd_flag(const ProblemBundle& bundle, const CddParams& params);

// exp(mean of the m smallest logprobs), m = ceil((k_percent/100) * L),
// m >= 1. Requires the model-token log-probability stream; errors when it is
// missing or empty.
double mink_score(const InferenceSample& sample, double k_percent);

DetectorVerdict mink_flag(std::string problem_id, double score,
                          const MinkParams& params);

// Scores the problem's own greedy inference (Min-K relies on a single
// inference's probability distribution; golden solutions would need a model
// pass this toolkit does not perform).
DetectorVerdict mink_flag(const ProblemBundle& bundle,
                          const MinkParams& params);

// 100 * flagged / total over one benchmark's per-problem verdicts. Errors on
// an empty list or duplicated problem ids.
double contamination_rate(std::span<const DetectorVerdict> verdicts);

// Contamination rate per threshold grid point, all other parameters fixed.
struct SweepCurve {
  DetectorMethod method = DetectorMethod::Cdd;
  std::vector<double> grid;
  std::vector<double> rates;  // percent, aligned with grid
  std::string model_id;
  std::string benchmark_id;
};

// Per-problem scores are computed once and reused across the grid: sorted
// per-problem distance distributions for CDD, one membership score per
// problem for Min-K. Per-problem failures carry the problem id.
// Grid must be strictly increasing.
SweepCurve sweep_cdd(std::span<const ProblemBundle> bundles,
                     std::span<const double> alpha_grid, double xi,
                     std::string model_id = {}, std::string benchmark_id = {});
SweepCurve sweep_mink(std::span<const ProblemBundle> bundles,
                      std::span<const double> threshold_grid, double k_percent,
                      std::string model_id = {}, std::string benchmark_id = {});
SweepCurve sweep(std::span<const ProblemBundle> bundles, DetectorMethod method,
                 std::span<const double> grid, const CddParams& cdd,
                 const MinkParams& mink, std::string model_id = {},
                 std::string benchmark_id = {});

// Contamination band per the standard report legend:
// high >= 75, mid in [25, 75), low < 25 (percent).
std::string_view contamination_band(double rate_percent);
// Pass-rate band: high >= 50, mid in [20, 50), low < 20 (percent).
std::string_view pass_band(double rate_percent);

}  // namespace vcaudit

#endif  // VCAUDIT_DETECTORS_HPP
