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

#include "vcaudit/detectors.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "vcaudit/error.hpp"
#include "vcaudit/similarity.hpp"

namespace vcaudit {
namespace {

void require_samples(const ProblemBundle& bundle) {
  if (bundle.samples.empty()) {
    throw Error::data("bundle for problem " + bundle.problem_id +
                      " has no sampled completions");
  }
}

void require_increasing(std::span<const double> grid) {
  if (grid.empty()) throw Error::data("sweep: empty threshold grid");
  for (size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i - 1] < grid[i])) {
      throw Error::data("sweep: grid must be strictly increasing");
    }
  }
}

// Sorted normalized distances of every sample to the greedy completion.
std::vector<double> sample_distances(const ProblemBundle& bundle) {
  std::vector<double> dist;
  dist.reserve(bundle.samples.size());
  for (const InferenceSample& sample : bundle.samples) {
    dist.push_back(normalized_distance(sample.tokens, bundle.greedy.tokens));
  }
  std::sort(dist.begin(), dist.end());
  return dist;
}

}  // namespace

void validate(const CddParams& params) {
  if (!(params.alpha >= 0.0 && params.alpha <= 1.0)) {
    throw Error::data("cdd: alpha must be in [0, 1]");
  }
  if (!(params.xi > 0.0 && params.xi <= 1.0)) {
    throw Error::data("cdd: xi must be in (0, 1]");
  }
}

void validate(const MinkParams& params) {
  if (!(params.k_percent > 0.0 && params.k_percent <= 100.0)) {
    throw Error::data("mink: k_percent must be in (0, 100]");
  }
  if (!(params.threshold >= 0.0 && params.threshold <= 1.0)) {
    throw Error::data("mink: threshold must be in [0, 1]");
  }
}

std::string_view detector_method_name(DetectorMethod method) {
  return method == DetectorMethod::Cdd ? "cdd" : "mink";
}

double cdd_peakedness(const ProblemBundle& bundle, double alpha) {
  require_samples(bundle);
  size_t inside = 0;
  for (const InferenceSample& sample : bundle.samples) {
    if (within_alpha(sample.tokens, bundle.greedy.tokens, alpha)) ++inside;
  }
  return static_cast<double>(inside) /
         static_cast<double>(bundle.samples.size());
}

DetectorVerdict cdd_flag(const ProblemBundle& bundle, const CddParams& params) {
  validate(params);
  const double rho = cdd_peakedness(bundle, params.alpha);
  DetectorVerdict verdict;
  verdict.problem_id = bundle.problem_id;
  verdict.method = DetectorMethod::Cdd;
  verdict.score = rho;
  verdict.flagged = rho >= params.xi;
  verdict.params = params;
  return verdict;
}

double mink_score(const InferenceSample& sample, double k_percent) {
  if (!(k_percent > 0.0 && k_percent <= 100.0)) {
    throw Error::data("mink: k_percent must be in (0, 100]");
  }
  if (!sample.logprobs.has_value() || sample.logprobs->empty()) {
    throw Error::data("min-k requires token probabilities (problem " +
                      sample.problem_id + ", sample " +
                      std::to_string(sample.sample_id) + ")");
  }
  std::vector<double> probs = *sample.logprobs;
  const size_t len = probs.size();
  // ceil((k/100) * L), epsilon-guarded so exact grid points (K=20, L=10)
  // do not round up through floating error; clamped to [1, L].
  const double want =
      k_percent * static_cast<double>(len) / 100.0;
  size_t m = static_cast<size_t>(std::ceil(want - 1e-9));
  m = std::clamp<size_t>(m, 1, len);

  std::nth_element(probs.begin(), probs.begin() + (m - 1), probs.end());
  double sum = 0.0;
  for (size_t i = 0; i < m; ++i) sum += probs[i];
  return std::exp(sum / static_cast<double>(m));
}

DetectorVerdict mink_flag(std::string problem_id, double score,
                          const MinkParams& params) {
  validate(params);
  if (!(score >= 0.0 && score <= 1.0)) {
    throw Error::data("mink: score must be in [0, 1]");
  }
  DetectorVerdict verdict;
  verdict.problem_id = std::move(problem_id);
  verdict.method = DetectorMethod::Mink;
  verdict.score = score;
  verdict.flagged = score >= params.threshold;
  verdict.params = params;
  return verdict;
}

DetectorVerdict mink_flag(const ProblemBundle& bundle,
                          const MinkParams& params) {
  return mink_flag(bundle.problem_id,
                   mink_score(bundle.greedy, params.k_percent), params);
}

double contamination_rate(std::span<const DetectorVerdict> verdicts) {
  if (verdicts.empty()) {
    throw Error::data("contamination_rate: no verdicts");
  }
  std::unordered_set<std::string> seen;
  size_t flagged = 0;
  for (const DetectorVerdict& v : verdicts) {
    if (!seen.insert(v.problem_id).second) {
      throw Error::data("contamination_rate: duplicate verdict for problem " +
                        v.problem_id);
    }
    if (v.flagged) ++flagged;
  }
  return 100.0 * static_cast<double>(flagged) /
         static_cast<double>(verdicts.size());
}

SweepCurve sweep_cdd(std::span<const ProblemBundle> bundles,
                     std::span<const double> alpha_grid, double xi,
                     std::string model_id, std::string benchmark_id) {
  require_increasing(alpha_grid);
  if (bundles.empty()) throw Error::data("sweep: no problem bundles");
  if (!(xi > 0.0 && xi <= 1.0)) throw Error::data("cdd: xi must be in (0, 1]");

  std::vector<std::vector<double>> per_problem;
  per_problem.reserve(bundles.size());
  for (const ProblemBundle& bundle : bundles) {
    require_samples(bundle);
    per_problem.push_back(sample_distances(bundle));
  }

  SweepCurve curve;
  curve.method = DetectorMethod::Cdd;
  curve.grid.assign(alpha_grid.begin(), alpha_grid.end());
  curve.model_id = std::move(model_id);
  curve.benchmark_id = std::move(benchmark_id);
  for (double alpha : alpha_grid) {
    size_t flagged = 0;
    for (const std::vector<double>& dist : per_problem) {
      const auto inside =
          std::upper_bound(dist.begin(), dist.end(), alpha) - dist.begin();
      const double rho = static_cast<double>(inside) /
                         static_cast<double>(dist.size());
      if (rho >= xi) ++flagged;
    }
    curve.rates.push_back(100.0 * static_cast<double>(flagged) /
                          static_cast<double>(per_problem.size()));
  }
  return curve;
}

SweepCurve sweep_mink(std::span<const ProblemBundle> bundles,
                      std::span<const double> threshold_grid, double k_percent,
                      std::string model_id, std::string benchmark_id) {
  require_increasing(threshold_grid);
  if (bundles.empty()) throw Error::data("sweep: no problem bundles");

  std::vector<double> scores;
  scores.reserve(bundles.size());
  for (const ProblemBundle& bundle : bundles) {
    scores.push_back(mink_score(bundle.greedy, k_percent));
  }

  SweepCurve curve;
  curve.method = DetectorMethod::Mink;
  curve.grid.assign(threshold_grid.begin(), threshold_grid.end());
  curve.model_id = std::move(model_id);
  curve.benchmark_id = std::move(benchmark_id);
  for (double threshold : threshold_grid) {
    size_t flagged = 0;
    for (double score : scores) {
      if (score >= threshold) ++flagged;
    }
    curve.rates.push_back(100.0 * static_cast<double>(flagged) /
                          static_cast<double>(scores.size()));
  }
  return curve;
}

SweepCurve sweep(std::span<const ProblemBundle> bundles, DetectorMethod method,
                 std::span<const double> grid, const CddParams& cdd,
                 const MinkParams& mink, std::string model_id,
                 std::string benchmark_id) {
  if (method == DetectorMethod::Cdd) {
    return sweep_cdd(bundles, grid, cdd.xi, std::move(model_id),
                     std::move(benchmark_id));
  }
  return sweep_mink(bundles, grid, mink.k_percent, std::move(model_id),
                    std::move(benchmark_id));
}

std::string_view contamination_band(double rate_percent) {
  if (rate_percent >= 75.0) return "high";
  if (rate_percent >= 25.0) return "mid";
  return "low";
}

std::string_view pass_band(double rate_percent) {
  if (rate_percent >= 50.0) return "high";
  if (rate_percent >= 20.0) return "mid";
  return "low";
}

}  // namespace vcaudit
