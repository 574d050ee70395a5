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

#include "vcaudit/mitigation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "vcaudit/error.hpp"
#include "vcaudit/similarity.hpp"

namespace vcaudit {

void validate(const TedParams& params) {
  if (!(params.tau_percent >= 0.0 && params.tau_percent <= 100.0)) {
    throw Error::data("ted: tau_percent must be in [0, 100]");
  }
  if (!(params.alpha_rank >= 0.0 && params.alpha_rank <= 1.0)) {
    throw Error::data("ted: alpha_rank must be in [0, 1]");
  }
}

MitigationOutcome ted_filter(const ProblemBundle& bundle, const TedParams& ted,
                             const CddParams& cdd) {
  validate(ted);
  validate(cdd);
  if (ted.alpha_rank != cdd.alpha) {
    throw Error::data(
        "ted: alpha_rank must equal the detector alpha so before/after "
        "verdicts stay comparable");
  }
  if (bundle.samples.empty()) {
    throw Error::data("ted: bundle for problem " + bundle.problem_id +
                      " has no sampled completions");
  }

  MitigationOutcome outcome;
  outcome.problem_id = bundle.problem_id;
  outcome.verdict_before = cdd_flag(bundle, cdd);

  // Dedup on lexed token streams, keeping the lowest sample_id. Samples are
  // already sorted by sample_id, so the first of each group is the keeper.
  std::vector<const InferenceSample*> pool;
  if (ted.dedup) {
    std::map<TokenSeq, const InferenceSample*> groups;
    for (const InferenceSample& sample : bundle.samples) {
      auto [it, inserted] = groups.emplace(sample.tokens, &sample);
      if (!inserted) outcome.collapsed_sample_ids.push_back(sample.sample_id);
    }
    for (const auto& [tokens, sample] : groups) pool.push_back(sample);
  } else {
    for (const InferenceSample& sample : bundle.samples)
      pool.push_back(&sample);
  }

  // Most memorized first: ascending distance to greedy, ties by sample_id.
  std::vector<std::pair<double, const InferenceSample*>> ranked;
  ranked.reserve(pool.size());
  for (const InferenceSample* sample : pool) {
    ranked.emplace_back(
        normalized_distance(sample->tokens, bundle.greedy.tokens), sample);
  }
  std::sort(ranked.begin(), ranked.end(),
            [](const auto& a, const auto& b) {
              if (a.first != b.first) return a.first < b.first;
              return a.second->sample_id < b.second->sample_id;
            });

  const size_t pool_size = ranked.size();
  const size_t removed_count = static_cast<size_t>(std::ceil(
      ted.tau_percent * static_cast<double>(pool_size) / 100.0));

  outcome.surviving.benchmark_id = bundle.benchmark_id;
  outcome.surviving.problem_id = bundle.problem_id;
  outcome.surviving.greedy = bundle.greedy;
  for (size_t i = 0; i < ranked.size(); ++i) {
    if (i < removed_count) {
      outcome.removed_sample_ids.push_back(ranked[i].second->sample_id);
    } else {
      outcome.surviving.samples.push_back(*ranked[i].second);
    }
  }
  std::sort(outcome.surviving.samples.begin(), outcome.surviving.samples.end(),
            [](const InferenceSample& a, const InferenceSample& b) {
              return a.sample_id < b.sample_id;
            });
  std::sort(outcome.collapsed_sample_ids.begin(),
            outcome.collapsed_sample_ids.end());

  if (outcome.surviving.samples.empty()) {
    DetectorVerdict after;
    after.problem_id = bundle.problem_id;
    after.method = DetectorMethod::Cdd;
    after.score = 0.0;
    after.flagged = false;
    after.params = cdd;
    outcome.verdict_after = after;
  } else {
    outcome.verdict_after = cdd_flag(outcome.surviving, cdd);
  }
  return outcome;
}

std::optional<double> mitigation_rate(
    std::span<const MitigationOutcome> outcomes) {
  if (outcomes.empty()) {
    throw Error::data("mitigation_rate: no outcomes");
  }
  const auto& reference = outcomes.front().verdict_before.params;
  size_t flagged_before = 0;
  size_t unflagged_after = 0;
  for (const MitigationOutcome& outcome : outcomes) {
    if (outcome.verdict_before.params != reference ||
        outcome.verdict_after.params != reference) {
      throw Error::data(
          "mitigation_rate: outcomes mix detector parameters (problem " +
          outcome.problem_id + ")");
    }
    if (outcome.verdict_before.flagged) {
      ++flagged_before;
      if (!outcome.verdict_after.flagged) ++unflagged_after;
    }
  }
  if (flagged_before == 0) return std::nullopt;
  return 100.0 * static_cast<double>(unflagged_after) /
         static_cast<double>(flagged_before);
}

AccuracyDrop accuracy_drop(std::span<const PassStats> before,
                           std::span<const PassStats> after, int64_t k,
                           PassLabel label) {
  std::set<std::string> before_ids, after_ids;
  for (const PassStats& s : before) before_ids.insert(s.problem_id);
  for (const PassStats& s : after) after_ids.insert(s.problem_id);
  if (before_ids != after_ids) {
    std::string diff;
    for (const std::string& id : before_ids) {
      if (!after_ids.contains(id)) diff += " -" + id;
    }
    for (const std::string& id : after_ids) {
      if (!before_ids.contains(id)) diff += " +" + id;
    }
    throw Error::data("accuracy_drop: problem sets differ:" + diff);
  }
  for (const PassStats& s : after) {
    if (s.n < 1) {
      throw Error::data("accuracy_drop: no surviving inferences for problem " +
                        s.problem_id);
    }
  }
  AccuracyDrop result;
  result.rate_before = benchmark_pass_rate(before, k, label);
  result.rate_after = benchmark_pass_rate(after, k, label);
  result.drop = result.rate_before - result.rate_after;
  return result;
}

}  // namespace vcaudit
