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

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "helpers.hpp"
#include "vcaudit/error.hpp"
#include "vcaudit/mitigation.hpp"
#include "vcaudit/similarity.hpp"

using namespace vcaudit;
using vcaudit::testing::make_bundle;

namespace {

TedParams ted_with(double tau, bool dedup = true, double alpha = 0.05) {
  TedParams p;
  p.tau_percent = tau;
  p.alpha_rank = alpha;
  p.dedup = dedup;
  return p;
}

const CddParams kCdd{0.05, 0.02};

// A bundle of pairwise-distinct samples at varied distance from greedy:
// sample i substitutes its first (i % 9) + 1 tokens with a sample-unique
// word, so distances span 0.1..0.9 and dedup never collapses anything.
ProblemBundle spread_bundle(const std::string& id, size_t count) {
  const std::string greedy = "a b c d e f g h i j";
  std::vector<std::string> samples;
  for (size_t i = 0; i < count; ++i) {
    const size_t changed = i % 9 + 1;
    std::string text;
    for (size_t j = 0; j < 10; ++j) {
      if (j < changed) {
        text += "m" + std::to_string(i) + " ";
      } else {
        text += std::string(1, static_cast<char>('a' + j)) + " ";
      }
    }
    samples.push_back(text);
  }
  return make_bundle(id, greedy, samples);
}

}  // namespace

TEST_CASE("ted_filter: tau=0 with no duplicates is the identity") {
  ProblemBundle bundle = make_bundle(
      "p0", "a b c", {"a b c x", "a b c y", "a b c z z"});
  const MitigationOutcome outcome =
      ted_filter(bundle, ted_with(0.0), kCdd);
  CHECK(outcome.removed_sample_ids.empty());
  CHECK(outcome.collapsed_sample_ids.empty());
  REQUIRE(outcome.surviving.samples.size() == bundle.samples.size());
  for (size_t i = 0; i < bundle.samples.size(); ++i) {
    CHECK(outcome.surviving.samples[i].sample_id ==
          bundle.samples[i].sample_id);
  }
}

TEST_CASE("ted_filter: tau=0 with dedup off is the identity even on dupes") {
  ProblemBundle bundle = make_bundle(
      "p0", "a b c", {"a b c", "a b c", "x y z", "x y z"});
  const MitigationOutcome outcome =
      ted_filter(bundle, ted_with(0.0, /*dedup=*/false), kCdd);
  CHECK(outcome.removed_sample_ids.empty());
  CHECK(outcome.collapsed_sample_ids.empty());
  CHECK(outcome.surviving.samples.size() == 4);
}

TEST_CASE("ted_filter: removal count is the exact ceiling") {
  // N' = 50 distinct samples, tau = 20 -> exactly 10 removed.
  ProblemBundle bundle = spread_bundle("p0", 50);
  const MitigationOutcome outcome = ted_filter(bundle, ted_with(20.0), kCdd);
  CHECK(outcome.collapsed_sample_ids.empty());
  CHECK(outcome.removed_sample_ids.size() == 10);
  CHECK(outcome.surviving.samples.size() == 40);

  for (double tau : {0.0, 10.0, 33.0, 50.0, 99.0, 100.0}) {
    const MitigationOutcome o = ted_filter(bundle, ted_with(tau), kCdd);
    const auto expected = static_cast<size_t>(std::ceil(tau * 50.0 / 100.0));
    CHECK(o.removed_sample_ids.size() == expected);
  }
}

TEST_CASE("ted_filter: degenerate full collapse yields empty survival") {
  // All 50 samples identical to greedy; dedup collapses to one, tau=50
  // removes ceil(0.5) = 1, nothing survives.
  ProblemBundle bundle = make_bundle(
      "p0", "m o d", std::vector<std::string>(50, "m o d"));
  const MitigationOutcome outcome = ted_filter(bundle, ted_with(50.0), kCdd);
  CHECK(outcome.collapsed_sample_ids.size() == 49);
  CHECK(outcome.removed_sample_ids.size() == 1);
  CHECK(outcome.removed_sample_ids[0] == 1);  // lowest id is the keeper
  CHECK(outcome.no_survivors());
  CHECK(outcome.verdict_before.flagged);
  CHECK(!outcome.verdict_after.flagged);
  CHECK(outcome.verdict_after.score == 0.0);
}

TEST_CASE("ted_filter: partition and monotone-removal properties") {
  std::mt19937_64 rng(59);
  for (int iter = 0; iter < 30; ++iter) {
    // Random bundle with some duplicates.
    std::vector<std::string> samples;
    const size_t n = 5 + rng() % 20;
    for (size_t i = 0; i < n; ++i) {
      if (!samples.empty() && rng() % 3 == 0) {
        samples.push_back(samples[rng() % samples.size()]);
      } else {
        std::string text;
        for (int j = 0; j < 6; ++j) {
          text += "t" + std::to_string(rng() % 4) + " ";
        }
        samples.push_back(text);
      }
    }
    ProblemBundle bundle = make_bundle("p0", "t0 t1 t2 t3 t0 t1", samples);

    std::set<int64_t> all_ids;
    for (const auto& s : bundle.samples) all_ids.insert(s.sample_id);

    std::set<int64_t> previous_removed;
    for (double tau : {0.0, 10.0, 20.0, 30.0, 40.0, 50.0, 60.0, 70.0, 80.0,
                       90.0, 100.0}) {
      const MitigationOutcome o = ted_filter(bundle, ted_with(tau), kCdd);

      // Partition: surviving, removed, collapsed are disjoint and cover all.
      std::set<int64_t> seen;
      for (const auto& s : o.surviving.samples) {
        CHECK(seen.insert(s.sample_id).second);
      }
      for (int64_t id : o.removed_sample_ids) CHECK(seen.insert(id).second);
      for (int64_t id : o.collapsed_sample_ids) CHECK(seen.insert(id).second);
      CHECK(seen == all_ids);

      // Monotone removal: smaller tau removes a subset.
      std::set<int64_t> removed(o.removed_sample_ids.begin(),
                                o.removed_sample_ids.end());
      CHECK(std::includes(removed.begin(), removed.end(),
                          previous_removed.begin(), previous_removed.end()));
      previous_removed = std::move(removed);
    }
  }
}

TEST_CASE("ted_filter: memorized samples leave before any clean sample") {
  // 10 copies of greedy and 10 distant samples; removal order must exhaust
  // the copies (collapsed or removed) before touching a clean one.
  std::vector<std::string> samples(10, "g g g g g g g g g g");
  for (int i = 0; i < 10; ++i) {
    samples.push_back("c" + std::to_string(i) + " c c c c c c c c c");
  }
  ProblemBundle bundle = make_bundle("p0", "g g g g g g g g g g", samples);
  // Memorized ids are 1..10 (make_bundle numbers samples from 1).
  for (double tau : {10.0, 30.0, 60.0, 100.0}) {
    for (bool dedup : {false, true}) {
      const MitigationOutcome o =
          ted_filter(bundle, ted_with(tau, dedup), kCdd);
      std::set<int64_t> surviving_memorized, removed_clean;
      for (const auto& s : o.surviving.samples) {
        if (s.sample_id <= 10) surviving_memorized.insert(s.sample_id);
      }
      for (int64_t id : o.removed_sample_ids) {
        if (id > 10) removed_clean.insert(id);
      }
      if (!removed_clean.empty()) CHECK(surviving_memorized.empty());
    }
  }
}

TEST_CASE("ted_filter: rho never rises through exclusion") {
  std::mt19937_64 rng(61);
  for (int iter = 0; iter < 40; ++iter) {
    ProblemBundle bundle = spread_bundle("p0", 5 + rng() % 25);
    const double alpha = static_cast<double>(rng() % 100) / 100.0;
    CddParams cdd{alpha, 0.02};
    const double rho_before = cdd_peakedness(bundle, alpha);
    for (double tau : {10.0, 40.0, 70.0}) {
      const MitigationOutcome o =
          ted_filter(bundle, ted_with(tau, /*dedup=*/false, alpha), cdd);
      if (!o.no_survivors()) {
        CHECK(cdd_peakedness(o.surviving, alpha) <= rho_before + 1e-12);
      }
    }
  }
}

TEST_CASE("ted_filter: parameter mismatch is rejected") {
  ProblemBundle bundle = make_bundle("p0", "a", {"a", "b"});
  TedParams ted = ted_with(50.0);
  ted.alpha_rank = 0.10;  // disagrees with kCdd.alpha
  CHECK_THROWS_WITH_AS((void)ted_filter(bundle, ted, kCdd),
                       doctest::Contains("alpha_rank"), Error);
}

TEST_CASE("mitigation_rate: arithmetic and the vacuous case") {
  auto outcome_pair = [](const std::string& id, bool before, bool after) {
    MitigationOutcome o;
    o.problem_id = id;
    o.verdict_before.flagged = before;
    o.verdict_before.params = kCdd;
    o.verdict_after.flagged = after;
    o.verdict_after.params = kCdd;
    return o;
  };

  // 10 flagged before, 4 still flagged after -> 60.00.
  std::vector<MitigationOutcome> outcomes;
  for (int i = 0; i < 10; ++i) {
    outcomes.push_back(outcome_pair("p" + std::to_string(i), true, i < 4));
  }
  for (int i = 10; i < 15; ++i) {
    outcomes.push_back(outcome_pair("p" + std::to_string(i), false, false));
  }
  auto rate = mitigation_rate(outcomes);
  REQUIRE(rate.has_value());
  CHECK(*rate == doctest::Approx(60.0).epsilon(1e-12));

  // Nothing unflagged -> 0.00.
  std::vector<MitigationOutcome> stuck = {outcome_pair("p0", true, true)};
  rate = mitigation_rate(stuck);
  REQUIRE(rate.has_value());
  CHECK(*rate == 0.0);

  // Nothing flagged before -> not applicable, never a number.
  std::vector<MitigationOutcome> vacuous = {outcome_pair("p0", false, false)};
  CHECK(!mitigation_rate(vacuous).has_value());

  // Mixed detector params error.
  std::vector<MitigationOutcome> mixed = {outcome_pair("p0", true, false),
                                          outcome_pair("p1", true, false)};
  mixed[1].verdict_before.params = CddParams{0.10, 0.02};
  mixed[1].verdict_after.params = CddParams{0.10, 0.02};
  CHECK_THROWS_WITH_AS((void)mitigation_rate(mixed),
                       doctest::Contains("mix"), Error);
}

TEST_CASE("accuracy_drop: arithmetic and alignment errors") {
  std::vector<PassStats> before = {{"p0", 50, 50, 20}, {"p1", 50, 50, 20}};
  SUBCASE("identical before/after") {
    const AccuracyDrop d = accuracy_drop(before, before, 1, PassLabel::Func);
    CHECK(d.drop == 0.0);
  }
  SUBCASE("40 to 30 drops 10 points") {
    // pass@1 = c/n per problem; 20/50 = 0.4 before, 15/50 = 0.3 after.
    std::vector<PassStats> after = {{"p0", 50, 50, 15}, {"p1", 50, 50, 15}};
    const AccuracyDrop d = accuracy_drop(before, after, 1, PassLabel::Func);
    CHECK(d.rate_before == doctest::Approx(40.0).epsilon(1e-9));
    CHECK(d.rate_after == doctest::Approx(30.0).epsilon(1e-9));
    CHECK(d.drop == doctest::Approx(10.0).epsilon(1e-9));
  }
  SUBCASE("empty surviving set names the problem") {
    std::vector<PassStats> after = {{"p0", 50, 50, 15}, {"p1", 0, 0, 0}};
    CHECK_THROWS_WITH_AS(
        (void)accuracy_drop(before, after, 1, PassLabel::Func),
        doctest::Contains("p1"), Error);
  }
  SUBCASE("misaligned problem sets list the difference") {
    std::vector<PassStats> after = {{"p0", 50, 50, 15}, {"p2", 50, 50, 15}};
    CHECK_THROWS_WITH_AS(
        (void)accuracy_drop(before, after, 1, PassLabel::Func),
        doctest::Contains("p2"), Error);
  }
}
