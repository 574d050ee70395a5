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

#include "vcaudit/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "vcaudit/error.hpp"

namespace vcaudit {
namespace {

// splitmix64; mixes (seed, stream index) into independent sub-seeds.
uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// xoshiro-free minimal generator: splitmix64 stream. Sampling helpers are
// hand-rolled so generated logs are byte-identical across standard libraries.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next() { return state_ = splitmix64(state_); }

  // Uniform in [0, 1), 53-bit resolution.
  double next_double() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  // Uniform in [0, n).
  uint64_t next_below(uint64_t n) { return next() % n; }

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * next_double();
  }

 private:
  uint64_t state_;
};

std::string vocab_word(int64_t index) { return "v" + std::to_string(index); }

std::string problem_name(int64_t index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "p%04lld", static_cast<long long>(index));
  return std::string(buf);
}

std::vector<int64_t> random_solution(Rng& rng, const SynthSpec& spec) {
  std::vector<int64_t> words(spec.solution_len);
  for (auto& w : words) {
    w = static_cast<int64_t>(
        rng.next_below(static_cast<uint64_t>(spec.vocab_size)));
  }
  return words;
}

struct Emission {
  std::vector<int64_t> words;
  std::vector<bool> substituted;
  bool canonical = false;
};

Emission noised_variant(Rng& rng, const std::vector<int64_t>& canonical,
                        const SynthSpec& spec) {
  Emission e;
  e.words = canonical;
  e.substituted.assign(canonical.size(), false);
  for (size_t i = 0; i < e.words.size(); ++i) {
    if (rng.next_double() < spec.edit_noise) {
      // Substitute with a different word so each hit changes the token.
      const uint64_t shift =
          1 + rng.next_below(static_cast<uint64_t>(spec.vocab_size - 1));
      e.words[i] = static_cast<int64_t>(
          (static_cast<uint64_t>(e.words[i]) + shift) %
          static_cast<uint64_t>(spec.vocab_size));
      e.substituted[i] = true;
    }
  }
  e.canonical =
      std::none_of(e.substituted.begin(), e.substituted.end(),
                   [](bool b) { return b; });
  return e;
}

Emission canonical_emission(const std::vector<int64_t>& canonical) {
  Emission e;
  e.words = canonical;
  e.substituted.assign(canonical.size(), false);
  e.canonical = true;
  return e;
}

InferenceSample to_sample(Rng& rng, const Emission& emission,
                          const std::string& problem_id, int64_t sample_id,
                          DecodeMode mode) {
  InferenceSample s;
  s.benchmark_id = kSynthBenchmarkId;
  s.problem_id = problem_id;
  s.sample_id = sample_id;
  s.decode_mode = mode;
  if (mode == DecodeMode::Sampled) s.temperature = 0.8;

  std::vector<std::string> model_tokens;
  std::vector<double> logprobs;
  model_tokens.reserve(emission.words.size());
  logprobs.reserve(emission.words.size());
  std::string text;
  for (size_t i = 0; i < emission.words.size(); ++i) {
    const std::string word = vocab_word(emission.words[i]);
    if (i) text += ' ';
    text += word;
    model_tokens.push_back(word);
    logprobs.push_back(emission.substituted[i] ? rng.uniform(-3.0, -1.0)
                                               : rng.uniform(-0.01, 0.0));
  }
  s.text = std::move(text);
  s.model_tokens = std::move(model_tokens);
  s.logprobs = std::move(logprobs);
  // Memorized emissions reproduce the reference solution; noised ones keep
  // valid tokens but the wrong function.
  s.pass_syntax = true;
  s.pass_func = emission.canonical;
  return s;
}

}  // namespace

void validate(const SynthSpec& spec) {
  if (spec.problem_count < 1) throw Error::data("synth: problem_count >= 1");
  if (spec.vocab_size < 2) throw Error::data("synth: vocab_size >= 2");
  if (spec.solution_len < 1) throw Error::data("synth: solution_len >= 1");
  if (spec.samples_per_problem < 1) {
    throw Error::data("synth: samples_per_problem >= 1");
  }
  for (double p : {spec.memorization_fraction, spec.memorized_emit_prob,
                   spec.edit_noise}) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw Error::data("synth: probabilities must be in [0, 1]");
    }
  }
}

SynthResult generate(const SynthSpec& spec) {
  validate(spec);
  SynthResult result;

  // Pick exactly floor(f * problem_count) contaminated problems by seeded
  // shuffle (Fisher-Yates, hand-rolled for cross-platform determinism).
  const auto contaminated_count = static_cast<int64_t>(
      std::floor(spec.memorization_fraction *
                 static_cast<double>(spec.problem_count)));
  std::vector<int64_t> order(spec.problem_count);
  std::iota(order.begin(), order.end(), 0);
  Rng shuffle_rng(splitmix64(spec.seed) ^ 0x5e1ec7ed5e1ec7edull);
  for (size_t i = order.size(); i > 1; --i) {
    std::swap(order[i - 1], order[shuffle_rng.next_below(i)]);
  }
  std::vector<bool> contaminated(spec.problem_count, false);
  for (int64_t i = 0; i < contaminated_count; ++i) contaminated[order[i]] = true;

  for (int64_t p = 0; p < spec.problem_count; ++p) {
    const std::string problem_id = problem_name(p);
    Rng rng(splitmix64(spec.seed ^ splitmix64(static_cast<uint64_t>(p) + 1)));
    const std::vector<int64_t> canonical = random_solution(rng, spec);
    const bool dirty = contaminated[p];
    result.truth.contaminated[problem_id] = dirty;
    auto& memorized = result.truth.memorized_sample_ids[problem_id];

    // Greedy reference first (sample_id 0), then the sampled completions.
    Emission greedy = dirty ? canonical_emission(canonical)
                            : noised_variant(rng, canonical, spec);
    result.records.push_back(
        to_sample(rng, greedy, problem_id, 0, DecodeMode::Greedy));

    for (int64_t i = 1; i <= spec.samples_per_problem; ++i) {
      Emission emission =
          (dirty && rng.next_double() < spec.memorized_emit_prob)
              ? canonical_emission(canonical)
              : noised_variant(rng, canonical, spec);
      if (emission.canonical) memorized.insert(i);
      result.records.push_back(
          to_sample(rng, emission, problem_id, i, DecodeMode::Sampled));
    }
  }
  return result;
}

DetectorScore score_detector(std::span<const DetectorVerdict> verdicts,
                             const SynthTruth& truth) {
  if (verdicts.size() != truth.contaminated.size()) {
    throw Error::data("score_detector: verdicts and ground truth differ in "
                      "problem count");
  }
  size_t true_pos = 0, false_pos = 0, false_neg = 0, positives = 0;
  for (const DetectorVerdict& v : verdicts) {
    auto it = truth.contaminated.find(v.problem_id);
    if (it == truth.contaminated.end()) {
      throw Error::data("score_detector: no ground truth for problem " +
                        v.problem_id);
    }
    const bool dirty = it->second;
    positives += dirty ? 1 : 0;
    if (v.flagged && dirty) ++true_pos;
    if (v.flagged && !dirty) ++false_pos;
    if (!v.flagged && dirty) ++false_neg;
  }

  DetectorScore score;
  const size_t flagged = true_pos + false_pos;
  score.precision =
      flagged == 0 ? 1.0
                   : static_cast<double>(true_pos) / static_cast<double>(flagged);
  score.recall = positives == 0 ? 1.0
                                : static_cast<double>(true_pos) /
                                      static_cast<double>(positives);
  const double measured = 100.0 * static_cast<double>(flagged) /
                          static_cast<double>(verdicts.size());
  const double actual = 100.0 * static_cast<double>(positives) /
                        static_cast<double>(verdicts.size());
  score.recovered_rate_error = std::abs(measured - actual);
  return score;
}

}  // namespace vcaudit
