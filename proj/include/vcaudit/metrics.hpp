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

#ifndef VCAUDIT_METRICS_HPP
#define VCAUDIT_METRICS_HPP

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vcaudit/samples.hpp"

namespace vcaudit {

enum class PassLabel : uint8_t { Syntax, Func };

std::string_view pass_label_name(PassLabel label);

// Per-problem pass counts over the sampled completions (the greedy reference
// is never evaluable data).
struct PassStats {
  std::string problem_id;
  int64_t n = 0;         // samples evaluated
  int64_t c_syntax = 0;  // <= n
  int64_t c_func = 0;    // <= c_syntax
};

// Unbiased estimator 1 - C(n-c, k) / C(n, k), computed in product form; no
// factorial overflow for n up to 1e4. Throws when k > n ("k exceeds sample
// count", naming problem_id when provided) or arguments are out of range.
double pass_at_k(int64_t n, int64_t c, int64_t k,
                 std::string_view problem_id = {});

// 100 * mean over problems of pass_at_k(n, c_label, k). Errors on an empty
// list and when k exceeds any problem's n (naming the problem).
double benchmark_pass_rate(std::span<const PassStats> stats, int64_t k,
                           PassLabel label);

// Builds per-problem stats for one label. Samples missing the label are
// excluded, so n is the label's effective sample count.
PassStats collect_pass_stats(const ProblemBundle& bundle, PassLabel label);

}  // namespace vcaudit

#endif  // VCAUDIT_METRICS_HPP
