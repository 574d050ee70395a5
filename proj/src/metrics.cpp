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

#include "vcaudit/metrics.hpp"

#include "vcaudit/error.hpp"

namespace vcaudit {

std::string_view pass_label_name(PassLabel label) {
  return label == PassLabel::Syntax ? "syntax" : "func";
}

double pass_at_k(int64_t n, int64_t c, int64_t k, std::string_view problem_id) {
  auto where = [&]() -> std::string {
    return problem_id.empty() ? std::string()
                              : " (problem " + std::string(problem_id) + ")";
  };
  if (n < 1) throw Error::data("pass_at_k: n must be >= 1" + where());
  if (c < 0 || c > n) {
    throw Error::data("pass_at_k: c must be in [0, n]" + where());
  }
  if (k < 1) throw Error::data("pass_at_k: k must be >= 1" + where());
  if (k > n) {
    throw Error::data("pass_at_k: k exceeds sample count (k=" +
                      std::to_string(k) + ", n=" + std::to_string(n) + ")" +
                      where());
  }
  if (n - c < k) return 1.0;  // every k-subset contains a passing sample
  // 1 - prod_{i = n-c+1..n} (1 - k/i); c factors, each in (0, 1].
  double prod = 1.0;
  for (int64_t i = n - c + 1; i <= n; ++i) {
    prod *= 1.0 - static_cast<double>(k) / static_cast<double>(i);
  }
  return 1.0 - prod;
}

double benchmark_pass_rate(std::span<const PassStats> stats, int64_t k,
                           PassLabel label) {
  if (stats.empty()) {
    throw Error::data("benchmark_pass_rate: no problems to aggregate");
  }
  double sum = 0.0;
  for (const PassStats& s : stats) {
    const int64_t c = label == PassLabel::Syntax ? s.c_syntax : s.c_func;
    sum += pass_at_k(s.n, c, k, s.problem_id);
  }
  return 100.0 * sum / static_cast<double>(stats.size());
}

PassStats collect_pass_stats(const ProblemBundle& bundle, PassLabel label) {
  PassStats out;
  out.problem_id = bundle.problem_id;
  for (const InferenceSample& sample : bundle.samples) {
    const auto& flag =
        label == PassLabel::Syntax ? sample.pass_syntax : sample.pass_func;
    if (!flag.has_value()) continue;
    ++out.n;
    if (sample.pass_syntax.value_or(false)) ++out.c_syntax;
    if (sample.pass_func.value_or(false)) ++out.c_func;
  }
  return out;
}

}  // namespace vcaudit
