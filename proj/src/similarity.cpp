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

#include "vcaudit/similarity.hpp"

#include <algorithm>
#include <deque>
#include <limits>

#include "vcaudit/error.hpp"
#include "vcaudit/util.hpp"

namespace vcaudit {
namespace {

uint64_t mulmod61(uint64_t a, uint64_t b) {
  return static_cast<uint64_t>((static_cast<__uint128_t>(a) * b) %
                               kGramHashModulus);
}

uint64_t token_code(const Token& tok) {
  uint64_t h = kFnvOffsetBasis;
  char kind = static_cast<char>(tok.kind);
  h = fnv1a64(std::string_view(&kind, 1), h);
  h = fnv1a64(tok.text, h);
  char sep = 0x1f;
  h = fnv1a64(std::string_view(&sep, 1), h);
  return h % kGramHashModulus;
}

}  // namespace

size_t token_edit_distance(const TokenSeq& a, const TokenSeq& b) {
  // Classic DP, one rolling row plus the diagonal carry.
  const TokenSeq& s = a.size() <= b.size() ? a : b;
  const TokenSeq& t = a.size() <= b.size() ? b : a;
  const size_t m = s.size(), n = t.size();
  if (m == 0) return n;

  std::vector<size_t> row(m + 1);
  for (size_t j = 0; j <= m; ++j) row[j] = j;
  for (size_t i = 1; i <= n; ++i) {
    size_t diag = row[0];
    row[0] = i;
    for (size_t j = 1; j <= m; ++j) {
      size_t old = row[j];
      size_t sub = diag + (t[i - 1] == s[j - 1] ? 0 : 1);
      row[j] = std::min({sub, row[j] + 1, row[j - 1] + 1});
      diag = old;
    }
  }
  return row[m];
}

std::optional<size_t> bounded_token_edit_distance(const TokenSeq& a,
                                                  const TokenSeq& b,
                                                  size_t limit) {
  const size_t m = a.size(), n = b.size();
  const size_t gap = m > n ? m - n : n - m;
  if (gap > limit) return std::nullopt;

  const size_t kInf = std::numeric_limits<size_t>::max();
  std::vector<size_t> prev(n + 1, kInf), cur(n + 1, kInf);
  for (size_t j = 0; j <= std::min(n, limit); ++j) prev[j] = j;

  for (size_t i = 1; i <= m; ++i) {
    const size_t lo = i > limit ? i - limit : 0;
    const size_t hi = std::min(n, i + limit);
    if (lo > 0) cur[lo - 1] = kInf;  // below the band in this row
    size_t row_best = kInf;
    for (size_t j = lo; j <= hi; ++j) {
      size_t best;
      if (j == 0) {
        best = i;  // lo == 0 implies i <= limit
      } else {
        best = kInf;
        if (prev[j] != kInf) best = std::min(best, prev[j] + 1);
        if (cur[j - 1] != kInf) best = std::min(best, cur[j - 1] + 1);
        if (prev[j - 1] != kInf) {
          size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
          best = std::min(best, sub);
        }
      }
      if (best > limit) best = kInf;
      cur[j] = best;
      row_best = std::min(row_best, best);
    }
    if (row_best == kInf) return std::nullopt;
    if (hi + 1 <= n) cur[hi + 1] = kInf;  // above the band for the next row
    std::swap(prev, cur);
  }
  if (prev[n] == kInf || prev[n] > limit) return std::nullopt;
  return prev[n];
}

double normalized_distance(const TokenSeq& a, const TokenSeq& b) {
  const size_t denom = std::max({a.size(), b.size(), size_t{1}});
  return static_cast<double>(token_edit_distance(a, b)) /
         static_cast<double>(denom);
}

size_t alpha_distance_limit(double alpha, size_t denom) {
  if (alpha >= 1.0) return denom;
  if (alpha <= 0.0) return 0;
  const double d = static_cast<double>(denom);
  size_t k = static_cast<size_t>(alpha * d);
  if (k > denom) k = denom;
  // Pin k against the same predicate the normalized route evaluates.
  while (k > 0 && static_cast<double>(k) / d > alpha) --k;
  while (k < denom && static_cast<double>(k + 1) / d <= alpha) ++k;
  return k;
}

bool within_alpha(const TokenSeq& a, const TokenSeq& b, double alpha) {
  const size_t denom = std::max({a.size(), b.size(), size_t{1}});
  const size_t limit = alpha_distance_limit(alpha, denom);
  return bounded_token_edit_distance(a, b, limit).has_value();
}

FingerprintSet fingerprint(const TokenSeq& tokens,
                           const FingerprintParams& params) {
  if (params.k_gram < 1 || params.window < 1) {
    throw Error::data("fingerprint: k_gram and window must be >= 1");
  }
  FingerprintSet out;
  out.k_gram = params.k_gram;
  out.window = params.window;

  const size_t n = tokens.size();
  const size_t k = params.k_gram;

  if (n < k) {
    // Degenerate input: one hash of the whole (possibly empty) sequence.
    uint64_t h = 0;
    for (const Token& tok : tokens) {
      h = (mulmod61(h, kGramHashBase) + token_code(tok)) % kGramHashModulus;
    }
    out.prints.push_back(h);
    return out;
  }

  // Rolling gram hashes.
  uint64_t top = 1;  // base^(k-1) mod M
  for (size_t i = 1; i < k; ++i) top = mulmod61(top, kGramHashBase);

  std::vector<uint64_t> codes(n);
  for (size_t i = 0; i < n; ++i) codes[i] = token_code(tokens[i]);

  std::vector<uint64_t> grams(n - k + 1);
  uint64_t h = 0;
  for (size_t i = 0; i < k; ++i) {
    h = (mulmod61(h, kGramHashBase) + codes[i]) % kGramHashModulus;
  }
  grams[0] = h;
  for (size_t i = 1; i + k <= n; ++i) {
    uint64_t dropped = mulmod61(codes[i - 1], top);
    h = (h + kGramHashModulus - dropped) % kGramHashModulus;
    h = (mulmod61(h, kGramHashBase) + codes[i + k - 1]) % kGramHashModulus;
    grams[i] = h;
  }

  // Winnowing: minimum per window, rightmost wins ties. Fewer grams than a
  // window collapse into a single window. Sliding-minimum deque keeps the
  // rightmost minimal index at the front (ties evict earlier candidates).
  const size_t window = std::min(params.window, grams.size());
  std::deque<size_t> q;
  for (size_t i = 0; i < grams.size(); ++i) {
    while (!q.empty() && grams[q.back()] >= grams[i]) q.pop_back();
    q.push_back(i);
    if (q.front() + window <= i) q.pop_front();
    if (i + 1 >= window) out.prints.push_back(grams[q.front()]);
  }

  std::sort(out.prints.begin(), out.prints.end());
  out.prints.erase(std::unique(out.prints.begin(), out.prints.end()),
                   out.prints.end());
  return out;
}

double containment(const FingerprintSet& query, const FingerprintSet& doc) {
  if (query.k_gram != doc.k_gram || query.window != doc.window) {
    throw Error::data("containment: fingerprint parameter mismatch (query " +
                      std::to_string(query.k_gram) + "/" +
                      std::to_string(query.window) + " vs doc " +
                      std::to_string(doc.k_gram) + "/" +
                      std::to_string(doc.window) + ")");
  }
  if (query.prints.empty()) return 0.0;

  size_t shared = 0;
  auto qi = query.prints.begin();
  auto di = doc.prints.begin();
  while (qi != query.prints.end() && di != doc.prints.end()) {
    if (*qi < *di) {
      ++qi;
    } else if (*di < *qi) {
      ++di;
    } else {
      ++shared;
      ++qi;
      ++di;
    }
  }
  return static_cast<double>(shared) / static_cast<double>(query.prints.size());
}

std::vector<SimilarityHit> top1_matches(
    const std::vector<NamedFingerprint>& queries,
    const std::vector<NamedFingerprint>& corpus) {
  if (corpus.empty()) {
    throw Error::data("top1_matches: corpus is empty");
  }
  std::vector<SimilarityHit> hits;
  hits.reserve(queries.size());
  for (const NamedFingerprint& query : queries) {
    SimilarityHit best{query.id, "", -1.0};
    for (const NamedFingerprint& doc : corpus) {
      double score = containment(query.prints, doc.prints);
      if (score > best.score ||
          (score == best.score && doc.id < best.doc_id)) {
        best.doc_id = doc.id;
        best.score = score;
      }
    }
    hits.push_back(std::move(best));
  }
  std::sort(hits.begin(), hits.end(),
            [](const SimilarityHit& a, const SimilarityHit& b) {
              return a.problem_id < b.problem_id;
            });
  return hits;
}

}  // namespace vcaudit
