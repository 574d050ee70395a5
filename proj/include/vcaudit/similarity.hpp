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

#ifndef VCAUDIT_SIMILARITY_HPP
#define VCAUDIT_SIMILARITY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vcaudit/token.hpp"

namespace vcaudit {

// Levenshtein distance over token records (equality = same kind and text).
size_t token_edit_distance(const TokenSeq& a, const TokenSeq& b);

// Threshold-bounded Levenshtein over a diagonal band of width 2*limit+1.
// Returns the exact distance when it is <= limit, nullopt otherwise. The
// distance-distribution sweeps run 50 distances per problem per grid point;
// when only a "<= alpha * L" decision is needed this is O(limit * L) instead
// of O(L^2).
std::optional<size_t> bounded_token_edit_distance(const TokenSeq& a,
                                                  const TokenSeq& b,
                                                  size_t limit);

// token_edit_distance(a, b) / max(|a|, |b|, 1). Zero iff a == b; one when
// exactly one side is empty.
double normalized_distance(const TokenSeq& a, const TokenSeq& b);

// Largest integer d with (double)d / denom <= alpha, i.e. the edit-distance
// budget equivalent to a normalized-distance threshold. Derived with the same
// double-precision predicate normalized_distance uses, so the banded decision
// and the naive one agree exactly.
size_t alpha_distance_limit(double alpha, size_t denom);

// Banded equivalent of normalized_distance(a, b) <= alpha.
bool within_alpha(const TokenSeq& a, const TokenSeq& b, double alpha);

// ---------------------------------------------------------------------------
// Winnowed k-gram fingerprints.
//
// Gram hash: each token is reduced to a 64-bit FNV-1a code over (kind byte,
// text bytes, 0x1F separator); a k-gram hashes its token codes with a
// polynomial rolling hash, base kGramHashBase, modulus kGramHashModulus
// (the Mersenne prime 2^61 - 1). Within every window of `window` consecutive
// gram hashes the minimum is selected (rightmost on ties); selected hashes
// are deduplicated into the print set. Hash collisions are accepted: the
// 64-bit space makes corpus-scale collision probability negligible and the
// score is a screen, not a proof.
// ---------------------------------------------------------------------------

inline constexpr uint64_t kGramHashModulus = (uint64_t{1} << 61) - 1;
inline constexpr uint64_t kGramHashBase = 0x100000001b3ull;

struct FingerprintParams {
  size_t k_gram = 12;  // tokens per gram
  size_t window = 8;   // grams per winnowing window

  bool operator==(const FingerprintParams&) const = default;
};

struct FingerprintSet {
  size_t k_gram = 0;
  size_t window = 0;
  std::vector<uint64_t> prints;  // sorted, distinct

  bool operator==(const FingerprintSet&) const = default;
};

// Sequences shorter than k_gram (including empty ones) yield a single hash of
// the whole sequence, so every fingerprint set is nonempty.
FingerprintSet fingerprint(const TokenSeq& tokens,
                           const FingerprintParams& params);

// |query.prints ∩ doc.prints| / |query.prints|. Asymmetric: contamination
// asks how much of a benchmark solution appears inside a training document,
// not whether the two are mutually similar.
// Throws Error::data when the two sides were built with different params.
double containment(const FingerprintSet& query, const FingerprintSet& doc);

struct NamedFingerprint {
  std::string id;
  FingerprintSet prints;
};

struct SimilarityHit {
  std::string problem_id;
  std::string doc_id;
  double score = 0.0;  // maximum containment over the corpus (Top-1)
};

// For each query (a benchmark golden solution), the corpus document with the
// highest containment; ties break to the lexicographically smallest doc id.
// Output sorted by problem id. Throws Error::data on an empty corpus.
std::vector<SimilarityHit> top1_matches(
    const std::vector<NamedFingerprint>& queries,
    const std::vector<NamedFingerprint>& corpus);

}  // namespace vcaudit

#endif  // VCAUDIT_SIMILARITY_HPP
