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

#ifndef VCAUDIT_INGEST_HPP
#define VCAUDIT_INGEST_HPP

#include <span>
#include <string>
#include <vector>

#include "vcaudit/samples.hpp"
#include "vcaudit/token.hpp"

namespace vcaudit {

// ---------------------------------------------------------------------------
// Inference logs: line-delimited JSON, one record per completion.
//
// Fields, exactly: benchmark_id (string), problem_id (string), sample_id
// (int >= 0), decode_mode ("greedy"|"sampled"), temperature (number >= 0,
// optional; greedy records must omit it or give 0), text (string),
// model_tokens (array of string, optional), logprobs (array of number <= 0,
// optional, same length as model_tokens, which must then be present),
// pass_syntax (bool, optional), pass_func (bool, optional; presence and
// truth both require pass_syntax). Unknown fields are schema errors.
// ---------------------------------------------------------------------------

// Parses and schema-validates records; errors name the line and field.
std::vector<InferenceSample> parse_inference_log(const std::string& path);

// Groups records by (benchmark_id, problem_id) into bundles, lexes every
// completion with the given options, and enforces the bundle invariants:
// exactly one greedy per problem, at least one sampled completion, unique
// sample ids. Bundles ordered by (benchmark_id, problem_id), samples by
// sample_id; the grouping is a partition of the input records.
std::vector<ProblemBundle> group_records(std::vector<InferenceSample> records,
                                         const LexOptions& lex_options);

std::vector<ProblemBundle> load_inference_log(const std::string& path,
                                              const LexOptions& lex_options);

// Serializes records in the exact log schema (used by the synthetic harness
// so generated logs exercise the full parse path). Byte-deterministic.
void write_inference_log(std::span<const InferenceSample> records,
                         const std::string& path);

// ---------------------------------------------------------------------------
// Benchmark manifests: line-delimited JSON, one record per problem with
// fields problem_id, prompt_path, golden_path. Relative paths resolve
// against the manifest's directory; referenced files must exist at load.
// ---------------------------------------------------------------------------

struct ManifestEntry {
  std::string problem_id;
  std::string prompt_path;
  std::string golden_path;
};

struct BenchmarkManifest {
  std::string benchmark_id;
  std::vector<ManifestEntry> problems;  // sorted by problem_id, ids unique
};

// benchmark_id defaults to the manifest file's stem when empty.
BenchmarkManifest load_manifest(const std::string& path,
                                std::string benchmark_id = {});

// ---------------------------------------------------------------------------
// Training corpora: a directory tree of source files.
// ---------------------------------------------------------------------------

struct CorpusDoc {
  std::string doc_id;  // path relative to the corpus root, '/'-separated
  std::string path;
  TokenSeq tokens;
};

struct CorpusOptions {
  std::vector<std::string> extensions = {".v"};
};

// Every matched file is lexed once; docs ordered by doc_id. Unreadable files
// are errors naming the file; an empty match set is allowed but warned about
// on stderr.
std::vector<CorpusDoc> load_corpus(const std::string& directory,
                                   const LexOptions& lex_options,
                                   const CorpusOptions& options = {});

}  // namespace vcaudit

#endif  // VCAUDIT_INGEST_HPP
