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

#ifndef VCAUDIT_TESTS_HELPERS_HPP
#define VCAUDIT_TESTS_HELPERS_HPP

#include <unistd.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "vcaudit/samples.hpp"
#include "vcaudit/token.hpp"

namespace vcaudit::testing {

// Scratch directory under the system temp root, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::atomic<uint64_t> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("vcaudit_" + tag + "_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::string file(const std::string& name) const {
    return (path_ / name).string();
  }
  std::string write(const std::string& name, const std::string& content) const {
    const std::string p = file(name);
    std::filesystem::create_directories(std::filesystem::path(p).parent_path());
    std::ofstream out(p, std::ios::binary);
    out << content;
    return p;
  }

 private:
  std::filesystem::path path_;
};

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::string content((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
  return content;
}

inline Token tok(const std::string& text,
                 TokenKind kind = TokenKind::Identifier) {
  return Token{kind, text};
}

inline TokenSeq toks(std::initializer_list<std::string> texts) {
  TokenSeq seq;
  for (const auto& t : texts) seq.push_back(tok(t));
  return seq;
}

// Random token sequence over identifiers t0..t{alphabet-1}.
inline TokenSeq random_seq(std::mt19937_64& rng, size_t len, size_t alphabet) {
  TokenSeq seq;
  seq.reserve(len);
  for (size_t i = 0; i < len; ++i) {
    seq.push_back(tok("t" + std::to_string(rng() % alphabet)));
  }
  return seq;
}

inline InferenceSample make_sample(const std::string& problem_id,
                                   int64_t sample_id, const std::string& text,
                                   DecodeMode mode = DecodeMode::Sampled) {
  InferenceSample s;
  s.benchmark_id = "bench";
  s.problem_id = problem_id;
  s.sample_id = sample_id;
  s.decode_mode = mode;
  if (mode == DecodeMode::Sampled) s.temperature = 0.8;
  s.text = text;
  s.tokens = lex(text);
  return s;
}

inline ProblemBundle make_bundle(const std::string& problem_id,
                                 const std::string& greedy_text,
                                 const std::vector<std::string>& sample_texts) {
  ProblemBundle bundle;
  bundle.benchmark_id = "bench";
  bundle.problem_id = problem_id;
  bundle.greedy = make_sample(problem_id, 0, greedy_text, DecodeMode::Greedy);
  int64_t id = 1;
  for (const std::string& text : sample_texts) {
    bundle.samples.push_back(make_sample(problem_id, id++, text));
  }
  return bundle;
}

}  // namespace vcaudit::testing

#endif  // VCAUDIT_TESTS_HELPERS_HPP
