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

#include "vcaudit/ingest.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "vcaudit/error.hpp"
#include "vcaudit/util.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace vcaudit {
namespace {

const std::set<std::string>& allowed_log_fields() {
  static const std::set<std::string> fields = {
      "benchmark_id", "problem_id", "sample_id",   "decode_mode",
      "temperature",  "text",       "model_tokens", "logprobs",
      "pass_syntax",  "pass_func"};
  return fields;
}

[[noreturn]] void schema_error(const std::string& path, size_t line,
                               const std::string& field,
                               const std::string& what) {
  throw Error::data(path + ":" + std::to_string(line) + ": field '" + field +
                    "': " + what);
}

InferenceSample parse_record(const std::string& path, size_t line_no,
                             const json& rec) {
  if (!rec.is_object()) {
    schema_error(path, line_no, "<record>", "record must be a JSON object");
  }
  for (const auto& [key, value] : rec.items()) {
    if (!allowed_log_fields().contains(key)) {
      schema_error(path, line_no, key, "unknown field");
    }
  }
  auto require = [&](const char* field) -> const json& {
    auto it = rec.find(field);
    if (it == rec.end()) schema_error(path, line_no, field, "missing");
    return *it;
  };

  InferenceSample sample;

  const json& bench = require("benchmark_id");
  if (!bench.is_string())
    schema_error(path, line_no, "benchmark_id", "must be a string");
  sample.benchmark_id = bench.get<std::string>();

  const json& prob = require("problem_id");
  if (!prob.is_string())
    schema_error(path, line_no, "problem_id", "must be a string");
  sample.problem_id = prob.get<std::string>();

  const json& sid = require("sample_id");
  if (!sid.is_number_integer() || sid.get<int64_t>() < 0) {
    schema_error(path, line_no, "sample_id", "must be an integer >= 0");
  }
  sample.sample_id = sid.get<int64_t>();

  const json& mode = require("decode_mode");
  if (!mode.is_string() || (mode != "greedy" && mode != "sampled")) {
    schema_error(path, line_no, "decode_mode",
                 "must be \"greedy\" or \"sampled\"");
  }
  sample.decode_mode =
      mode == "greedy" ? DecodeMode::Greedy : DecodeMode::Sampled;

  const json& text = require("text");
  if (!text.is_string()) schema_error(path, line_no, "text", "must be a string");
  sample.text = text.get<std::string>();

  if (auto it = rec.find("temperature"); it != rec.end()) {
    if (!it->is_number() || it->get<double>() < 0.0) {
      schema_error(path, line_no, "temperature", "must be a number >= 0");
    }
    sample.temperature = it->get<double>();
  }
  if (sample.decode_mode == DecodeMode::Greedy && sample.temperature &&
      *sample.temperature != 0.0) {
    schema_error(path, line_no, "temperature",
                 "greedy records must omit temperature or give 0");
  }

  if (auto it = rec.find("model_tokens"); it != rec.end()) {
    if (!it->is_array()) {
      schema_error(path, line_no, "model_tokens", "must be an array of strings");
    }
    std::vector<std::string> toks;
    for (const json& t : *it) {
      if (!t.is_string()) {
        schema_error(path, line_no, "model_tokens",
                     "must be an array of strings");
      }
      toks.push_back(t.get<std::string>());
    }
    sample.model_tokens = std::move(toks);
  }

  if (auto it = rec.find("logprobs"); it != rec.end()) {
    if (!it->is_array()) {
      schema_error(path, line_no, "logprobs", "must be an array of numbers");
    }
    if (!sample.model_tokens) {
      schema_error(path, line_no, "logprobs",
                   "requires model_tokens to declare the token count");
    }
    std::vector<double> lps;
    for (const json& v : *it) {
      if (!v.is_number()) {
        schema_error(path, line_no, "logprobs", "must be an array of numbers");
      }
      const double lp = v.get<double>();
      if (lp > 0.0) {
        schema_error(path, line_no, "logprobs",
                     "log-probabilities must be <= 0");
      }
      lps.push_back(lp);
    }
    if (lps.size() != sample.model_tokens->size()) {
      schema_error(path, line_no, "logprobs",
                   "length " + std::to_string(lps.size()) +
                       " does not match declared token count " +
                       std::to_string(sample.model_tokens->size()));
    }
    sample.logprobs = std::move(lps);
  }

  if (auto it = rec.find("pass_syntax"); it != rec.end()) {
    if (!it->is_boolean())
      schema_error(path, line_no, "pass_syntax", "must be a boolean");
    sample.pass_syntax = it->get<bool>();
  }
  if (auto it = rec.find("pass_func"); it != rec.end()) {
    if (!it->is_boolean())
      schema_error(path, line_no, "pass_func", "must be a boolean");
    sample.pass_func = it->get<bool>();
    if (!sample.pass_syntax.has_value()) {
      schema_error(path, line_no, "pass_func", "requires pass_syntax");
    }
    if (*sample.pass_func && !*sample.pass_syntax) {
      schema_error(path, line_no, "pass_func",
                   "a functionally passing sample must pass syntax");
    }
  }
  return sample;
}

ordered_json record_to_json(const InferenceSample& sample) {
  ordered_json rec;
  rec["benchmark_id"] = sample.benchmark_id;
  rec["problem_id"] = sample.problem_id;
  rec["sample_id"] = sample.sample_id;
  rec["decode_mode"] =
      sample.decode_mode == DecodeMode::Greedy ? "greedy" : "sampled";
  if (sample.temperature) rec["temperature"] = *sample.temperature;
  rec["text"] = sample.text;
  if (sample.model_tokens) rec["model_tokens"] = *sample.model_tokens;
  if (sample.logprobs) rec["logprobs"] = *sample.logprobs;
  if (sample.pass_syntax) rec["pass_syntax"] = *sample.pass_syntax;
  if (sample.pass_func) rec["pass_func"] = *sample.pass_func;
  return rec;
}

}  // namespace

std::vector<InferenceSample> parse_inference_log(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error::data("cannot open inference log: " + path);

  std::vector<InferenceSample> records;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::parse_error& e) {
      throw Error::data(path + ":" + std::to_string(line_no) +
                        ": invalid JSON: " + e.what());
    }
    records.push_back(parse_record(path, line_no, rec));
  }
  return records;
}

std::vector<ProblemBundle> group_records(std::vector<InferenceSample> records,
                                         const LexOptions& lex_options) {
  std::map<std::pair<std::string, std::string>, ProblemBundle> bundles;
  std::map<std::pair<std::string, std::string>, std::set<int64_t>> seen_ids;
  std::set<std::pair<std::string, std::string>> have_greedy;

  for (InferenceSample& record : records) {
    record.tokens = lex(record.text, lex_options);
    const auto key = std::make_pair(record.benchmark_id, record.problem_id);
    auto& bundle = bundles[key];
    bundle.benchmark_id = record.benchmark_id;
    bundle.problem_id = record.problem_id;
    if (!seen_ids[key].insert(record.sample_id).second) {
      throw Error::data("duplicate sample_id " +
                        std::to_string(record.sample_id) + " for problem " +
                        record.problem_id);
    }
    if (record.decode_mode == DecodeMode::Greedy) {
      if (!have_greedy.insert(key).second) {
        throw Error::data("more than one greedy record for problem " +
                          record.problem_id);
      }
      bundle.greedy = std::move(record);
    } else {
      bundle.samples.push_back(std::move(record));
    }
  }

  std::vector<std::string> missing_greedy;
  std::vector<std::string> missing_samples;
  std::vector<ProblemBundle> out;
  out.reserve(bundles.size());
  for (auto& [key, bundle] : bundles) {
    if (!have_greedy.contains(key)) missing_greedy.push_back(key.second);
    if (bundle.samples.empty()) missing_samples.push_back(key.second);
    std::sort(bundle.samples.begin(), bundle.samples.end(),
              [](const InferenceSample& a, const InferenceSample& b) {
                return a.sample_id < b.sample_id;
              });
    out.push_back(std::move(bundle));
  }
  auto join = [](const std::vector<std::string>& ids) {
    std::string s;
    for (const std::string& id : ids) s += (s.empty() ? "" : ", ") + id;
    return s;
  };
  if (!missing_greedy.empty()) {
    throw Error::data("no greedy record for problem(s): " +
                      join(missing_greedy));
  }
  if (!missing_samples.empty()) {
    throw Error::data("no sampled completions for problem(s): " +
                      join(missing_samples));
  }
  return out;
}

std::vector<ProblemBundle> load_inference_log(const std::string& path,
                                              const LexOptions& lex_options) {
  return group_records(parse_inference_log(path), lex_options);
}

void write_inference_log(std::span<const InferenceSample> records,
                         const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error::data("cannot write inference log: " + path);
  for (const InferenceSample& record : records) {
    out << record_to_json(record).dump() << '\n';
  }
  if (!out) throw Error::data("write failed: " + path);
}

BenchmarkManifest load_manifest(const std::string& path,
                                std::string benchmark_id) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error::data("cannot open benchmark manifest: " + path);

  BenchmarkManifest manifest;
  manifest.benchmark_id =
      benchmark_id.empty() ? fs::path(path).stem().string()
                           : std::move(benchmark_id);

  const fs::path base = fs::path(path).parent_path();
  std::set<std::string> ids;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::parse_error& e) {
      throw Error::data(path + ":" + std::to_string(line_no) +
                        ": invalid JSON: " + e.what());
    }
    auto get_string = [&](const char* field) -> std::string {
      auto it = rec.find(field);
      if (it == rec.end() || !it->is_string()) {
        schema_error(path, line_no, field, "missing or not a string");
      }
      return it->get<std::string>();
    };
    ManifestEntry entry;
    entry.problem_id = get_string("problem_id");
    if (!ids.insert(entry.problem_id).second) {
      schema_error(path, line_no, "problem_id",
                   "duplicate problem id '" + entry.problem_id + "'");
    }
    auto resolve = [&](const std::string& p) {
      fs::path candidate(p);
      return candidate.is_absolute() ? candidate.string()
                                     : (base / candidate).string();
    };
    entry.prompt_path = resolve(get_string("prompt_path"));
    entry.golden_path = resolve(get_string("golden_path"));
    for (const std::string& ref : {entry.prompt_path, entry.golden_path}) {
      if (!fs::exists(ref)) {
        schema_error(path, line_no, "path",
                     "referenced file does not exist: " + ref);
      }
    }
    manifest.problems.push_back(std::move(entry));
  }
  std::sort(manifest.problems.begin(), manifest.problems.end(),
            [](const ManifestEntry& a, const ManifestEntry& b) {
              return a.problem_id < b.problem_id;
            });
  return manifest;
}

std::vector<CorpusDoc> load_corpus(const std::string& directory,
                                   const LexOptions& lex_options,
                                   const CorpusOptions& options) {
  const fs::path root(directory);
  if (!fs::is_directory(root)) {
    throw Error::data("corpus directory does not exist: " + directory);
  }

  std::vector<CorpusDoc> docs;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (entry.is_directory()) continue;
    const std::string ext = entry.path().extension().string();
    if (std::find(options.extensions.begin(), options.extensions.end(), ext) ==
        options.extensions.end()) {
      continue;
    }
    // Anything matching the filter must be readable; no silent skips
    // (read_text_file errors on dangling links and unreadable files).
    CorpusDoc doc;
    doc.path = entry.path().string();
    doc.doc_id = fs::relative(entry.path(), root).generic_string();
    doc.tokens = lex(read_text_file(doc.path), lex_options);
    docs.push_back(std::move(doc));
  }
  std::sort(docs.begin(), docs.end(),
            [](const CorpusDoc& a, const CorpusDoc& b) {
              return a.doc_id < b.doc_id;
            });
  if (docs.empty()) {
    std::cerr << "warning: corpus " << directory
              << " matched no files (extensions:";
    for (const std::string& ext : options.extensions) std::cerr << ' ' << ext;
    std::cerr << ")\n";
  }
  return docs;
}

}  // namespace vcaudit
