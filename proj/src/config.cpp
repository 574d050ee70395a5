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

#include "vcaudit/config.hpp"

#include <filesystem>
#include <set>

#include <json.hpp>

#include "vcaudit/error.hpp"
#include "vcaudit/util.hpp"

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace vcaudit {
namespace {

void check_keys(const ordered_json& obj, const std::set<std::string>& allowed,
                const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.contains(key)) {
      throw Error::usage("config: unknown key '" + key + "' in " + where);
    }
  }
}

LexOptions parse_lex(const ordered_json& obj, const std::string& where) {
  check_keys(obj, {"normalize_identifiers", "fold_numeric_literals"}, where);
  LexOptions lex;
  lex.normalize_identifiers = obj.value("normalize_identifiers", false);
  lex.fold_numeric_literals = obj.value("fold_numeric_literals", false);
  return lex;
}

void require_increasing_grid(const std::vector<double>& grid,
                             const std::string& name) {
  if (grid.empty()) throw Error::usage("config: " + name + " grid is empty");
  for (size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i - 1] < grid[i])) {
      throw Error::usage("config: " + name +
                         " grid must be strictly increasing");
    }
  }
}

}  // namespace

std::vector<double> default_unit_grid() {
  std::vector<double> grid;
  for (int i = 0; i <= 20; ++i) grid.push_back(i / 20.0);
  return grid;
}

std::vector<double> default_tau_grid() {
  std::vector<double> grid;
  for (int i = 0; i <= 10; ++i) grid.push_back(10.0 * i);
  return grid;
}

AuditConfig default_config() {
  AuditConfig config;
  config.cdd_alpha_grid = default_unit_grid();
  config.mink_threshold_grid = default_unit_grid();
  config.tau_grid = default_tau_grid();
  return config;
}

AuditConfig load_config(const std::string& path) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(read_text_file(path));
  } catch (const ordered_json::parse_error& e) {
    throw Error::usage("config " + path + " is not valid JSON: " + e.what());
  }
  if (!doc.is_object()) throw Error::usage("config must be a JSON object");

  check_keys(doc,
             {"benchmarks", "logs", "corpora", "lex", "similarity", "cdd",
              "mink", "ted", "pass_k", "grids", "output_dir", "formats"},
             "top level");

  AuditConfig config = default_config();
  const fs::path base = fs::path(path).parent_path();
  auto resolve = [&](const std::string& p) {
    fs::path candidate(p);
    return candidate.is_absolute() ? candidate.string()
                                   : (base / candidate).string();
  };

  if (doc.contains("benchmarks")) {
    for (const auto& b : doc["benchmarks"]) {
      check_keys(b, {"benchmark_id", "manifest"}, "benchmarks[]");
      BenchmarkSource src;
      src.manifest_path = resolve(b.at("manifest").get<std::string>());
      src.benchmark_id =
          b.value("benchmark_id",
                  fs::path(src.manifest_path).stem().string());
      config.benchmarks.push_back(std::move(src));
    }
  }
  if (doc.contains("logs")) {
    for (const auto& l : doc["logs"]) {
      check_keys(l, {"model_id", "path"}, "logs[]");
      LogSource src;
      src.path = resolve(l.at("path").get<std::string>());
      src.model_id = l.value("model_id", fs::path(src.path).stem().string());
      config.logs.push_back(std::move(src));
    }
  }
  if (doc.contains("corpora")) {
    for (const auto& c : doc["corpora"]) {
      check_keys(c, {"corpus_id", "path"}, "corpora[]");
      CorpusSource src;
      src.path = resolve(c.at("path").get<std::string>());
      src.corpus_id =
          c.value("corpus_id", fs::path(src.path).filename().string());
      config.corpora.push_back(std::move(src));
    }
  }
  if (doc.contains("lex")) config.lex = parse_lex(doc["lex"], "lex");
  if (doc.contains("similarity")) {
    const auto& sim = doc["similarity"];
    check_keys(sim,
               {"k_gram", "window", "normalize_identifiers",
                "fold_numeric_literals", "extensions"},
               "similarity");
    config.similarity.fingerprint.k_gram = sim.value("k_gram", size_t{12});
    config.similarity.fingerprint.window = sim.value("window", size_t{8});
    config.similarity.lex.normalize_identifiers =
        sim.value("normalize_identifiers", true);
    config.similarity.lex.fold_numeric_literals =
        sim.value("fold_numeric_literals", false);
    if (sim.contains("extensions")) {
      config.similarity.extensions =
          sim["extensions"].get<std::vector<std::string>>();
    }
  }
  if (doc.contains("cdd")) {
    check_keys(doc["cdd"], {"alpha", "xi"}, "cdd");
    config.cdd.alpha = doc["cdd"].value("alpha", config.cdd.alpha);
    config.cdd.xi = doc["cdd"].value("xi", config.cdd.xi);
  }
  if (doc.contains("mink")) {
    check_keys(doc["mink"], {"k_percent", "threshold"}, "mink");
    config.mink.k_percent =
        doc["mink"].value("k_percent", config.mink.k_percent);
    config.mink.threshold =
        doc["mink"].value("threshold", config.mink.threshold);
  }
  if (doc.contains("ted")) {
    check_keys(doc["ted"], {"tau_percent", "dedup"}, "ted");
    config.ted.tau_percent =
        doc["ted"].value("tau_percent", config.ted.tau_percent);
    config.ted.dedup = doc["ted"].value("dedup", config.ted.dedup);
  }
  if (doc.contains("pass_k")) {
    config.pass_k = doc["pass_k"].get<std::vector<int64_t>>();
  }
  if (doc.contains("grids")) {
    const auto& grids = doc["grids"];
    check_keys(grids, {"cdd_alpha", "mink_threshold", "tau"}, "grids");
    if (grids.contains("cdd_alpha")) {
      config.cdd_alpha_grid = grids["cdd_alpha"].get<std::vector<double>>();
    }
    if (grids.contains("mink_threshold")) {
      config.mink_threshold_grid =
          grids["mink_threshold"].get<std::vector<double>>();
    }
    if (grids.contains("tau")) {
      config.tau_grid = grids["tau"].get<std::vector<double>>();
    }
  }
  if (doc.contains("output_dir")) {
    config.output_dir = resolve(doc["output_dir"].get<std::string>());
  }
  if (doc.contains("formats")) {
    config.write_structured = false;
    config.write_tabular = false;
    for (const auto& f : doc["formats"]) {
      const std::string fmt = f.get<std::string>();
      if (fmt == "structured") {
        config.write_structured = true;
      } else if (fmt == "tabular") {
        config.write_tabular = true;
      } else {
        throw Error::usage("config: unknown format '" + fmt + "'");
      }
    }
  }
  return config;
}

std::string config_to_json(const AuditConfig& config) {
  ordered_json doc;
  ordered_json benches = ordered_json::array();
  for (const auto& b : config.benchmarks) {
    benches.push_back({{"benchmark_id", b.benchmark_id},
                       {"manifest", b.manifest_path}});
  }
  doc["benchmarks"] = std::move(benches);
  ordered_json logs = ordered_json::array();
  for (const auto& l : config.logs) {
    logs.push_back({{"model_id", l.model_id}, {"path", l.path}});
  }
  doc["logs"] = std::move(logs);
  ordered_json corpora = ordered_json::array();
  for (const auto& c : config.corpora) {
    corpora.push_back({{"corpus_id", c.corpus_id}, {"path", c.path}});
  }
  doc["corpora"] = std::move(corpora);
  doc["lex"] = {{"normalize_identifiers", config.lex.normalize_identifiers},
                {"fold_numeric_literals", config.lex.fold_numeric_literals}};
  doc["similarity"] = {
      {"k_gram", config.similarity.fingerprint.k_gram},
      {"window", config.similarity.fingerprint.window},
      {"normalize_identifiers", config.similarity.lex.normalize_identifiers},
      {"fold_numeric_literals", config.similarity.lex.fold_numeric_literals},
      {"extensions", config.similarity.extensions}};
  doc["cdd"] = {{"alpha", config.cdd.alpha}, {"xi", config.cdd.xi}};
  doc["mink"] = {{"k_percent", config.mink.k_percent},
                 {"threshold", config.mink.threshold}};
  doc["ted"] = {{"tau_percent", config.ted.tau_percent},
                {"dedup", config.ted.dedup}};
  doc["pass_k"] = config.pass_k;
  doc["grids"] = {{"cdd_alpha", config.cdd_alpha_grid},
                  {"mink_threshold", config.mink_threshold_grid},
                  {"tau", config.tau_grid}};
  return doc.dump();
}

void validate_config(const AuditConfig& config) {
  std::set<std::string> ids;
  for (const auto& b : config.benchmarks) {
    if (!fs::exists(b.manifest_path)) {
      throw Error::usage("benchmark manifest does not exist: " +
                         b.manifest_path);
    }
    if (!ids.insert("b:" + b.benchmark_id).second) {
      throw Error::usage("duplicate benchmark_id: " + b.benchmark_id);
    }
  }
  for (const auto& l : config.logs) {
    if (!fs::exists(l.path)) {
      throw Error::usage("inference log does not exist: " + l.path);
    }
    if (!ids.insert("l:" + l.model_id).second) {
      throw Error::usage("duplicate model_id: " + l.model_id);
    }
  }
  for (const auto& c : config.corpora) {
    if (!fs::is_directory(c.path)) {
      throw Error::usage("corpus directory does not exist: " + c.path);
    }
    if (!ids.insert("c:" + c.corpus_id).second) {
      throw Error::usage("duplicate corpus_id: " + c.corpus_id);
    }
  }
  try {
    validate(config.cdd);
    validate(config.mink);
    validate(config.ted);
  } catch (const Error& e) {
    throw Error::usage(e.what());
  }
  if (config.similarity.fingerprint.k_gram < 1 ||
      config.similarity.fingerprint.window < 1) {
    throw Error::usage("config: similarity k_gram and window must be >= 1");
  }
  if (config.pass_k.empty()) throw Error::usage("config: pass_k is empty");
  for (int64_t k : config.pass_k) {
    if (k < 1) throw Error::usage("config: pass_k values must be >= 1");
  }
  require_increasing_grid(config.cdd_alpha_grid, "cdd_alpha");
  require_increasing_grid(config.mink_threshold_grid, "mink_threshold");
  require_increasing_grid(config.tau_grid, "tau");
  for (double tau : config.tau_grid) {
    if (!(tau >= 0.0 && tau <= 100.0)) {
      throw Error::usage("config: tau grid values must be in [0, 100]");
    }
  }
}

}  // namespace vcaudit
