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

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vcaudit/commands.hpp"
#include "vcaudit/error.hpp"

namespace fs = std::filesystem;
using namespace vcaudit;

namespace {

// "id=path" pairs; a bare path gets its stem as id.
std::pair<std::string, std::string> split_source(const std::string& arg) {
  const auto eq = arg.find('=');
  if (eq == std::string::npos) {
    return {fs::path(arg).stem().string(), arg};
  }
  return {arg.substr(0, eq), arg.substr(eq + 1)};
}

int run(int argc, char** argv) {
  CLI::App app{"Contamination auditing for Verilog code-generation "
               "benchmarks: repetition-peakedness and rare-token-probability "
               "detectors, fingerprint similarity, TED-style mitigation, and "
               "pass@k reporting over inference logs."};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  std::string config_path;
  std::string out_dir;
  std::string format;
  std::vector<std::string> log_args, manifest_args, corpus_args;
  double alpha = 0.0, xi = 0.0, mink_k = 0.0, mink_threshold = 0.0, tau = 0.0;
  bool dedup = true;
  bool normalize_ids = false, fold_numbers = false;
  std::vector<int64_t> pass_k;
  std::vector<double> grid, tau_grid;

  app.add_option("--config", config_path,
                 "JSON configuration file; flags override its values");
  app.add_option("--out", out_dir, "Output directory for report files");
  app.add_option("--format", format,
                 "Report formats: structured, tabular, or both (default)");
  app.add_option("--log", log_args,
                 "Inference log as model=path (repeatable)");
  app.add_option("--manifest", manifest_args,
                 "Benchmark manifest as benchmark=path (repeatable)");
  app.add_option("--corpus", corpus_args,
                 "Training corpus as name=dir (repeatable)");
  app.add_option("--alpha", alpha, "CDD similarity radius (default 0.05)");
  app.add_option("--xi", xi, "CDD peakedness decision threshold (default 0.02)");
  app.add_option("--mink-k", mink_k, "Min-K percentage (default 20)");
  app.add_option("--mink-threshold", mink_threshold,
                 "Min-K decision threshold (default 0.55)");
  app.add_option("--tau", tau, "TED top-percentage exclusion (default 50)");
  app.add_flag("--dedup,!--no-dedup", dedup,
               "Deduplicate identical completions before exclusion");
  app.add_flag("--normalize-identifiers", normalize_ids,
               "Alias identifiers positionally in the distance pipeline");
  app.add_flag("--fold-numbers", fold_numbers,
               "Fold numeric literals to NUM in the distance pipeline");
  app.add_option("--k", pass_k, "pass@k values (default 1 5 15)");
  app.add_option("--grid", grid, "Sweep threshold grid (sweep command)");
  app.add_option("--tau-grid", tau_grid, "Tau grid (mitigate command)");

  CLI::App* cmd_audit_app = app.add_subcommand(
      "audit", "Per model and benchmark: contamination rates and pass rates");
  CLI::App* cmd_sweep_app = app.add_subcommand(
      "sweep", "Contamination rate across a detector threshold grid");
  std::string method = "cdd";
  cmd_sweep_app->add_option("--method", method, "Detector: cdd or mink")
      ->check(CLI::IsMember({"cdd", "mink"}));
  CLI::App* cmd_similarity_app = app.add_subcommand(
      "similarity",
      "Top-1 fingerprint containment of golden solutions in corpora");
  CLI::App* cmd_mitigate_app = app.add_subcommand(
      "mitigate", "TED tau sweep: mitigation rate and pass@k before/after");
  CLI::App* cmd_synth_app = app.add_subcommand(
      "synth", "Generate a synthetic log with ground truth and score the "
               "detectors against it");
  SynthSpec spec;
  spec.problem_count = 50;
  spec.vocab_size = 64;
  spec.solution_len = 128;
  spec.samples_per_problem = 50;
  spec.memorization_fraction = 0.3;
  spec.memorized_emit_prob = 1.0;
  spec.edit_noise = 0.3;
  cmd_synth_app->add_option("--seed", spec.seed, "RNG seed (default 0)");
  cmd_synth_app->add_option("--problems", spec.problem_count,
                            "Problem count (default 50)");
  cmd_synth_app->add_option("--vocab", spec.vocab_size,
                            "Vocabulary size (default 64)");
  cmd_synth_app->add_option("--len", spec.solution_len,
                            "Solution length in tokens (default 128)");
  cmd_synth_app->add_option("--samples", spec.samples_per_problem,
                            "Samples per problem (default 50)");
  cmd_synth_app->add_option("--fraction", spec.memorization_fraction,
                            "Fraction of contaminated problems (default 0.3)");
  cmd_synth_app->add_option("--emit-prob", spec.memorized_emit_prob,
                            "Canonical-emission probability (default 1.0)");
  cmd_synth_app->add_option("--noise", spec.edit_noise,
                            "Per-token substitution probability (default 0.3)");
  CLI::App* cmd_report_app = app.add_subcommand(
      "report", "Re-render a structured report to tabular files");
  std::string report_input;
  cmd_report_app->add_option("--input", report_input, "Structured report JSON")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e);
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  AuditConfig config =
      config_path.empty() ? default_config() : load_config(config_path);

  // Flags win over the config file.
  for (const std::string& arg : log_args) {
    auto [id, path] = split_source(arg);
    config.logs.push_back({id, path});
  }
  for (const std::string& arg : manifest_args) {
    auto [id, path] = split_source(arg);
    config.benchmarks.push_back({id, path});
  }
  for (const std::string& arg : corpus_args) {
    auto [id, path] = split_source(arg);
    config.corpora.push_back({id, path});
  }
  if (app.count("--out")) config.output_dir = out_dir;
  if (app.count("--format")) {
    config.write_structured = format == "structured" || format == "both";
    config.write_tabular = format == "tabular" || format == "both";
    if (!config.write_structured && !config.write_tabular) {
      throw Error::usage("unknown --format '" + format +
                         "' (structured|tabular|both)");
    }
  }
  if (app.count("--alpha")) config.cdd.alpha = alpha;
  if (app.count("--xi")) config.cdd.xi = xi;
  if (app.count("--mink-k")) config.mink.k_percent = mink_k;
  if (app.count("--mink-threshold")) config.mink.threshold = mink_threshold;
  if (app.count("--tau")) config.ted.tau_percent = tau;
  if (app.count("--dedup") || app.count("--no-dedup")) config.ted.dedup = dedup;
  if (app.count("--normalize-identifiers")) {
    config.lex.normalize_identifiers = normalize_ids;
  }
  if (app.count("--fold-numbers")) {
    config.lex.fold_numeric_literals = fold_numbers;
  }
  if (app.count("--k")) config.pass_k = pass_k;
  if (app.count("--grid")) {
    config.cdd_alpha_grid = grid;
    config.mink_threshold_grid = grid;
  }
  if (app.count("--tau-grid")) config.tau_grid = tau_grid;

  Report report;
  std::string stem;
  if (cmd_audit_app->parsed()) {
    report = cmd_audit(config);
    stem = "audit";
  } else if (cmd_sweep_app->parsed()) {
    const DetectorMethod m =
        method == "cdd" ? DetectorMethod::Cdd : DetectorMethod::Mink;
    report = cmd_sweep(config, m);
    stem = "sweep_" + method;
  } else if (cmd_similarity_app->parsed()) {
    report = cmd_similarity(config);
    stem = "similarity";
  } else if (cmd_mitigate_app->parsed()) {
    report = cmd_mitigate(config);
    stem = "mitigate";
  } else if (cmd_synth_app->parsed()) {
    report = cmd_synth(config, spec);
    stem = "synth";
  } else if (cmd_report_app->parsed()) {
    report = cmd_report(report_input);
    config.write_structured = false;  // re-render tabular only
    config.write_tabular = true;
    stem = fs::path(report_input).stem().string();
  } else {
    throw Error::usage("no command given");
  }

  for (const std::string& path : emit_report(report, config, stem)) {
    std::cout << path << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const Error& e) {
    switch (e.kind()) {
      case ErrorKind::Usage:
        std::cerr << "usage error: " << e.what() << std::endl;
        return 1;
      case ErrorKind::Data:
        std::cerr << "data error: " << e.what() << std::endl;
        return 2;
      case ErrorKind::Internal:
        break;
    }
    std::cerr << "internal error: " << e.what() << std::endl;
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << std::endl;
    return 3;
  }
}
