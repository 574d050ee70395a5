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

#include "vcaudit/commands.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

#include <json.hpp>

#include "vcaudit/error.hpp"
#include "vcaudit/ingest.hpp"
#include "vcaudit/metrics.hpp"
#include "vcaudit/mitigation.hpp"
#include "vcaudit/util.hpp"

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace vcaudit {
namespace {

constexpr const char* kToolVersion = "vcaudit 0.1.0";

void add_common_metadata(Report& report, const AuditConfig& config,
                         const std::string& command) {
  report.add_meta("tool", kToolVersion);
  report.add_meta("command", command);
  report.add_meta("config", config_to_json(config));
  report.add_meta("note.cdd_tokens",
                  "distances computed over lexer tokens recomputed from text");
  report.add_meta("note.flag_comparison",
                  "closed thresholds: flagged iff score >= threshold");
  report.add_meta("note.mitigation_rate",
                  "share of problems flagged before filtering that are "
                  "unflagged after");
}

void add_input_digest(Report& report, const std::string& key,
                      const std::string& path) {
  report.add_meta("input." + key, path + " fnv64:" + to_hex64(digest_file(path)));
}

std::map<std::string, std::vector<ProblemBundle>> by_benchmark(
    std::vector<ProblemBundle> bundles) {
  std::map<std::string, std::vector<ProblemBundle>> grouped;
  for (ProblemBundle& bundle : bundles) {
    grouped[bundle.benchmark_id].push_back(std::move(bundle));
  }
  return grouped;
}

std::string sample_count_cell(const std::vector<ProblemBundle>& bundles) {
  size_t lo = bundles.front().samples.size();
  size_t hi = lo;
  for (const ProblemBundle& bundle : bundles) {
    lo = std::min(lo, bundle.samples.size());
    hi = std::max(hi, bundle.samples.size());
  }
  return lo == hi ? std::to_string(lo)
                  : std::to_string(lo) + "-" + std::to_string(hi);
}

// Pass-rate cells for one (group, label): "na" when the label is entirely
// absent (warned), loud errors when coverage is only partial.
std::vector<std::string> pass_cells(const std::string& model_id,
                                    const std::string& benchmark_id,
                                    const std::vector<ProblemBundle>& bundles,
                                    PassLabel label,
                                    const std::vector<int64_t>& ks) {
  std::vector<PassStats> stats;
  stats.reserve(bundles.size());
  int64_t labeled = 0;
  for (const ProblemBundle& bundle : bundles) {
    stats.push_back(collect_pass_stats(bundle, label));
    labeled += stats.back().n;
  }
  std::vector<std::string> cells;
  if (labeled == 0) {
    std::cerr << "warning: " << model_id << "/" << benchmark_id << ": no "
              << pass_label_name(label)
              << " labels in the log; pass columns reported as "
              << kNotApplicable << "\n";
    for (size_t i = 0; i < ks.size(); ++i) {
      cells.push_back(kNotApplicable);
      cells.push_back(kNotApplicable);
    }
    return cells;
  }
  for (const PassStats& s : stats) {
    if (s.n == 0) {
      throw Error::data(model_id + "/" + benchmark_id + ": problem " +
                        s.problem_id + " has no " +
                        std::string(pass_label_name(label)) +
                        "-labeled samples");
    }
  }
  for (int64_t k : ks) {
    const double rate = benchmark_pass_rate(stats, k, label);
    cells.push_back(format_percent(rate));
    cells.push_back(std::string(pass_band(rate)));
  }
  return cells;
}

void write_truth_file(const SynthTruth& truth, const std::string& path) {
  ordered_json doc;
  ordered_json problems = ordered_json::object();
  for (const auto& [problem_id, dirty] : truth.contaminated) {
    ordered_json entry;
    entry["contaminated"] = dirty;
    ordered_json ids = ordered_json::array();
    if (auto it = truth.memorized_sample_ids.find(problem_id);
        it != truth.memorized_sample_ids.end()) {
      for (int64_t id : it->second) ids.push_back(id);
    }
    entry["memorized_sample_ids"] = std::move(ids);
    problems[problem_id] = std::move(entry);
  }
  doc["problems"] = std::move(problems);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error::data("cannot write ground truth: " + path);
  out << doc.dump(2) << '\n';
}

}  // namespace

Report cmd_audit(const AuditConfig& config) {
  validate_config(config);
  if (config.logs.empty()) {
    throw Error::usage("audit: no inference logs configured");
  }

  Report report;
  report.title = "contamination audit";
  add_common_metadata(report, config, "audit");
  for (const LogSource& log : config.logs) {
    add_input_digest(report, "log." + log.model_id, log.path);
  }

  ReportTable summary;
  summary.name = "contamination";
  summary.columns = {"model",    "benchmark", "problems",  "samples",
                     "cdd_rate", "cdd_band",  "mink_rate", "mink_band"};
  for (int64_t k : config.pass_k) {
    for (PassLabel label : {PassLabel::Syntax, PassLabel::Func}) {
      const std::string base =
          "pass_" + std::string(pass_label_name(label)) + "@" +
          std::to_string(k);
      summary.columns.push_back(base);
      summary.columns.push_back(base + "_band");
    }
  }

  ReportTable problems;
  problems.name = "problems";
  problems.columns = {"model",    "benchmark",   "problem_id", "n",
                      "cdd_rho",  "cdd_flagged", "mink_score", "mink_flagged"};

  for (const LogSource& log : config.logs) {
    auto grouped = by_benchmark(load_inference_log(log.path, config.lex));
    for (const auto& [benchmark_id, bundles] : grouped) {
      std::vector<DetectorVerdict> cdd_verdicts, mink_verdicts;
      for (const ProblemBundle& bundle : bundles) {
        cdd_verdicts.push_back(cdd_flag(bundle, config.cdd));
        mink_verdicts.push_back(mink_flag(bundle, config.mink));
      }
      const double cdd_rate = contamination_rate(cdd_verdicts);
      const double mink_rate = contamination_rate(mink_verdicts);

      std::vector<std::string> row = {
          log.model_id,
          benchmark_id,
          std::to_string(bundles.size()),
          sample_count_cell(bundles),
          format_percent(cdd_rate),
          std::string(contamination_band(cdd_rate)),
          format_percent(mink_rate),
          std::string(contamination_band(mink_rate))};
      // Column order interleaves labels per k; compute per label then weave.
      std::vector<std::string> syntax_cells = pass_cells(
          log.model_id, benchmark_id, bundles, PassLabel::Syntax, config.pass_k);
      std::vector<std::string> func_cells = pass_cells(
          log.model_id, benchmark_id, bundles, PassLabel::Func, config.pass_k);
      for (size_t i = 0; i < config.pass_k.size(); ++i) {
        row.push_back(syntax_cells[2 * i]);
        row.push_back(syntax_cells[2 * i + 1]);
        row.push_back(func_cells[2 * i]);
        row.push_back(func_cells[2 * i + 1]);
      }
      summary.rows.push_back(std::move(row));

      for (size_t i = 0; i < bundles.size(); ++i) {
        problems.rows.push_back(
            {log.model_id, benchmark_id, bundles[i].problem_id,
             std::to_string(bundles[i].samples.size()),
             format_score(cdd_verdicts[i].score),
             cdd_verdicts[i].flagged ? "true" : "false",
             format_score(mink_verdicts[i].score),
             mink_verdicts[i].flagged ? "true" : "false"});
      }
    }
  }

  report.tables.push_back(std::move(summary));
  report.tables.push_back(std::move(problems));
  return report;
}

Report cmd_sweep(const AuditConfig& config, DetectorMethod method) {
  validate_config(config);
  if (config.logs.empty()) {
    throw Error::usage("sweep: no inference logs configured");
  }
  const auto& grid = method == DetectorMethod::Cdd
                         ? config.cdd_alpha_grid
                         : config.mink_threshold_grid;

  Report report;
  report.title =
      "contamination sweep (" + std::string(detector_method_name(method)) + ")";
  add_common_metadata(report, config, "sweep");
  for (const LogSource& log : config.logs) {
    add_input_digest(report, "log." + log.model_id, log.path);
  }

  ReportTable table;
  table.name = "sweep";
  table.columns = {"model", "benchmark", "method", "threshold", "rate"};

  for (const LogSource& log : config.logs) {
    auto grouped = by_benchmark(load_inference_log(log.path, config.lex));
    for (const auto& [benchmark_id, bundles] : grouped) {
      SweepCurve curve = sweep(bundles, method, grid, config.cdd, config.mink,
                               log.model_id, benchmark_id);
      for (size_t i = 0; i < curve.grid.size(); ++i) {
        table.rows.push_back({curve.model_id, curve.benchmark_id,
                              std::string(detector_method_name(method)),
                              format_threshold(curve.grid[i]),
                              format_percent(curve.rates[i])});
      }
    }
  }
  report.tables.push_back(std::move(table));
  return report;
}

Report cmd_similarity(const AuditConfig& config) {
  validate_config(config);
  if (config.benchmarks.empty()) {
    throw Error::usage("similarity: no benchmark manifests configured");
  }
  if (config.corpora.empty()) {
    throw Error::usage("similarity: no corpora configured");
  }

  Report report;
  report.title = "benchmark vs training-corpus similarity";
  add_common_metadata(report, config, "similarity");

  ReportTable top1;
  top1.name = "top1";
  top1.columns = {"benchmark", "corpus", "problem_id", "doc_id", "score"};
  ReportTable summary;
  summary.name = "summary";
  summary.columns = {"benchmark", "corpus", "problems", "mean_top1"};

  // Queries: golden solutions, fingerprinted with the similarity lex options.
  struct BenchQueries {
    std::string benchmark_id;
    std::vector<NamedFingerprint> queries;
  };
  std::vector<BenchQueries> benches;
  for (const BenchmarkSource& source : config.benchmarks) {
    add_input_digest(report, "manifest." + source.benchmark_id,
                     source.manifest_path);
    BenchmarkManifest manifest =
        load_manifest(source.manifest_path, source.benchmark_id);
    BenchQueries bench;
    bench.benchmark_id = manifest.benchmark_id;
    for (const ManifestEntry& entry : manifest.problems) {
      NamedFingerprint query;
      query.id = entry.problem_id;
      query.prints =
          fingerprint(lex(read_text_file(entry.golden_path),
                          config.similarity.lex),
                      config.similarity.fingerprint);
      bench.queries.push_back(std::move(query));
    }
    benches.push_back(std::move(bench));
  }

  for (const CorpusSource& source : config.corpora) {
    CorpusOptions corpus_options;
    corpus_options.extensions = config.similarity.extensions;
    std::vector<CorpusDoc> docs =
        load_corpus(source.path, config.similarity.lex, corpus_options);
    uint64_t corpus_digest = kFnvOffsetBasis;
    std::vector<NamedFingerprint> corpus;
    corpus.reserve(docs.size());
    for (const CorpusDoc& doc : docs) {
      corpus.push_back(
          {doc.doc_id, fingerprint(doc.tokens, config.similarity.fingerprint)});
      corpus_digest = fnv1a64(doc.doc_id, corpus_digest);
      corpus_digest = fnv1a64(to_hex64(digest_file(doc.path)), corpus_digest);
    }
    report.add_meta("input.corpus." + source.corpus_id,
                    source.path + " files:" + std::to_string(docs.size()) +
                        " fnv64:" + to_hex64(corpus_digest));

    for (const BenchQueries& bench : benches) {
      std::vector<SimilarityHit> hits = top1_matches(bench.queries, corpus);
      double sum = 0.0;
      for (const SimilarityHit& hit : hits) {
        sum += hit.score;
        top1.rows.push_back({bench.benchmark_id, source.corpus_id,
                             hit.problem_id, hit.doc_id,
                             format_score(hit.score)});
      }
      summary.rows.push_back(
          {bench.benchmark_id, source.corpus_id,
           std::to_string(hits.size()),
           format_score(hits.empty() ? 0.0
                                     : sum / static_cast<double>(hits.size()))});
    }
  }

  report.tables.push_back(std::move(top1));
  report.tables.push_back(std::move(summary));
  return report;
}

Report cmd_mitigate(const AuditConfig& config) {
  validate_config(config);
  if (config.logs.empty()) {
    throw Error::usage("mitigate: no inference logs configured");
  }

  Report report;
  report.title = "mitigation tau sweep";
  add_common_metadata(report, config, "mitigate");
  for (const LogSource& log : config.logs) {
    add_input_digest(report, "log." + log.model_id, log.path);
  }

  ReportTable rates;
  rates.name = "mitigation_rate";
  rates.columns = {"model",          "benchmark",     "tau",
                   "problems",       "flagged_before", "flagged_after",
                   "mitigation_rate"};
  ReportTable passes;
  passes.name = "pass_rates";
  passes.columns = {"model",       "benchmark",  "tau",  "k",
                    "label",       "rate_before", "rate_after", "drop"};

  for (const LogSource& log : config.logs) {
    auto grouped = by_benchmark(load_inference_log(log.path, config.lex));
    for (const auto& [benchmark_id, bundles] : grouped) {
      // Before-stats and label coverage are tau-independent.
      std::map<PassLabel, std::vector<PassStats>> before;
      std::map<PassLabel, bool> labeled;
      for (PassLabel label : {PassLabel::Syntax, PassLabel::Func}) {
        int64_t total = 0;
        for (const ProblemBundle& bundle : bundles) {
          before[label].push_back(collect_pass_stats(bundle, label));
          total += before[label].back().n;
        }
        labeled[label] = total > 0;
        if (!labeled[label]) {
          std::cerr << "warning: " << log.model_id << "/" << benchmark_id
                    << ": no " << pass_label_name(label)
                    << " labels; pass rows reported as " << kNotApplicable
                    << "\n";
        }
      }

      for (double tau : config.tau_grid) {
        TedParams ted = config.ted;
        ted.tau_percent = tau;
        ted.alpha_rank = config.cdd.alpha;

        std::vector<MitigationOutcome> outcomes;
        outcomes.reserve(bundles.size());
        for (const ProblemBundle& bundle : bundles) {
          outcomes.push_back(ted_filter(bundle, ted, config.cdd));
        }
        size_t flagged_before = 0, flagged_after = 0;
        for (const MitigationOutcome& outcome : outcomes) {
          flagged_before += outcome.verdict_before.flagged ? 1 : 0;
          flagged_after += outcome.verdict_after.flagged ? 1 : 0;
        }
        std::optional<double> rate = mitigation_rate(outcomes);
        rates.rows.push_back(
            {log.model_id, benchmark_id, format_threshold(tau),
             std::to_string(outcomes.size()), std::to_string(flagged_before),
             std::to_string(flagged_after),
             rate ? format_percent(*rate) : std::string(kNotApplicable)});

        for (int64_t k : config.pass_k) {
          for (PassLabel label : {PassLabel::Syntax, PassLabel::Func}) {
            std::string cell_before = kNotApplicable;
            std::string cell_after = kNotApplicable;
            std::string cell_drop = kNotApplicable;
            if (labeled[label]) {
              std::vector<PassStats> after;
              after.reserve(outcomes.size());
              for (const MitigationOutcome& outcome : outcomes) {
                after.push_back(
                    collect_pass_stats(outcome.surviving, label));
              }
              try {
                AccuracyDrop drop =
                    accuracy_drop(before[label], after, k, label);
                cell_before = format_percent(drop.rate_before);
                cell_after = format_percent(drop.rate_after);
                cell_drop = format_percent(drop.drop);
              } catch (const Error& e) {
                std::cerr << "warning: " << log.model_id << "/" << benchmark_id
                          << " tau=" << format_threshold(tau) << " pass@"
                          << k << " (" << pass_label_name(label)
                          << "): " << e.what() << "; reported as "
                          << kNotApplicable << "\n";
              }
            }
            passes.rows.push_back({log.model_id, benchmark_id,
                                   format_threshold(tau), std::to_string(k),
                                   std::string(pass_label_name(label)),
                                   cell_before, cell_after, cell_drop});
          }
        }
      }
    }
  }

  report.tables.push_back(std::move(rates));
  report.tables.push_back(std::move(passes));
  return report;
}

Report cmd_synth(const AuditConfig& config, const SynthSpec& spec) {
  validate(spec);
  try {
    validate(config.cdd);
    validate(config.mink);
  } catch (const Error& e) {
    throw Error::usage(e.what());
  }

  SynthResult result = generate(spec);
  std::vector<ProblemBundle> bundles =
      group_records(result.records, config.lex);

  std::vector<DetectorVerdict> cdd_verdicts, mink_verdicts;
  for (const ProblemBundle& bundle : bundles) {
    cdd_verdicts.push_back(cdd_flag(bundle, config.cdd));
    mink_verdicts.push_back(mink_flag(bundle, config.mink));
  }
  const DetectorScore cdd_score = score_detector(cdd_verdicts, result.truth);
  const DetectorScore mink_score_ = score_detector(mink_verdicts, result.truth);

  fs::create_directories(config.output_dir);
  const std::string log_path =
      (fs::path(config.output_dir) / "synth_log.jsonl").string();
  const std::string truth_path =
      (fs::path(config.output_dir) / "synth_truth.json").string();
  write_inference_log(result.records, log_path);
  write_truth_file(result.truth, truth_path);

  size_t positives = 0;
  for (const auto& [id, dirty] : result.truth.contaminated) {
    positives += dirty ? 1 : 0;
  }
  const double true_rate = 100.0 * static_cast<double>(positives) /
                           static_cast<double>(result.truth.contaminated.size());

  Report report;
  report.title = "synthetic detector scorecard";
  add_common_metadata(report, config, "synth");
  ordered_json spec_echo = {
      {"seed", spec.seed},
      {"problem_count", spec.problem_count},
      {"vocab_size", spec.vocab_size},
      {"solution_len", spec.solution_len},
      {"memorization_fraction", spec.memorization_fraction},
      {"memorized_emit_prob", spec.memorized_emit_prob},
      {"edit_noise", spec.edit_noise},
      {"samples_per_problem", spec.samples_per_problem}};
  report.add_meta("synth.spec", spec_echo.dump());
  report.add_meta("output.log", log_path);
  report.add_meta("output.truth", truth_path);

  ReportTable table;
  table.name = "scorecard";
  table.columns = {"detector",  "problems", "flagged",   "precision",
                   "recall",    "measured_rate", "true_rate", "rate_error"};
  auto add_row = [&](const std::string& name,
                     const std::vector<DetectorVerdict>& verdicts,
                     const DetectorScore& score) {
    size_t flagged = 0;
    for (const DetectorVerdict& v : verdicts) flagged += v.flagged ? 1 : 0;
    table.rows.push_back({name, std::to_string(verdicts.size()),
                          std::to_string(flagged), format_score(score.precision),
                          format_score(score.recall),
                          format_percent(contamination_rate(verdicts)),
                          format_percent(true_rate),
                          format_percent(score.recovered_rate_error)});
  };
  add_row("cdd", cdd_verdicts, cdd_score);
  add_row("mink", mink_verdicts, mink_score_);
  report.tables.push_back(std::move(table));
  return report;
}

Report cmd_report(const std::string& structured_report_path) {
  if (!fs::exists(structured_report_path)) {
    throw Error::usage("report: input does not exist: " +
                       structured_report_path);
  }
  return read_report(structured_report_path);
}

std::vector<std::string> emit_report(const Report& report,
                                     const AuditConfig& config,
                                     const std::string& stem) {
  fs::create_directories(config.output_dir);
  std::vector<std::string> written;
  if (config.write_structured) {
    const std::string path =
        (fs::path(config.output_dir) / (stem + ".json")).string();
    write_report(report, ReportFormat::Structured, path);
    written.push_back(path);
  }
  if (config.write_tabular) {
    for (const ReportTable& table : report.tables) {
      Report single;
      single.title = report.title;
      single.tables.push_back(table);
      const std::string path =
          (fs::path(config.output_dir) / (stem + "_" + table.name + ".csv"))
              .string();
      write_report(single, ReportFormat::Tabular, path);
      written.push_back(path);
    }
  }
  return written;
}

}  // namespace vcaudit
