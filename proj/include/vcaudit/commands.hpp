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

#ifndef VCAUDIT_COMMANDS_HPP
#define VCAUDIT_COMMANDS_HPP

#include <string>
#include <vector>

#include "vcaudit/config.hpp"
#include "vcaudit/report.hpp"
#include "vcaudit/synth.hpp"

namespace vcaudit {

// Command drivers compose the library into the standard experiments. Each
// returns a fully-computed report; nothing is written until computation
// succeeded (all-or-nothing per invocation). Reports embed the effective
// config and a digest manifest of every input, so identical invocations
// produce byte-identical files.

// Per (model, benchmark): CDD and Min-K contamination rates with their bands
// plus pass@k columns per label, and a per-problem verdict table.
Report cmd_audit(const AuditConfig& config);

// Contamination rate across the threshold grid, per model and benchmark.
Report cmd_sweep(const AuditConfig& config, DetectorMethod method);

// Top-1 fingerprint containment of benchmark golden solutions against each
// corpus, with per-corpus means.
Report cmd_similarity(const AuditConfig& config);

// TED tau-sweep: mitigation rate and before/after pass@k per tau grid point.
Report cmd_mitigate(const AuditConfig& config);

// Generates a synthetic log (written to output_dir together with its ground
// truth) and scores both detectors against the ground truth.
Report cmd_synth(const AuditConfig& config, const SynthSpec& spec);

// Re-renders a structured report (tabular output path derived by caller).
Report cmd_report(const std::string& structured_report_path);

// Writes the report in the formats the config selects; returns the paths
// written. Tabular output is one CSV per table ("<stem>_<table>.csv").
std::vector<std::string> emit_report(const Report& report,
                                     const AuditConfig& config,
                                     const std::string& stem);

}  // namespace vcaudit

#endif  // VCAUDIT_COMMANDS_HPP
