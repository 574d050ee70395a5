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

#ifndef VCAUDIT_REPORT_HPP
#define VCAUDIT_REPORT_HPP

#include <string>
#include <utility>
#include <vector>

namespace vcaudit {

// Reports hold pre-formatted cells so that both output formats are
// byte-deterministic: identical inputs produce identical files. Rates are
// percentages with two decimals ("4.00"), scores six ("0.606531").

struct ReportTable {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  bool operator==(const ReportTable&) const = default;
};

struct Report {
  std::string title;
  // Insertion-ordered; keys unique by construction.
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<ReportTable> tables;

  bool operator==(const Report&) const = default;

  void add_meta(std::string key, std::string value) {
    metadata.emplace_back(std::move(key), std::move(value));
  }
};

enum class ReportFormat { Structured, Tabular };

// Structured: one JSON document (title, metadata, tables), stable key order.
// Tabular: CSV; a single table is a plain header+rows file, multiple tables
// become "# table: <name>" sections separated by blank lines.
void write_report(const Report& report, ReportFormat format,
                  const std::string& path);

// Reads a structured report back; round-trips write_report exactly.
Report read_report(const std::string& path);

std::string format_percent(double value);    // "%.2f"
std::string format_score(double value);      // "%.6f"
std::string format_threshold(double value);  // "%.4f"

// The not-applicable cell marker (e.g. a mitigation rate with a vacuous
// denominator is reported absent, never as a number).
inline constexpr const char* kNotApplicable = "na";

}  // namespace vcaudit

#endif  // VCAUDIT_REPORT_HPP
