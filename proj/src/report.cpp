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

#include "vcaudit/report.hpp"

#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "vcaudit/error.hpp"
#include "vcaudit/util.hpp"

using ordered_json = nlohmann::ordered_json;

namespace vcaudit {
namespace {

std::string csv_escape(const std::string& cell) {
  if (cell.find_first_of(",\"\n\r") == std::string::npos) return cell;
  std::string quoted = "\"";
  for (char c : cell) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

void write_table_csv(std::ofstream& out, const ReportTable& table) {
  for (size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out << ',';
    out << csv_escape(table.columns[i]);
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << csv_escape(row[i]);
    }
    out << '\n';
  }
}

std::string fixed(double value, const char* fmt) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), fmt, value);
  return std::string(buf);
}

}  // namespace

void write_report(const Report& report, ReportFormat format,
                  const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error::data("cannot write report: " + path);

  if (format == ReportFormat::Structured) {
    ordered_json doc;
    doc["title"] = report.title;
    ordered_json meta = ordered_json::object();
    for (const auto& [key, value] : report.metadata) meta[key] = value;
    doc["metadata"] = std::move(meta);
    ordered_json tables = ordered_json::array();
    for (const ReportTable& table : report.tables) {
      ordered_json t;
      t["name"] = table.name;
      t["columns"] = table.columns;
      t["rows"] = table.rows;
      tables.push_back(std::move(t));
    }
    doc["tables"] = std::move(tables);
    out << doc.dump(2) << '\n';
  } else {
    if (report.tables.size() == 1) {
      write_table_csv(out, report.tables.front());
    } else {
      bool first = true;
      for (const ReportTable& table : report.tables) {
        if (!first) out << '\n';
        first = false;
        out << "# table: " << table.name << '\n';
        write_table_csv(out, table);
      }
    }
  }
  if (!out) throw Error::data("write failed: " + path);
}

Report read_report(const std::string& path) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(read_text_file(path));
  } catch (const ordered_json::parse_error& e) {
    throw Error::data("report " + path + " is not valid JSON: " + e.what());
  }
  Report report;
  try {
    report.title = doc.at("title").get<std::string>();
    for (const auto& [key, value] : doc.at("metadata").items()) {
      report.add_meta(key, value.get<std::string>());
    }
    for (const auto& t : doc.at("tables")) {
      ReportTable table;
      table.name = t.at("name").get<std::string>();
      table.columns = t.at("columns").get<std::vector<std::string>>();
      table.rows = t.at("rows").get<std::vector<std::vector<std::string>>>();
      report.tables.push_back(std::move(table));
    }
  } catch (const ordered_json::exception& e) {
    throw Error::data("report " + path + " has unexpected shape: " + e.what());
  }
  return report;
}

std::string format_percent(double value) { return fixed(value, "%.2f"); }
std::string format_score(double value) { return fixed(value, "%.6f"); }
std::string format_threshold(double value) { return fixed(value, "%.4f"); }

}  // namespace vcaudit
