// Copyright 2026 The spanalign Authors
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

#include <string>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "spanalign/eval.h"

namespace spanalign {

namespace {

std::string RenderText(const Report& report) {
  std::string out;
  const bool any = !report.span_rows.empty() || !report.pair_rows.empty();
  if (!report.span_rows.empty() || !any) {
    out += fmt::format("{:<24} {:<10} {:>9} {:>12}\n", "Model", "Direction", "F1 score",
                       "Exact Match");
    for (const auto& row : report.span_rows) {
      out += fmt::format("{:<24} {:<10} {:>9.2f} {:>12.2f}\n", row.model, row.direction,
                         row.result.f1, row.result.em);
    }
  }
  if (!report.pair_rows.empty()) {
    if (!out.empty()) out += '\n';
    out += fmt::format("{:<24} {:>9} {:>9} {:>9}\n", "Model", "Precision", "Recall", "F1");
    for (const auto& row : report.pair_rows) {
      out += fmt::format("{:<24} {:>9.1f} {:>9.1f} {:>9.1f}\n", row.model,
                         row.result.precision, row.result.recall, row.result.f1);
    }
  }
  return out;
}

std::string RenderJson(const Report& report) {
  nlohmann::ordered_json root;
  root["span"] = nlohmann::ordered_json::array();
  for (const auto& row : report.span_rows) {
    root["span"].push_back({{"model", row.model},
                            {"direction", row.direction},
                            {"f1", row.result.f1},
                            {"em", row.result.em},
                            {"items", row.result.per_item.size()}});
  }
  root["pair"] = nlohmann::ordered_json::array();
  for (const auto& row : report.pair_rows) {
    root["pair"].push_back({{"model", row.model},
                            {"precision", row.result.precision},
                            {"recall", row.result.recall},
                            {"f1", row.result.f1},
                            {"tp", row.result.tp},
                            {"fp", row.result.fp},
                            {"fn", row.result.fn}});
  }
  return root.dump(2) + "\n";
}

}  // namespace

std::string RenderReport(const Report& report, ReportFormat format) {
  return format == ReportFormat::kJson ? RenderJson(report) : RenderText(report);
}

}  // namespace spanalign
