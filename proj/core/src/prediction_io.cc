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

#include "spanalign/prediction_io.h"

#include <cmath>
#include <istream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "spanalign/errors.h"
#include "spanalign/io.h"

namespace spanalign {

using json = nlohmann::ordered_json;

std::string_view DirectionName(Direction direction) {
  return direction == Direction::kSrcToTgt ? "src-tgt" : "tgt-src";
}

Direction ParseDirection(std::string_view text) {
  if (text == "src-tgt" || text == "src->tgt" || text == "fwd") return Direction::kSrcToTgt;
  if (text == "tgt-src" || text == "tgt->src" || text == "rev") return Direction::kTgtToSrc;
  Fail(ErrorKind::kParse, "unknown direction '" + std::string(text) + "'");
}

namespace {

double Linear(double value, bool log_space) {
  return log_space ? std::exp(value) : value;
}

std::vector<double> ReadVector(const json& node, bool log_space) {
  auto values = node.get<std::vector<double>>();
  if (log_space) {
    for (double& v : values) v = std::exp(v);
  }
  return values;
}

PredictionRecord ParseRecord(const json& node, const PredictionFileHeader& header,
                             int top_k) {
  const bool log_space = node.value("log_space", header.log_space);
  PredictionRecord record;
  record.qid = node.at("qid").get<std::string>();
  record.query_doc_id = node.at("query_doc_id").get<std::string>();
  record.target_doc_id = node.at("target_doc_id").get<std::string>();
  const auto query = node.at("query_span").get<std::vector<int>>();
  if (query.size() != 2) Fail(ErrorKind::kParse, "query_span must be [i, j]");
  record.query_span = FromInclusive(query[0], query[1]);
  record.null_score = Linear(node.value("null_score", log_space ? -INFINITY : 0.0), log_space);
  record.has_null_slot = header.null_slot;
  record.source = ScoreSource::kFile;

  const int min_position = header.null_slot ? 0 : 1;
  if (node.contains("spans")) {
    for (const auto& entry : node.at("spans")) {
      const auto span = entry.at("span").get<std::vector<int>>();
      if (span.size() != 2 || span[0] < min_position || span[1] < span[0]) {
        Fail(ErrorKind::kParse, "record '" + record.qid + "': bad span");
      }
      const double score = Linear(entry.at("score").get<double>(), log_space);
      record.predictions.push_back(SpanPrediction{Span{span[0], span[1] + 1}, score});
    }
  }
  if (node.contains("start_probs") || node.contains("end_probs")) {
    PositionDistributions dists;
    dists.start_probs = ReadVector(node.at("start_probs"), log_space);
    dists.end_probs = ReadVector(node.at("end_probs"), log_space);
    dists.has_null_slot = header.null_slot;
    dists.normalized = header.normalized;
    dists.Validate();
    record.distributions = std::move(dists);
  }
  MaterializePredictions(record, top_k);
  return record;
}

}  // namespace

PredictionFile ReadPredictions(std::istream& in, std::string_view source, int top_k) {
  PredictionFile file;
  bool have_header = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      const json node = json::parse(line);
      if (!have_header) {
        if (!node.contains("direction")) {
          Fail(ErrorKind::kParse, "first line must be a header with a direction");
        }
        file.header.direction = ParseDirection(node.at("direction").get<std::string>());
        file.header.producer = node.value("producer", std::string());
        file.header.log_space = node.value("log_space", false);
        file.header.null_slot = node.value("null_slot", false);
        file.header.normalized = node.value("normalized", false);
        have_header = true;
        continue;
      }
      file.records.push_back(ParseRecord(node, file.header, top_k));
    } catch (const json::exception& e) {
      Fail(ErrorKind::kParse, Where(source, line_no) + e.what());
    } catch (const Error& e) {
      Fail(e.kind(), Where(source, line_no) + e.what());
    }
  }
  if (!have_header) Fail(ErrorKind::kParse, std::string(source) + ": missing header line");
  return file;
}

PredictionFile LoadPredictions(const std::string& path, int top_k) {
  auto in = OpenInput(path);
  return ReadPredictions(in, path, top_k);
}

std::string SerializePredictions(const PredictionFile& file, bool with_distributions) {
  std::ostringstream out;
  json header;
  header["direction"] = DirectionName(file.header.direction);
  header["producer"] = file.header.producer;
  header["log_space"] = false;
  header["null_slot"] = file.header.null_slot;
  header["normalized"] = file.header.normalized;
  out << header.dump() << '\n';
  for (const auto& record : file.records) {
    if (record.ruled) {
      Fail(ErrorKind::kContract, "record '" + record.qid + "' is already null-ruled");
    }
    json node;
    node["qid"] = record.qid;
    node["query_doc_id"] = record.query_doc_id;
    const auto [i, j] = ToInclusive(record.query_span);
    node["query_span"] = {i, j};
    node["target_doc_id"] = record.target_doc_id;
    node["null_score"] = record.null_score;
    json spans = json::array();
    for (const auto& pred : record.predictions) {
      spans.push_back(json{{"span", {pred.span.start, pred.span.end - 1}},
                           {"score", pred.score}});
    }
    node["spans"] = std::move(spans);
    if (with_distributions && record.distributions) {
      node["start_probs"] = record.distributions->start_probs;
      node["end_probs"] = record.distributions->end_probs;
    }
    out << node.dump() << '\n';
  }
  return out.str();
}

}  // namespace spanalign
