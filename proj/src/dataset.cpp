/*
 * Copyright 2026 The hqa Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#include "hqa/dataset.hpp"

#include <fstream>

#include "hqa/error.hpp"

namespace hqa {
namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::InvalidData, what); }

const Json& field(const Json& j, const char* name) {
  if (!j.is_object()) bad(std::string("expected an object holding '") + name + "'");
  auto it = j.find(name);
  if (it == j.end()) bad(std::string("missing field '") + name + "'");
  return *it;
}

std::string string_field(const Json& j, const char* name) {
  const auto& v = field(j, name);
  if (!v.is_string()) bad(std::string("field '") + name + "' must be a string");
  return v.get<std::string>();
}

std::string optional_string(const Json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end() || it->is_null()) return {};
  if (!it->is_string()) bad(std::string("field '") + name + "' must be a string");
  return it->get<std::string>();
}

std::vector<std::string> string_list(const Json& v, const char* name) {
  if (!v.is_array()) bad(std::string("field '") + name + "' must be a list");
  std::vector<std::string> out;
  for (const auto& item : v) {
    if (!item.is_string()) bad(std::string("field '") + name + "' must hold strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

}  // namespace

Annotation annotation_from_json(const Json& j, const std::string& question_id,
                                const std::string& question) {
  Annotation a;
  a.question_id = question_id;
  a.question = question;
  a.type_name = string_field(j, "reasoning_type");
  a.reasoning_type = reasoning_type_from_name(a.type_name);
  const auto& hops = field(j, "hops");
  if (!hops.is_array()) bad("field 'hops' must be a list");
  for (const auto& h : hops) {
    HopAnnotation hop;
    hop.gold_fact_id = string_field(h, "gold_fact_id");
    hop.gold_answers = string_list(field(h, "gold_answers"), "gold_answers");
    if (auto it = h.find("operands"); it != h.end()) hop.operands = string_list(*it, "operands");
    if (auto it = h.find("pairs"); it != h.end()) {
      if (!it->is_array()) bad("field 'pairs' must be a list");
      for (const auto& p : *it) hop.pairs.push_back({string_field(p, "key"), string_field(p, "value")});
    }
    if (auto op = optional_string(h, "operation"); !op.empty()) {
      hop.operation = op_from_name(op);
      if (!hop.operation) bad("unknown operation '" + op + "'");
    }
    a.hops.push_back(std::move(hop));
  }
  a.final_answers = string_list(field(j, "final_answers"), "final_answers");
  if (a.final_answers.empty()) bad("field 'final_answers' must not be empty");
  return a;
}

Json annotation_to_json(const Annotation& a) {
  Json hops = Json::array();
  for (const auto& h : a.hops) {
    Json hop = {{"gold_fact_id", h.gold_fact_id}, {"gold_answers", h.gold_answers}};
    if (!h.operands.empty()) hop["operands"] = h.operands;
    if (!h.pairs.empty()) {
      Json pairs = Json::array();
      for (const auto& p : h.pairs) pairs.push_back({{"key", p.key}, {"value", p.value}});
      hop["pairs"] = pairs;
    }
    if (h.operation) hop["operation"] = std::string(op_name(*h.operation));
    hops.push_back(std::move(hop));
  }
  return {{"reasoning_type", a.type_name}, {"hops", hops}, {"final_answers", a.final_answers}};
}

DatasetRecord record_from_json(const Json& j) {
  DatasetRecord r;
  r.question_id = string_field(j, "question_id");
  r.question = string_field(j, "question");

  const auto& t = field(j, "table");
  std::vector<std::vector<std::string>> rows;
  const auto& rows_json = field(t, "rows");
  if (!rows_json.is_array()) bad("field 'rows' must be a list");
  for (const auto& row : rows_json) rows.push_back(string_list(row, "rows"));
  Table table(string_field(t, "id"), string_list(field(t, "headers"), "headers"), rows);

  std::vector<Passage> passages;
  if (auto it = j.find("passages"); it != j.end()) {
    if (!it->is_array()) bad("field 'passages' must be a list");
    for (const auto& p : *it) {
      passages.push_back({string_field(p, "id"), optional_string(p, "title"), string_field(p, "text")});
    }
  }
  r.knowledge = KnowledgeSet(std::move(table), std::move(passages));

  if (auto it = j.find("annotation"); it != j.end() && !it->is_null()) {
    r.annotation = annotation_from_json(*it, r.question_id, r.question);
  }
  return r;
}

Json record_to_json(const DatasetRecord& r) {
  const auto& table = r.knowledge.table();
  Json passages = Json::array();
  for (const auto& p : r.knowledge.passages()) {
    passages.push_back({{"id", p.id}, {"title", p.title}, {"text", p.text}});
  }
  Json j = {
      {"question_id", r.question_id},
      {"question", r.question},
      {"table", {{"id", table.id()}, {"headers", table.headers()}, {"rows", table.rows()}}},
      {"passages", passages},
  };
  if (r.annotation) j["annotation"] = annotation_to_json(*r.annotation);
  return j;
}

Dataset read_dataset(std::istream& in, bool keep_going) {
  Dataset data;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      auto j = Json::parse(line);
      data.records.push_back(record_from_json(j));
    } catch (const std::exception& e) {
      data.errors.push_back({number, e.what()});
      if (!keep_going) break;
    }
  }
  return data;
}

Dataset load_dataset(const std::string& path, bool keep_going) {
  std::ifstream in(path);
  if (!in) {
    Dataset data;
    data.errors.push_back({0, "cannot open " + path});
    return data;
  }
  return read_dataset(in, keep_going);
}

Json result_to_json(const ExecResult& result) {
  Json j = {{"type", result_type_name(result)}, {"text", render(result)},
            {"answers", answer_list(result)}};
  if (const auto* n = std::get_if<Number>(&result)) j["value"] = n->value;
  return j;
}

Json outcome_to_json(const std::string& question_id, const AnswerOutcome& outcome,
                     const KnowledgeSet& ks) {
  Json trace = Json::array();
  for (const auto& rec : outcome.trace) {
    Json h = {{"hop", rec.hop}, {"program", rec.program_text}, {"iterate", rec.iterate}};
    if (rec.fact_index) {
      h["fact_index"] = *rec.fact_index;
      h["fact_id"] = ks.candidate_id(*rec.fact_index);
    } else {
      h["fact_index"] = nullptr;
    }
    h["parsed"] = rec.parsed ? Json(print(*rec.parsed)) : Json(nullptr);
    h["result"] = rec.result ? result_to_json(*rec.result) : Json(nullptr);
    if (rec.failure) {
      h["error"] = {{"stage", stage_name(rec.failure->stage)},
                    {"kind", rec.failure->kind},
                    {"message", rec.failure->message}};
    }
    trace.push_back(std::move(h));
  }

  Json j = {{"question_id", question_id}};
  if (const auto* result = std::get_if<ExecResult>(&outcome.final)) {
    j["answered"] = true;
    j["final"] = result_to_json(*result);
    j["answers"] = answer_list(*result);
  } else {
    const auto& u = std::get<Unanswered>(outcome.final);
    j["answered"] = false;
    j["final"] = {{"type", "unanswered"},
                  {"hop", u.hop},
                  {"stage", stage_name(u.failure.stage)},
                  {"kind", u.failure.kind},
                  {"message", u.failure.message}};
    j["answers"] = Json::array();
  }
  j["trace"] = std::move(trace);
  return j;
}

std::vector<Json> pseudo_lines(const PseudoProgramSet& set) {
  std::vector<Json> out;
  if (set.built) {
    for (std::size_t i = 0; i < set.programs.size(); ++i) {
      out.push_back({{"question_id", set.question_id},
                     {"hop", static_cast<int>(i) + 1},
                     {"program", set.programs[i]}});
    }
  } else {
    out.push_back({{"question_id", set.question_id},
                   {"status", "failed"},
                   {"kind", set.failure_kind},
                   {"reason", set.reason}});
  }
  return out;
}

ProgramStore read_pseudo_sidecar(std::istream& in) {
  ProgramStore store;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto j = Json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      bad("pseudo sidecar line " + std::to_string(number) + " is not a JSON object");
    }
    if (j.contains("status")) continue;
    const auto hop = field(j, "hop");
    if (!hop.is_number_integer()) bad("pseudo sidecar line " + std::to_string(number) + ": bad hop");
    store[{string_field(j, "question_id"), hop.get<int>()}] = string_field(j, "program");
  }
  return store;
}

}  // namespace hqa
