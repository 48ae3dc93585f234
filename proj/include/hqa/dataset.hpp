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


#pragma once

#include <cstddef>
#include <istream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hqa/pipeline.hpp"
#include "hqa/pseudo.hpp"
#include "hqa/record.hpp"

namespace hqa {

using Json = nlohmann::json;

// One dataset line:
//   {"question_id": str, "question": str,
//    "table": {"id": str, "headers": [str], "rows": [[str]]},
//    "passages": [{"id": str, "title": str, "text": str}],
//    "annotation": {"reasoning_type": str,
//                   "hops": [{"gold_fact_id": str, "gold_answers": [str],
//                             "operands": [str], "pairs": [{"key": str, "value": str}],
//                             "operation": str}],
//                   "final_answers": [str]}}
// "annotation" and the per-hop "operands", "pairs", "operation" are optional.

/// Throws Error(InvalidData) naming the offending field.
DatasetRecord record_from_json(const Json& j);
Json record_to_json(const DatasetRecord& record);

Annotation annotation_from_json(const Json& j, const std::string& question_id,
                                const std::string& question);
Json annotation_to_json(const Annotation& annotation);

struct LineError {
  std::size_t line = 0;  // 1-based
  std::string message;
};

struct Dataset {
  std::vector<DatasetRecord> records;
  std::vector<LineError> errors;
};

/// Reads JSONL, skipping blank lines. Without keep_going the first bad line
/// stops the read; the error is reported either way.
Dataset read_dataset(std::istream& in, bool keep_going);
Dataset load_dataset(const std::string& path, bool keep_going);

Json result_to_json(const ExecResult& result);
Json outcome_to_json(const std::string& question_id, const AnswerOutcome& outcome,
                     const KnowledgeSet& ks);

/// Sidecar lines for one pseudo-program set: one {question_id, hop, program}
/// line per hop when built, otherwise a single line with the failure.
std::vector<Json> pseudo_lines(const PseudoProgramSet& set);
/// Reads a sidecar back into a store, ignoring failure lines.
ProgramStore read_pseudo_sidecar(std::istream& in);

}  // namespace hqa
