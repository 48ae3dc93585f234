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
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hqa/generation.hpp"
#include "hqa/knowledge.hpp"
#include "hqa/record.hpp"
#include "hqa/retrieval.hpp"

namespace hqa {

/// Reason recorded for annotation types that need more hops than supported.
inline constexpr std::string_view kOutOfScope = "OutOfScope";

struct PseudoProgramSet {
  std::string question_id;
  std::vector<std::string> programs;  // canonical text, one per hop
  bool built = false;
  std::string failure_kind;  // empty when built
  std::string reason;
};

/// First case-insensitive occurrence of `answer` as a token subsequence of
/// the fact region. Throws Error(AnswerNotFound).
std::pair<std::size_t, std::size_t> locate_answer(const SerializedInput& input,
                                                  std::string_view answer);

/// Turns an annotation into per-hop template programs whose indices point at
/// the gold answers in the serialization the pipeline will build. Never
/// throws; failures come back with built == false.
PseudoProgramSet build_pseudo(const Annotation& annotation, const KnowledgeSet& ks);

/// Gold fact index per hop for every annotated record.
GoldFacts gold_facts(std::span<const DatasetRecord> records);

ProgramStore program_store(std::span<const PseudoProgramSet> sets);

struct ReplayReport {
  std::size_t total = 0;   // annotated records
  std::size_t built = 0;
  double coverage = 0.0;   // built / total
  double em = 0.0;         // mean over built records
  double f1 = 0.0;
  std::vector<PseudoProgramSet> programs;
};

/// Builds pseudo programs for every annotated record, replays the built ones
/// through the pipeline with the gold retriever and the oracle generator, and
/// scores the finals against the annotated answers.
ReplayReport replay_verify(std::span<const DatasetRecord> records);

}  // namespace hqa
