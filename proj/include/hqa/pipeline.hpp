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
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hqa/exec_result.hpp"
#include "hqa/generation.hpp"
#include "hqa/knowledge.hpp"
#include "hqa/program.hpp"
#include "hqa/retrieval.hpp"

namespace hqa {

struct PipelineConfig {
  int max_hops = 2;
  bool strict_templates = true;
};

enum class HopStage { Retrieve, Generate, Parse, Validate, Execute, Finalize };

std::string_view stage_name(HopStage stage);

struct HopFailure {
  HopStage stage = HopStage::Execute;
  std::string kind;  // ErrorKind name or a pipeline-level reason
  std::string message;

  bool operator==(const HopFailure&) const = default;
};

struct HopRecord {
  int hop = 1;
  std::optional<std::size_t> fact_index;
  std::string program_text;
  std::optional<Program> parsed;
  std::optional<ExecResult> result;
  std::optional<HopFailure> failure;
  bool iterate = false;

  bool operator==(const HopRecord&) const = default;
};

struct Unanswered {
  int hop = 1;
  HopFailure failure;

  bool operator==(const Unanswered&) const = default;
};

struct AnswerOutcome {
  std::variant<ExecResult, Unanswered> final;
  std::vector<HopRecord> trace;

  bool answered() const { return std::holds_alternative<ExecResult>(final); }
  bool operator==(const AnswerOutcome&) const = default;
};

/// Reason recorded when the last allowed hop still asks for another hop.
inline constexpr std::string_view kBudgetExhausted = "HopBudgetExhausted";

/// True iff the root is COMPOSE/INTERSECT and another hop is allowed.
bool detect_iteration(const Program& program, int hop, const PipelineConfig& config);

/// Retrieve, serialize, generate, parse, execute and detect iteration, hop
/// by hop. Never throws; every failure ends in Unanswered with the failing
/// hop recorded in the trace.
class Pipeline {
 public:
  Pipeline(const Retriever& retriever, const Generator& generator, PipelineConfig config = {});

  AnswerOutcome answer(std::string_view question_id, std::string_view question,
                       const KnowledgeSet& ks) const;

  const PipelineConfig& config() const { return config_; }

 private:
  const Retriever& retriever_;
  const Generator& generator_;
  PipelineConfig config_;
};

}  // namespace hqa
