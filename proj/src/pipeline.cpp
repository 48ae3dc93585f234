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


#include "hqa/pipeline.hpp"

#include "hqa/error.hpp"
#include "hqa/executor.hpp"

namespace hqa {
namespace {

HopFailure failure_from(HopStage stage, const std::exception& e) {
  if (const auto* err = dynamic_cast<const Error*>(&e)) {
    return {stage, std::string(to_string(err->kind())), err->what()};
  }
  return {stage, "InternalError", e.what()};
}

}  // namespace

std::string_view stage_name(HopStage stage) {
  switch (stage) {
    case HopStage::Retrieve: return "retrieve";
    case HopStage::Generate: return "generate";
    case HopStage::Parse: return "parse";
    case HopStage::Validate: return "validate";
    case HopStage::Execute: return "execute";
    case HopStage::Finalize: return "finalize";
  }
  return "unknown";
}

bool detect_iteration(const Program& program, int hop, const PipelineConfig& config) {
  return is_multihop_root(program) && hop < config.max_hops;
}

Pipeline::Pipeline(const Retriever& retriever, const Generator& generator, PipelineConfig config)
    : retriever_(retriever), generator_(generator), config_(config) {
  if (config_.max_hops < 1) throw Error(ErrorKind::InvalidData, "max_hops must be at least 1");
}

AnswerOutcome Pipeline::answer(std::string_view question_id, std::string_view question,
                               const KnowledgeSet& ks) const {
  AnswerOutcome outcome;
  std::optional<ExecResult> prev;
  std::optional<OpKind> first_root;

  auto fail = [&](HopRecord& record, HopFailure failure) {
    record.failure = failure;
    record.iterate = false;
    outcome.final = Unanswered{record.hop, std::move(failure)};
    outcome.trace.push_back(std::move(record));
    return outcome;
  };

  for (int hop = 1; hop <= config_.max_hops; ++hop) {
    HopRecord record;
    record.hop = hop;

    SerializedInput input;
    std::optional<std::string> prev_text;
    if (prev) prev_text = render(*prev);
    try {
      record.fact_index = select(question_id, question, prev, ks, hop, retriever_);
      input = serialize_parts(question, prev_text, fact_tokens(ks, *record.fact_index), true);
      input.candidate = *record.fact_index;
    } catch (const std::exception& e) {
      return fail(record, failure_from(HopStage::Retrieve, e));
    }

    try {
      record.program_text = generator_.generate(make_request(question_id, question, prev_text, input, hop));
    } catch (const std::exception& e) {
      return fail(record, failure_from(HopStage::Generate, e));
    }

    try {
      record.parsed = parse(record.program_text, hop);
    } catch (const std::exception& e) {
      return fail(record, failure_from(HopStage::Parse, e));
    }
    const Program& program = *record.parsed;

    if (config_.strict_templates) {
      const auto violations = validate(program, hop, hop > 1 ? first_root : std::nullopt);
      if (!violations.empty()) {
        return fail(record, {HopStage::Validate, "TemplateViolation", violations.front().message});
      }
    }

    try {
      record.result = execute(program, input);
    } catch (const std::exception& e) {
      return fail(record, failure_from(HopStage::Execute, e));
    }

    record.iterate = detect_iteration(program, hop, config_);
    if (record.iterate) {
      if (hop == 1) first_root = program.root.kind;
      prev = record.result;
      outcome.trace.push_back(std::move(record));
      continue;
    }
    if (is_multihop_root(program)) {
      return fail(record, {HopStage::Finalize, std::string(kBudgetExhausted),
                           "program asks for hop " + std::to_string(hop + 1) + " but max_hops is " +
                               std::to_string(config_.max_hops)});
    }

    if (first_root == OpKind::Intersect) {
      const auto* hop1 = std::get_if<StringSet>(&*prev);
      const auto* hop2 = std::get_if<StringSet>(&*record.result);
      if (!hop1 || !hop2) {
        return fail(record, {HopStage::Finalize, std::string(to_string(ErrorKind::TypeMismatch)),
                             "INTERSECT needs a set of answers from both hops"});
      }
      outcome.final = ExecResult{intersect_finalize(*hop1, *hop2)};
    } else {
      // Single-hop roots and COMPOSE chains both finish with this hop's result.
      outcome.final = *record.result;
    }
    outcome.trace.push_back(std::move(record));
    return outcome;
  }

  // Unreachable: the last hop never iterates.
  HopRecord record;
  record.hop = config_.max_hops;
  return fail(record, {HopStage::Finalize, std::string(kBudgetExhausted), "no hop finished"});
}

}  // namespace hqa
