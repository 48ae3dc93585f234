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


#include "hqa/pseudo.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "hqa/error.hpp"
#include "hqa/eval.hpp"
#include "hqa/executor.hpp"
#include "hqa/pipeline.hpp"

namespace hqa {
namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool is_out_of_scope_type(std::string_view name) {
  auto key = lower(name);
  std::erase(key, '_');
  return key == "composecompare";
}

// Builds the programs of one hop. `input` is the hop's serialization.
class HopBuilder {
 public:
  HopBuilder(const SerializedInput& input, std::size_t candidate)
      : input_(input), from_table_(candidate == 0) {}

  OpNode text_atom(std::string_view answer) const {
    auto [s, e] = locate_answer(input_, answer);
    return OpNode::atom(from_table_ ? OpKind::Cell : OpKind::Span, s, e);
  }

  OpNode value_atom(std::string_view answer) const {
    auto [s, e] = locate_answer(input_, answer);
    return OpNode::atom(from_table_ ? OpKind::CellValue : OpKind::SpanValue, s, e);
  }

  OpNode multispan(const std::vector<std::string>& answers) const {
    std::vector<OpNode> children;
    for (const auto& a : answers) children.push_back(text_atom(a));
    return OpNode::op(OpKind::MultiSpan, std::move(children));
  }

  OpNode yesno(std::string_view answer) const {
    // The fixed prefix is [BOS] yes or no.
    const auto key = answer_key(answer);
    if (key == "yes") return OpNode::atom(OpKind::YesNo, 1, 1);
    if (key == "no") return OpNode::atom(OpKind::YesNo, 3, 3);
    throw Error(ErrorKind::AnswerNotFound, "'" + std::string(answer) + "' is not yes or no");
  }

  OpNode compare(const HopAnnotation& hop) const {
    if (hop.pairs.size() != 2) {
      throw Error(ErrorKind::AmbiguousTemplate, "comparison needs exactly two key/value pairs");
    }
    std::vector<OpNode> kvs;
    for (const auto& pair : hop.pairs) {
      kvs.push_back(OpNode::op(OpKind::Kv, {text_atom(pair.key), value_atom(pair.value)}));
    }
    std::vector<OpKind> choices = {OpKind::ArgMax, OpKind::ArgMin};
    if (hop.operation) choices = {*hop.operation};
    for (auto kind : choices) {
      auto node = OpNode::op(kind, kvs);
      if (matches(execute(node, input_), hop.gold_answers)) return node;
    }
    throw Error(ErrorKind::AnswerNotFound, "no comparison yields the gold answer");
  }

  OpNode calculation(const HopAnnotation& hop) const {
    if (hop.operands.empty()) {
      throw Error(ErrorKind::AmbiguousTemplate, "calculation needs annotated operands");
    }
    std::vector<OpNode> values;
    for (const auto& op : hop.operands) values.push_back(value_atom(op));
    std::vector<OpKind> choices = {OpKind::Sum, OpKind::Avg, OpKind::Count};
    if (hop.operation) choices = {*hop.operation};
    for (auto kind : choices) {
      auto node = OpNode::op(kind, values);
      if (matches(execute(node, input_), hop.gold_answers)) return node;
    }
    throw Error(ErrorKind::AnswerNotFound, "no aggregate of the operands yields the gold answer");
  }

 private:
  static bool matches(const ExecResult& result, const std::vector<std::string>& gold) {
    if (gold.empty()) return false;
    if (const auto* n = std::get_if<Number>(&result)) {
      try {
        return std::abs(parse_numeric(gold.front()) - n->value) <= 1e-9;
      } catch (const Error&) {
        return false;
      }
    }
    return score(answer_list(result), gold).em == 1.0;
  }

  const SerializedInput& input_;
  bool from_table_;
};

const std::string& first_answer(const HopAnnotation& hop) {
  if (hop.gold_answers.empty()) {
    throw Error(ErrorKind::AmbiguousTemplate, "hop has no gold answer");
  }
  return hop.gold_answers.front();
}

OpNode build_hop(ReasoningType type, int hop, const HopAnnotation& ann, const HopBuilder& b) {
  using RT = ReasoningType;
  if (hop == 1) {
    switch (type) {
      case RT::SpanExtraction:
        if (ann.operation && is_value_atom(*ann.operation)) return b.value_atom(first_answer(ann));
        return b.text_atom(first_answer(ann));
      case RT::MultiSpan:
        return b.multispan(ann.gold_answers);
      case RT::YesNo:
        return b.yesno(first_answer(ann));
      case RT::Compare:
        return b.compare(ann);
      case RT::Calculation:
        return b.calculation(ann);
      case RT::ComposeSpan:
      case RT::ComposeMultiSpan:
      case RT::ComposeYesNo:
        return OpNode::op(OpKind::Compose, {b.text_atom(first_answer(ann))});
      case RT::Intersect:
        return OpNode::op(OpKind::Intersect, {b.multispan(ann.gold_answers)});
    }
  }
  switch (type) {
    case RT::ComposeSpan:
      return b.text_atom(first_answer(ann));
    case RT::ComposeMultiSpan:
    case RT::Intersect:
      return b.multispan(ann.gold_answers);
    case RT::ComposeYesNo:
      return b.yesno(first_answer(ann));
    default:
      throw Error(ErrorKind::AmbiguousTemplate, "no hop-2 template");
  }
}

}  // namespace

std::pair<std::size_t, std::size_t> locate_answer(const SerializedInput& input,
                                                  std::string_view answer) {
  std::vector<std::string> needle;
  for (const auto& t : tokenize(answer)) needle.push_back(lower(t));
  if (needle.empty()) {
    throw Error(ErrorKind::AnswerNotFound, "empty answer cannot be located");
  }
  const auto& fact = input.segment(Region::Fact);
  for (std::size_t s = fact.begin; s + needle.size() <= fact.end; ++s) {
    bool hit = true;
    for (std::size_t k = 0; hit && k < needle.size(); ++k) {
      hit = lower(input.tokens[s + k]) == needle[k];
    }
    if (hit) return {s, s + needle.size() - 1};
  }
  throw Error(ErrorKind::AnswerNotFound,
              "'" + std::string(answer) + "' does not occur in the supporting fact");
}

PseudoProgramSet build_pseudo(const Annotation& annotation, const KnowledgeSet& ks) {
  PseudoProgramSet out;
  out.question_id = annotation.question_id;
  try {
    if (!annotation.reasoning_type) {
      if (is_out_of_scope_type(annotation.type_name)) {
        out.failure_kind = std::string(kOutOfScope);
        out.reason = "'" + annotation.type_name + "' needs more than two hops";
        return out;
      }
      throw Error(ErrorKind::AmbiguousTemplate,
                  "unknown reasoning type '" + annotation.type_name + "'");
    }
    const auto type = *annotation.reasoning_type;
    const auto row = template_for(type);
    if (annotation.hops.size() != row.hop_count()) {
      throw Error(ErrorKind::AmbiguousTemplate,
                  std::string(reasoning_type_name(type)) + " expects " +
                      std::to_string(row.hop_count()) + " annotated hop(s), got " +
                      std::to_string(annotation.hops.size()));
    }

    std::optional<std::string> prev_text;
    std::optional<OpKind> first_root;
    for (std::size_t i = 0; i < annotation.hops.size(); ++i) {
      const int hop = static_cast<int>(i) + 1;
      const auto& ann = annotation.hops[i];
      const auto candidate = ks.find_candidate(ann.gold_fact_id);
      if (!candidate) {
        throw Error(ErrorKind::MissingAnnotation,
                    "gold fact '" + ann.gold_fact_id + "' is not a candidate");
      }
      // Same serialization the pipeline builds for this hop.
      const auto input =
          serialize_parts(annotation.question, prev_text, fact_tokens(ks, *candidate), true);
      const HopBuilder builder(input, *candidate);
      Program program{build_hop(type, hop, ann, builder), hop};

      if (auto v = validate(program, hop, first_root); !v.empty()) {
        throw Error(ErrorKind::AmbiguousTemplate, v.front().message);
      }
      if (hop == 1) first_root = program.root.kind;
      out.programs.push_back(print(program));
      prev_text = render(execute(program, input));
    }
    out.built = true;
  } catch (const Error& e) {
    out.programs.clear();
    out.failure_kind = std::string(to_string(e.kind()));
    out.reason = e.what();
  }
  return out;
}

GoldFacts gold_facts(std::span<const DatasetRecord> records) {
  GoldFacts gold;
  for (const auto& r : records) {
    if (!r.annotation) continue;
    std::vector<std::size_t> hops;
    for (const auto& h : r.annotation->hops) {
      const auto idx = r.knowledge.find_candidate(h.gold_fact_id);
      if (!idx) break;
      hops.push_back(*idx);
    }
    gold[r.question_id] = std::move(hops);
  }
  return gold;
}

ProgramStore program_store(std::span<const PseudoProgramSet> sets) {
  ProgramStore store;
  for (const auto& set : sets) {
    if (!set.built) continue;
    for (std::size_t i = 0; i < set.programs.size(); ++i) {
      store[{set.question_id, static_cast<int>(i) + 1}] = set.programs[i];
    }
  }
  return store;
}

ReplayReport replay_verify(std::span<const DatasetRecord> records) {
  ReplayReport report;
  for (const auto& r : records) {
    if (!r.annotation) continue;
    ++report.total;
    report.programs.push_back(build_pseudo(*r.annotation, r.knowledge));
    if (report.programs.back().built) ++report.built;
  }

  const GoldRetriever retriever(gold_facts(records));
  const OracleGenerator generator(program_store(report.programs));
  const Pipeline pipeline(retriever, generator, PipelineConfig{2, true});

  double em = 0.0, f1 = 0.0;
  std::size_t next = 0;
  for (const auto& r : records) {
    if (!r.annotation) continue;
    const auto& set = report.programs[next++];
    if (!set.built) continue;
    const auto outcome = pipeline.answer(r.question_id, r.question, r.knowledge);
    std::vector<std::string> pred;
    if (const auto* result = std::get_if<ExecResult>(&outcome.final)) pred = answer_list(*result);
    const auto s = score(pred, r.annotation->final_answers);
    em += s.em;
    f1 += s.f1;
  }
  if (report.total) {
    report.coverage = static_cast<double>(report.built) / static_cast<double>(report.total);
  }
  if (report.built) {
    report.em = em / static_cast<double>(report.built);
    report.f1 = f1 / static_cast<double>(report.built);
  }
  return report;
}

}  // namespace hqa
