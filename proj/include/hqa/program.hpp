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

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hqa/error.hpp"

namespace hqa {

enum class OpKind {
  Cell,
  Span,
  CellValue,
  SpanValue,
  YesNo,
  Kv,
  MultiSpan,
  Count,
  Sum,
  Avg,
  ArgMax,
  ArgMin,
  Compose,
  Intersect,
};

inline constexpr std::array<OpKind, 14> kAllOpKinds = {
    OpKind::Cell,  OpKind::Span,   OpKind::CellValue, OpKind::SpanValue, OpKind::YesNo,
    OpKind::Kv,    OpKind::MultiSpan, OpKind::Count,  OpKind::Sum,       OpKind::Avg,
    OpKind::ArgMax, OpKind::ArgMin, OpKind::Compose,  OpKind::Intersect,
};

std::string_view op_name(OpKind kind);
std::optional<OpKind> op_from_name(std::string_view name);  // case-insensitive

/// Atomic operations take a token range (s, e); the rest take child nodes.
bool is_atomic(OpKind kind);
/// CELL or SPAN
bool is_text_atom(OpKind kind);
/// CELL_VALUE or SPAN_VALUE
bool is_value_atom(OpKind kind);
bool is_multihop(OpKind kind);

/// One node of a program tree. Atomic nodes use `start`/`end` and have no
/// children; every other node leaves the indices at zero.
struct OpNode {
  OpKind kind = OpKind::Span;
  std::size_t start = 0;
  std::size_t end = 0;
  std::vector<OpNode> children;

  bool operator==(const OpNode&) const = default;

  static OpNode atom(OpKind kind, std::size_t s, std::size_t e) { return {kind, s, e, {}}; }
  static OpNode op(OpKind kind, std::vector<OpNode> children) {
    return {kind, 0, 0, std::move(children)};
  }
};

struct Program {
  OpNode root;
  int hop = 1;

  bool operator==(const Program&) const = default;
};

/// Raised by parse(). `position` is a byte offset into the source text and
/// `node` names the offending operation when one is known.
class ProgramError : public Error {
 public:
  ProgramError(ErrorKind kind, std::size_t position, std::string node, const std::string& message);

  std::size_t position() const { return position_; }
  const std::string& node() const { return node_; }

 private:
  std::size_t position_;
  std::string node_;
};

/// Grammar: node := NAME '(' arg (',' arg)* ')' ; arg := INT | node.
/// Whitespace-insensitive, names case-insensitive. Enforces arity and child
/// kinds; hop placement is left to validate().
Program parse(std::string_view text, int hop = 1);
OpNode parse_node(std::string_view text);

/// Canonical text: upper-case names, no spaces.
std::string print(const OpNode& node);
std::string print(const Program& program);

/// Arity and child-kind check for trees built in code. Returns an empty
/// string when the tree is well formed, otherwise a description.
std::string structural_problem(const OpNode& node);

enum class ReasoningType {
  SpanExtraction,
  MultiSpan,
  YesNo,
  Compare,
  Calculation,
  ComposeSpan,
  ComposeMultiSpan,
  ComposeYesNo,
  Intersect,
};

inline constexpr std::array<ReasoningType, 9> kAllReasoningTypes = {
    ReasoningType::SpanExtraction, ReasoningType::MultiSpan,   ReasoningType::YesNo,
    ReasoningType::Compare,        ReasoningType::Calculation, ReasoningType::ComposeSpan,
    ReasoningType::ComposeMultiSpan, ReasoningType::ComposeYesNo, ReasoningType::Intersect,
};

std::string_view reasoning_type_name(ReasoningType type);
std::optional<ReasoningType> reasoning_type_from_name(std::string_view name);

/// Allowed root kinds per hop for one reasoning type. An empty hop-2 slot
/// means the type is single-hop.
struct TemplateRow {
  std::vector<OpKind> hop1;
  std::vector<OpKind> hop2;

  std::size_t hop_count() const { return hop2.empty() ? 1 : 2; }
};

TemplateRow template_for(ReasoningType type);

struct Violation {
  std::string message;
};

/// Hop-placement check against the template table. `previous_root` is the
/// hop-1 root kind when checking a hop-2 program; without it, hop 2 accepts
/// any root that some template allows at hop 2.
std::vector<Violation> validate(const Program& program, int hop,
                                std::optional<OpKind> previous_root = std::nullopt);

bool is_multihop_root(const Program& program);

}  // namespace hqa
