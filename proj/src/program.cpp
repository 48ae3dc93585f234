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


#include "hqa/program.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <variant>

namespace hqa {
namespace {

constexpr std::array<std::string_view, 14> kOpNames = {
    "CELL", "SPAN",  "CELL_VALUE", "SPAN_VALUE", "YESNO",  "KV",      "MULTISPAN",
    "COUNT", "SUM",  "AVG",        "ARGMAX",     "ARGMIN", "COMPOSE", "INTERSECT",
};

constexpr std::size_t kMaxDepth = 3;

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::toupper(static_cast<unsigned char>(x)) ==
                  std::toupper(static_cast<unsigned char>(y));
         });
}

struct Arg {
  std::variant<std::size_t, OpNode> value;
  std::size_t position = 0;

  const OpNode* node() const { return std::get_if<OpNode>(&value); }
};

struct ShapeError {
  ErrorKind kind;
  std::size_t arg_index;
  std::string message;
};

std::optional<ShapeError> exact_count(OpKind kind, std::size_t got, std::size_t want) {
  if (got == want) return std::nullopt;
  return ShapeError{ErrorKind::ArityError, 0,
                    std::string(op_name(kind)) + " takes " + std::to_string(want) +
                        " argument(s), got " + std::to_string(got)};
}

// Checks arity and child kinds of one node given its argument list.
std::optional<ShapeError> check_shape(OpKind kind, const std::vector<Arg>& args) {
  const std::string name(op_name(kind));
  auto child_error = [&](std::size_t i, std::string_view expected) {
    std::string got;
    if (const auto* n = args[i].node()) {
      got = std::string(op_name(n->kind));
    } else {
      got = "integer";
    }
    return ShapeError{ErrorKind::ChildKindError, i,
                      name + " argument " + std::to_string(i + 1) + " must be " +
                          std::string(expected) + ", got " + got};
  };
  auto require_children = [&](auto pred, std::string_view expected) -> std::optional<ShapeError> {
    for (std::size_t i = 0; i < args.size(); ++i) {
      const auto* n = args[i].node();
      if (!n || !pred(n->kind)) return child_error(i, expected);
    }
    return std::nullopt;
  };

  if (is_atomic(kind)) {
    if (auto e = exact_count(kind, args.size(), 2)) return e;
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (args[i].node()) return child_error(i, "an integer token index");
    }
    return std::nullopt;
  }

  switch (kind) {
    case OpKind::Kv: {
      if (auto e = exact_count(kind, args.size(), 2)) return e;
      const auto* key = args[0].node();
      if (!key || !is_text_atom(key->kind)) return child_error(0, "CELL or SPAN");
      const auto* value = args[1].node();
      if (!value || !is_value_atom(value->kind)) return child_error(1, "CELL_VALUE or SPAN_VALUE");
      return std::nullopt;
    }
    case OpKind::MultiSpan:
      return require_children(is_text_atom, "CELL or SPAN");
    case OpKind::Count:
    case OpKind::Sum:
    case OpKind::Avg:
      return require_children(is_value_atom, "CELL_VALUE or SPAN_VALUE");
    case OpKind::ArgMax:
    case OpKind::ArgMin:
      if (auto e = exact_count(kind, args.size(), 2)) return e;
      return require_children([](OpKind k) { return k == OpKind::Kv; }, "KV");
    case OpKind::Compose:
      if (auto e = exact_count(kind, args.size(), 1)) return e;
      return require_children(is_text_atom, "CELL or SPAN");
    case OpKind::Intersect:
      if (auto e = exact_count(kind, args.size(), 1)) return e;
      return require_children([](OpKind k) { return k == OpKind::MultiSpan; }, "MULTISPAN");
    default:
      return std::nullopt;
  }
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  OpNode parse_root() {
    OpNode root = parse_node(1);
    skip_space();
    if (pos_ != text_.size()) fail_syntax("end of input");
    return root;
  }

 private:
  OpNode parse_node(std::size_t depth) {
    skip_space();
    const std::size_t name_pos = pos_;
    std::size_t end = pos_;
    while (end < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[end])) ||
                                  text_[end] == '_')) {
      ++end;
    }
    if (end == pos_) fail_syntax("operation name");
    const std::string_view name = text_.substr(pos_, end - pos_);
    const auto kind = op_from_name(name);
    if (!kind) {
      throw ProgramError(ErrorKind::SyntaxError, name_pos, std::string(name),
                         "unknown operation '" + std::string(name) + "' at position " +
                             std::to_string(name_pos));
    }
    const std::string canonical(op_name(*kind));
    if (depth > kMaxDepth) {
      throw ProgramError(ErrorKind::ChildKindError, name_pos, canonical,
                         canonical + " nested deeper than " + std::to_string(kMaxDepth) +
                             " levels at position " + std::to_string(name_pos));
    }
    pos_ = end;
    expect('(');

    std::vector<Arg> args;
    while (true) {
      args.push_back(parse_arg(depth));
      skip_space();
      if (peek(',')) {
        ++pos_;
        continue;
      }
      if (peek(')')) {
        ++pos_;
        break;
      }
      fail_syntax("',' or ')'");
    }

    if (auto err = check_shape(*kind, args)) {
      const std::size_t at =
          err->kind == ErrorKind::ArityError ? name_pos : args[err->arg_index].position;
      throw ProgramError(err->kind, at, canonical,
                         err->message + " at position " + std::to_string(at));
    }

    OpNode node{*kind, 0, 0, {}};
    if (is_atomic(*kind)) {
      node.start = std::get<std::size_t>(args[0].value);
      node.end = std::get<std::size_t>(args[1].value);
    } else {
      for (auto& a : args) node.children.push_back(std::move(std::get<OpNode>(a.value)));
    }
    return node;
  }

  Arg parse_arg(std::size_t depth) {
    skip_space();
    const std::size_t at = pos_;
    if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      std::size_t value = 0;
      auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), value);
      if (ec != std::errc{}) {
        throw ProgramError(ErrorKind::SyntaxError, at, "",
                           "integer out of range at position " + std::to_string(at));
      }
      pos_ = static_cast<std::size_t>(ptr - text_.data());
      return Arg{value, at};
    }
    if (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
      return Arg{parse_node(depth + 1), at};
    }
    fail_syntax("integer or operation");
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) const { return pos_ < text_.size() && text_[pos_] == c; }

  void expect(char c) {
    skip_space();
    if (!peek(c)) fail_syntax(std::string("'") + c + "'");
    ++pos_;
  }

  [[noreturn]] void fail_syntax(const std::string& expected) const {
    std::string found = pos_ < text_.size() ? "'" + std::string(1, text_[pos_]) + "'"
                                            : std::string("end of input");
    throw ProgramError(ErrorKind::SyntaxError, pos_, "",
                       "expected " + expected + " at position " + std::to_string(pos_) +
                           ", found " + found);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void print_into(const OpNode& node, std::string& out) {
  out += op_name(node.kind);
  out.push_back('(');
  if (is_atomic(node.kind)) {
    out += std::to_string(node.start);
    out.push_back(',');
    out += std::to_string(node.end);
  } else {
    for (std::size_t i = 0; i < node.children.size(); ++i) {
      if (i) out.push_back(',');
      print_into(node.children[i], out);
    }
  }
  out.push_back(')');
}

std::string structural_problem_at(const OpNode& node, std::size_t depth) {
  const std::string name(op_name(node.kind));
  if (depth > kMaxDepth) return name + " nested too deeply";
  if (is_atomic(node.kind)) {
    if (!node.children.empty()) return name + " must not have child operations";
    return {};
  }
  if (node.children.empty()) return name + " needs at least one argument";
  std::vector<Arg> args;
  for (const auto& c : node.children) args.push_back(Arg{c, 0});
  if (auto err = check_shape(node.kind, args)) return err->message;
  for (const auto& c : node.children) {
    if (auto p = structural_problem_at(c, depth + 1); !p.empty()) return p;
  }
  return {};
}

}  // namespace

std::string_view op_name(OpKind kind) { return kOpNames[static_cast<std::size_t>(kind)]; }

std::optional<OpKind> op_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kOpNames.size(); ++i) {
    if (iequals(name, kOpNames[i])) return static_cast<OpKind>(i);
  }
  return std::nullopt;
}

bool is_atomic(OpKind kind) {
  switch (kind) {
    case OpKind::Cell:
    case OpKind::Span:
    case OpKind::CellValue:
    case OpKind::SpanValue:
    case OpKind::YesNo:
      return true;
    default:
      return false;
  }
}

bool is_text_atom(OpKind kind) { return kind == OpKind::Cell || kind == OpKind::Span; }

bool is_value_atom(OpKind kind) {
  return kind == OpKind::CellValue || kind == OpKind::SpanValue;
}

bool is_multihop(OpKind kind) { return kind == OpKind::Compose || kind == OpKind::Intersect; }

ProgramError::ProgramError(ErrorKind kind, std::size_t position, std::string node,
                           const std::string& message)
    : Error(kind, message), position_(position), node_(std::move(node)) {}

OpNode parse_node(std::string_view text) { return Parser(text).parse_root(); }

Program parse(std::string_view text, int hop) { return Program{parse_node(text), hop}; }

std::string print(const OpNode& node) {
  std::string out;
  print_into(node, out);
  return out;
}

std::string print(const Program& program) { return print(program.root); }

std::string structural_problem(const OpNode& node) { return structural_problem_at(node, 1); }

std::string_view reasoning_type_name(ReasoningType type) {
  switch (type) {
    case ReasoningType::SpanExtraction: return "SpanExtraction";
    case ReasoningType::MultiSpan: return "MultiSpan";
    case ReasoningType::YesNo: return "YesNo";
    case ReasoningType::Compare: return "Compare";
    case ReasoningType::Calculation: return "Calculation";
    case ReasoningType::ComposeSpan: return "ComposeSpan";
    case ReasoningType::ComposeMultiSpan: return "ComposeMultiSpan";
    case ReasoningType::ComposeYesNo: return "ComposeYesNo";
    case ReasoningType::Intersect: return "Intersect";
  }
  return "Unknown";
}

std::optional<ReasoningType> reasoning_type_from_name(std::string_view name) {
  for (auto t : kAllReasoningTypes) {
    if (iequals(name, reasoning_type_name(t))) return t;
  }
  return std::nullopt;
}

TemplateRow template_for(ReasoningType type) {
  using K = OpKind;
  switch (type) {
    case ReasoningType::SpanExtraction:
      return {{K::Cell, K::CellValue, K::Span, K::SpanValue}, {}};
    case ReasoningType::MultiSpan:
      return {{K::MultiSpan}, {}};
    case ReasoningType::YesNo:
      return {{K::YesNo}, {}};
    case ReasoningType::Compare:
      return {{K::ArgMax, K::ArgMin}, {}};
    case ReasoningType::Calculation:
      return {{K::Sum, K::Avg, K::Count}, {}};
    case ReasoningType::ComposeSpan:
      return {{K::Compose}, {K::Cell, K::Span}};
    case ReasoningType::ComposeMultiSpan:
      return {{K::Compose}, {K::MultiSpan}};
    case ReasoningType::ComposeYesNo:
      return {{K::Compose}, {K::YesNo}};
    case ReasoningType::Intersect:
      return {{K::Intersect}, {K::MultiSpan}};
  }
  return {};
}

std::vector<Violation> validate(const Program& program, int hop,
                                std::optional<OpKind> previous_root) {
  std::vector<Violation> out;
  const OpKind root = program.root.kind;
  const std::string name(op_name(root));

  if (auto problem = structural_problem(program.root); !problem.empty()) {
    out.push_back({problem});
  }
  if (hop < 1 || hop > 2) {
    out.push_back({"no template defines hop " + std::to_string(hop)});
    return out;
  }

  bool allowed = false;
  for (auto type : kAllReasoningTypes) {
    const auto row = template_for(type);
    if (hop == 1) {
      allowed = std::find(row.hop1.begin(), row.hop1.end(), root) != row.hop1.end();
    } else {
      const bool follows = !previous_root || std::find(row.hop1.begin(), row.hop1.end(),
                                                       *previous_root) != row.hop1.end();
      allowed = follows && std::find(row.hop2.begin(), row.hop2.end(), root) != row.hop2.end();
    }
    if (allowed) break;
  }
  if (!allowed) {
    std::string msg = name + " is not a template root at hop " + std::to_string(hop);
    if (hop == 2 && previous_root) msg += " after " + std::string(op_name(*previous_root));
    out.push_back({msg});
  }
  return out;
}

bool is_multihop_root(const Program& program) { return is_multihop(program.root.kind); }

}  // namespace hqa
