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


#include "hqa/executor.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <unordered_set>

#include "hqa/error.hpp"

namespace hqa {
namespace {

constexpr std::array<std::string_view, 5> kCurrencyPrefixes = {"$", "\xE2\x82\xAC", "\xC2\xA3",
                                                               "\xC2\xA5", "\xE2\x82\xB9"};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool strip_currency(std::string_view& s) {
  for (auto sym : kCurrencyPrefixes) {
    if (s.starts_with(sym)) {
      s.remove_prefix(sym.size());
      s = trim(s);
      return true;
    }
  }
  return false;
}

[[noreturn]] void non_numeric(std::string_view text) {
  throw Error(ErrorKind::NonNumericSpan, "span '" + std::string(text) + "' is not numeric");
}

const OpNode& child(const OpNode& node, std::size_t i) {
  if (i >= node.children.size()) {
    throw Error(ErrorKind::TypeMismatch,
                std::string(op_name(node.kind)) + " is missing argument " + std::to_string(i + 1));
  }
  return node.children[i];
}

ExecResult eval(const OpNode& node, const SerializedInput& input);

Number finite_number(double value) {
  if (!std::isfinite(value)) throw Error(ErrorKind::NonNumericSpan, "aggregate overflowed");
  return Number{value};
}

double eval_number(const OpNode& node, const SerializedInput& input) {
  if (!is_value_atom(node.kind)) {
    throw Error(ErrorKind::TypeMismatch,
                std::string(op_name(node.kind)) + " does not produce a number");
  }
  return parse_numeric(span_text(input, node.start, node.end));
}

std::string eval_text(const OpNode& node, const SerializedInput& input) {
  if (!is_text_atom(node.kind)) {
    throw Error(ErrorKind::TypeMismatch,
                std::string(op_name(node.kind)) + " does not produce a span");
  }
  return span_text(input, node.start, node.end);
}

struct KeyValue {
  std::string key;
  double value;
};

KeyValue eval_kv(const OpNode& node, const SerializedInput& input) {
  if (node.kind != OpKind::Kv) {
    throw Error(ErrorKind::TypeMismatch,
                "comparison argument must be KV, got " + std::string(op_name(node.kind)));
  }
  return {eval_text(child(node, 0), input), eval_number(child(node, 1), input)};
}

std::vector<double> eval_values(const OpNode& node, const SerializedInput& input) {
  if (node.children.empty()) {
    throw Error(ErrorKind::EmptyMultiSpan, std::string(op_name(node.kind)) + " has no arguments");
  }
  std::vector<double> values;
  values.reserve(node.children.size());
  for (const auto& c : node.children) values.push_back(eval_number(c, input));
  return values;
}

ExecResult eval(const OpNode& node, const SerializedInput& input) {
  switch (node.kind) {
    case OpKind::Cell:
    case OpKind::Span:
      return Scalar{span_text(input, node.start, node.end)};
    case OpKind::CellValue:
    case OpKind::SpanValue:
      return Number{eval_number(node, input)};
    case OpKind::YesNo: {
      const bool no = answer_key(span_text(input, node.start, node.end)) == "no";
      return YesNoAnswer{no ? YesNo::No : YesNo::Yes};
    }
    case OpKind::Kv:
      throw Error(ErrorKind::TypeMismatch, "KV is only valid inside ARGMAX/ARGMIN");
    case OpKind::MultiSpan: {
      if (node.children.empty()) throw Error(ErrorKind::EmptyMultiSpan, "MULTISPAN has no spans");
      std::vector<std::string> items;
      for (const auto& c : node.children) items.push_back(eval_text(c, input));
      return make_string_set(items);
    }
    case OpKind::Count:
      return Number{static_cast<double>(eval_values(node, input).size())};
    case OpKind::Sum: {
      double total = 0.0;
      for (double v : eval_values(node, input)) total += v;
      return finite_number(total);
    }
    case OpKind::Avg: {
      const auto values = eval_values(node, input);
      double total = 0.0;
      for (double v : values) total += v;
      return finite_number(total / static_cast<double>(values.size()));
    }
    case OpKind::ArgMax:
    case OpKind::ArgMin: {
      if (node.children.size() != 2) {
        throw Error(ErrorKind::TypeMismatch, std::string(op_name(node.kind)) + " takes two KV");
      }
      const auto first = eval_kv(node.children[0], input);
      const auto second = eval_kv(node.children[1], input);
      // Ties keep the first pair.
      const bool take_second = node.kind == OpKind::ArgMax ? second.value > first.value
                                                           : second.value < first.value;
      return Scalar{take_second ? second.key : first.key};
    }
    case OpKind::Compose:
      return Scalar{eval_text(child(node, 0), input)};
    case OpKind::Intersect: {
      const auto& inner = child(node, 0);
      if (inner.kind != OpKind::MultiSpan) {
        throw Error(ErrorKind::TypeMismatch, "INTERSECT argument must be MULTISPAN");
      }
      return eval(inner, input);
    }
  }
  throw Error(ErrorKind::TypeMismatch, "unknown operation");
}

}  // namespace

double parse_numeric(std::string_view text) {
  std::string_view s = trim(text);
  bool negative = false;
  auto take_sign = [&] {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
      negative = s.front() == '-';
      s.remove_prefix(1);
      s = trim(s);
      return true;
    }
    return false;
  };
  const bool signed_first = take_sign();
  if (strip_currency(s) && !signed_first) take_sign();

  bool percent = false;
  if (!s.empty() && s.back() == '%') {
    percent = true;
    s.remove_suffix(1);
    s = trim(s);
  }

  std::string digits;
  bool seen_dot = false;
  bool seen_digit = false;
  for (char ch : s) {
    if (ch == ',') continue;
    if (ch == '.') {
      if (seen_dot) non_numeric(text);
      seen_dot = true;
    } else if (std::isdigit(static_cast<unsigned char>(ch))) {
      seen_digit = true;
    } else {
      non_numeric(text);
    }
    digits.push_back(ch);
  }
  if (!seen_digit) non_numeric(text);

  double value = 0.0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value,
                                   std::chars_format::fixed);
  if (ec != std::errc{} || ptr != digits.data() + digits.size() || !std::isfinite(value)) {
    non_numeric(text);
  }
  if (percent) value /= 100.0;
  return negative ? -value : value;
}

NumericLiteral parse_literal(std::string_view text) {
  return NumericLiteral{std::string(text), parse_numeric(text)};
}

ExecResult execute(const OpNode& node, const SerializedInput& input) { return eval(node, input); }

ExecResult execute(const Program& program, const SerializedInput& input) {
  return eval(program.root, input);
}

StringSet intersect_finalize(const StringSet& hop1, const StringSet& hop2) {
  std::unordered_set<std::string> keys;
  for (const auto& item : hop2.items) keys.insert(answer_key(item));
  StringSet out;
  for (const auto& item : hop1.items) {
    if (keys.count(answer_key(item))) out.items.push_back(item);
  }
  return out;
}

}  // namespace hqa
