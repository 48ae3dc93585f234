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

#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace hqa {

struct Scalar {
  std::string text;
  bool operator==(const Scalar&) const = default;
};

struct Number {
  double value = 0.0;
  bool operator==(const Number&) const = default;
};

/// Ordered, de-duplicated set of answer strings. Build it with
/// make_string_set so the uniqueness invariant holds.
struct StringSet {
  std::vector<std::string> items;
  bool operator==(const StringSet&) const = default;
};

enum class YesNo { Yes, No };

struct YesNoAnswer {
  YesNo value = YesNo::Yes;
  bool operator==(const YesNoAnswer&) const = default;
};

/// The per-hop answer produced by executing a program.
using ExecResult = std::variant<Scalar, Number, StringSet, YesNoAnswer>;

/// Comparison key for answer strings: lower-cased ASCII with runs of
/// whitespace collapsed and trimmed.
std::string answer_key(std::string_view text);

/// Keeps the first occurrence of every item under answer_key equality.
StringSet make_string_set(const std::vector<std::string>& items);

/// Shortest decimal text that round-trips to the same double.
std::string format_number(double value);

/// Text used in the previous-answer segment of the next hop and in
/// prediction files: Scalar verbatim, Number via format_number, StringSet
/// joined with "; ", YesNoAnswer as "yes"/"no".
std::string render(const ExecResult& result);

/// Answer strings handed to the metric.
std::vector<std::string> answer_list(const ExecResult& result);

std::string_view result_type_name(const ExecResult& result);

}  // namespace hqa
