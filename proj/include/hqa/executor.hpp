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

#include "hqa/exec_result.hpp"
#include "hqa/knowledge.hpp"
#include "hqa/program.hpp"

namespace hqa {

struct NumericLiteral {
  std::string raw;
  double value = 0.0;
};

/// Accepts signed decimals with optional leading currency symbol, thousands
/// separators and a trailing "%" (which divides by 100). Throws
/// Error(NonNumericSpan) when nothing numeric remains.
double parse_numeric(std::string_view text);
NumericLiteral parse_literal(std::string_view text);

/// Evaluates a program bottom-up against the serialization its indices refer
/// to. Failures are thrown as hqa::Error.
ExecResult execute(const OpNode& node, const SerializedInput& input);
ExecResult execute(const Program& program, const SerializedInput& input);

/// Items of `hop1` that also occur in `hop2` (answer_key equality), in hop-1
/// order.
StringSet intersect_finalize(const StringSet& hop1, const StringSet& hop2);

}  // namespace hqa
