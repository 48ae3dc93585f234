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


#include "hqa/exec_result.hpp"

#include <array>
#include <charconv>
#include <cctype>
#include <unordered_set>

namespace hqa {

std::string answer_key(std::string_view text) {
  std::string key;
  key.reserve(text.size());
  bool pending_space = false;
  for (char ch : text) {
    auto c = static_cast<unsigned char>(ch);
    if (std::isspace(c)) {
      pending_space = !key.empty();
      continue;
    }
    if (pending_space) {
      key.push_back(' ');
      pending_space = false;
    }
    key.push_back(static_cast<char>(std::tolower(c)));
  }
  return key;
}

StringSet make_string_set(const std::vector<std::string>& items) {
  StringSet set;
  std::unordered_set<std::string> seen;
  for (const auto& item : items) {
    if (seen.insert(answer_key(item)).second) set.items.push_back(item);
  }
  return set;
}

std::string format_number(double value) {
  if (value == 0.0) return "0";
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc{}) return "nan";
  return std::string(buf.data(), ptr);
}

std::string render(const ExecResult& result) {
  struct Visitor {
    std::string operator()(const Scalar& s) const { return s.text; }
    std::string operator()(const Number& n) const { return format_number(n.value); }
    std::string operator()(const StringSet& set) const {
      std::string out;
      for (std::size_t i = 0; i < set.items.size(); ++i) {
        if (i) out += "; ";
        out += set.items[i];
      }
      return out;
    }
    std::string operator()(const YesNoAnswer& yn) const {
      return yn.value == YesNo::No ? "no" : "yes";
    }
  };
  return std::visit(Visitor{}, result);
}

std::vector<std::string> answer_list(const ExecResult& result) {
  if (const auto* set = std::get_if<StringSet>(&result)) return set->items;
  return {render(result)};
}

std::string_view result_type_name(const ExecResult& result) {
  switch (result.index()) {
    case 0: return "scalar";
    case 1: return "number";
    case 2: return "set";
    default: return "yesno";
  }
}

}  // namespace hqa
