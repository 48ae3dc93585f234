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

#include <optional>
#include <string>
#include <vector>

#include "hqa/knowledge.hpp"
#include "hqa/program.hpp"

namespace hqa {

/// A (key, value) pair of surface strings for comparison questions.
struct KeyValueText {
  std::string key;
  std::string value;

  bool operator==(const KeyValueText&) const = default;
};

struct HopAnnotation {
  std::string gold_fact_id;
  std::vector<std::string> gold_answers;
  std::vector<std::string> operands;   // Calculation: the numeric spans
  std::vector<KeyValueText> pairs;     // Compare: the two compared entries
  std::optional<OpKind> operation;     // optional explicit root for Calculation/Compare

  bool operator==(const HopAnnotation&) const = default;
};

struct Annotation {
  std::string question_id;
  std::string question;
  std::string type_name;                     // as written in the dataset
  std::optional<ReasoningType> reasoning_type;  // nullopt for unsupported types
  std::vector<HopAnnotation> hops;
  std::vector<std::string> final_answers;

  bool operator==(const Annotation&) const = default;
};

/// One question with its candidate facts.
struct DatasetRecord {
  std::string question_id;
  std::string question;
  KnowledgeSet knowledge;
  std::optional<Annotation> annotation;
};

}  // namespace hqa
