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
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "hqa/program.hpp"

namespace hqa {

/// Lower-case, drop punctuation, drop the articles a/an/the, collapse
/// whitespace.
std::string normalize(std::string_view answer);

/// Token F1 between two answers after normalization.
double token_f1(std::string_view pred, std::string_view gold);

struct Score {
  double em = 0.0;
  double f1 = 0.0;
};

/// EM: normalized multisets are equal. F1: greedy one-to-one matching by
/// descending pair F1, summed and divided by max(|pred|, |gold|). Throws
/// Error(EmptyGold) when `gold` is empty.
Score score(const std::vector<std::string>& pred, const std::vector<std::string>& gold);

enum class KnowledgeKind { Table, Text, Both };

std::string_view knowledge_kind_name(KnowledgeKind kind);

struct ScoredItem {
  std::string question_id;
  double em = 0.0;
  double f1 = 0.0;
  std::string reasoning_type;
  int hop_count = 1;
  KnowledgeKind knowledge_kind = KnowledgeKind::Table;
};

struct GroupStats {
  std::size_t count = 0;
  double em = 0.0;  // means
  double f1 = 0.0;
};

struct BreakdownReport {
  GroupStats overall;
  GroupStats single_hop;
  GroupStats multi_hop;
  std::map<std::string, GroupStats> by_knowledge;
  std::map<std::string, GroupStats> by_type;
};

BreakdownReport breakdown(const std::vector<ScoredItem>& items);

std::string report_json(const BreakdownReport& report);
std::string report_table(const BreakdownReport& report);

}  // namespace hqa
