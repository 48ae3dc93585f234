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

#include "hqa/exec_result.hpp"

namespace hqa {

inline constexpr std::string_view kBosToken = "[BOS]";
inline constexpr std::string_view kSepToken = "[SEP]";
inline constexpr std::string_view kRowToken = "[ROW]";
inline constexpr std::string_view kHeaderToken = "HEADER";
inline constexpr std::string_view kNoneAnswer = "None";

struct Cell {
  std::size_t row = 0;
  std::size_t col = 0;
  std::string text;
};

/// Dense m x n grid of cells with one header per column.
class Table {
 public:
  Table() = default;
  /// Throws Error(InvalidData) when rows are ragged, a header is empty, or a
  /// cell holds control characters.
  Table(std::string id, std::vector<std::string> headers,
        const std::vector<std::vector<std::string>>& rows);

  const std::string& id() const { return id_; }
  const std::vector<std::string>& headers() const { return headers_; }
  std::size_t num_rows() const { return num_rows_; }
  std::size_t num_cols() const { return headers_.size(); }
  const Cell& cell(std::size_t row, std::size_t col) const;
  const std::vector<Cell>& cells() const { return cells_; }
  std::vector<std::vector<std::string>> rows() const;

 private:
  std::string id_;
  std::vector<std::string> headers_;
  std::size_t num_rows_ = 0;
  std::vector<Cell> cells_;  // row-major
};

struct Passage {
  std::string id;
  std::string title;
  std::string text;

  /// "title : text" when the title is non-empty, otherwise the text.
  std::string surface() const;
};

/// One table plus the passages of a question. Candidate 0 is the table,
/// candidate i > 0 is passages[i - 1].
class KnowledgeSet {
 public:
  KnowledgeSet() = default;
  KnowledgeSet(Table table, std::vector<Passage> passages);

  const Table& table() const { return table_; }
  const std::vector<Passage>& passages() const { return passages_; }
  std::size_t candidate_count() const { return 1 + passages_.size(); }
  const std::string& candidate_id(std::size_t index) const;
  std::optional<std::size_t> find_candidate(std::string_view id) const;

 private:
  Table table_;
  std::vector<Passage> passages_;
};

std::vector<std::string> tokenize(std::string_view text);

struct TokenSpan {
  std::string text;
  std::size_t offset = 0;
};

/// tokenize() plus the byte offset of every token in the input.
std::vector<TokenSpan> tokenize_with_offsets(std::string_view text);

/// True for single-character tokens that are not letters or digits.
bool is_punctuation_token(std::string_view token);

enum class SourceKind { TableHeader, TableCell, TableSentinel, PassageText };

/// Where a fact token came from. `text_id` indexes FactTokens::texts, and
/// [offset, offset + length) is the token's bytes inside that text.
struct TokenSource {
  std::size_t candidate = 0;
  SourceKind kind = SourceKind::TableSentinel;
  std::size_t row = 0;
  std::size_t col = 0;
  std::size_t text_id = 0;
  std::size_t offset = 0;
  std::size_t length = 0;

  bool operator==(const TokenSource&) const = default;
};

struct FactTokens {
  std::vector<std::string> tokens;
  std::vector<TokenSource> sources;
  std::vector<std::string> texts;
};

FactTokens flatten_table(const Table& table);
FactTokens flatten_passage(const Passage& passage, std::size_t candidate);
FactTokens fact_tokens(const KnowledgeSet& ks, std::size_t candidate);

enum class Region { Prefix, Question, PrevAnswer, Fact };

/// Half-open token range. Every region but Fact ends with its separator.
struct Segment {
  std::size_t begin = 0;
  std::size_t end = 0;
  bool operator==(const Segment&) const = default;
};

/// The token sequence programs index into, with provenance for the fact
/// region.
struct SerializedInput {
  std::vector<std::string> tokens;
  std::array<Segment, 4> segments{};
  std::vector<std::optional<TokenSource>> provenance;  // aligned with tokens
  std::vector<std::string> source_texts;
  std::size_t candidate = 0;

  const Segment& segment(Region region) const {
    return segments[static_cast<std::size_t>(region)];
  }
  std::vector<std::string> fact_region_tokens() const;

  bool operator==(const SerializedInput&) const = default;
};

/// Layout: [BOS] (yes or no) Q [SEP] prev [SEP] fact. `prev_text` is the
/// rendered previous answer; nullopt stands for hop 1 and emits "None".
SerializedInput serialize_parts(std::string_view question,
                                const std::optional<std::string>& prev_text,
                                const FactTokens& fact,
                                bool with_yesno_prefix);

SerializedInput serialize_input(std::string_view question,
                                const std::optional<ExecResult>& prev,
                                const KnowledgeSet& ks, std::size_t candidate,
                                bool with_yesno_prefix);

/// Surface text of tokens[s..=e]. Tokens from a single source text are
/// reproduced verbatim from that text; otherwise tokens are joined with one
/// space, with no space before punctuation.
std::string span_text(const SerializedInput& input, std::size_t s,
                      std::size_t e);

/// Join rule used when no provenance applies.
std::string detokenize(const std::vector<std::string>& tokens);

}  // namespace hqa
