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


#include "hqa/knowledge.hpp"

#include <cctype>
#include <unordered_set>

#include "hqa/error.hpp"

namespace hqa {
namespace {

bool is_word_byte(unsigned char c) {
  // Non-ASCII bytes stay inside words so UTF-8 sequences are never split.
  return std::isalnum(c) || c >= 0x80;
}

bool is_space_byte(unsigned char c) { return std::isspace(c) != 0; }

bool has_control_chars(std::string_view text) {
  for (char ch : text) {
    auto c = static_cast<unsigned char>(ch);
    if (c < 0x20 || c == 0x7f) return true;
  }
  return false;
}

void push_sentinel(FactTokens& out, std::string_view token, std::size_t candidate) {
  out.tokens.emplace_back(token);
  out.sources.push_back(TokenSource{candidate, SourceKind::TableSentinel, 0, 0, 0, 0, 0});
}

void push_text(FactTokens& out, std::string_view text, TokenSource base) {
  base.text_id = out.texts.size();
  out.texts.emplace_back(text);
  for (auto& tok : tokenize_with_offsets(text)) {
    base.offset = tok.offset;
    base.length = tok.text.size();
    out.sources.push_back(base);
    out.tokens.push_back(std::move(tok.text));
  }
}

}  // namespace

Table::Table(std::string id, std::vector<std::string> headers,
             const std::vector<std::vector<std::string>>& rows)
    : id_(std::move(id)), headers_(std::move(headers)), num_rows_(rows.size()) {
  if (headers_.empty()) throw Error(ErrorKind::InvalidData, "table " + id_ + ": no columns");
  for (const auto& h : headers_) {
    if (h.empty()) throw Error(ErrorKind::InvalidData, "table " + id_ + ": empty header");
    if (has_control_chars(h))
      throw Error(ErrorKind::InvalidData, "table " + id_ + ": control character in header");
  }
  cells_.reserve(num_rows_ * headers_.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != headers_.size()) {
      throw Error(ErrorKind::InvalidData, "table " + id_ + ": row " + std::to_string(r) +
                                              " has " + std::to_string(rows[r].size()) +
                                              " cells, expected " +
                                              std::to_string(headers_.size()));
    }
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      if (has_control_chars(rows[r][c])) {
        throw Error(ErrorKind::InvalidData, "table " + id_ + ": control character in cell (" +
                                                std::to_string(r) + "," + std::to_string(c) + ")");
      }
      cells_.push_back(Cell{r, c, rows[r][c]});
    }
  }
}

const Cell& Table::cell(std::size_t row, std::size_t col) const {
  if (row >= num_rows_ || col >= num_cols())
    throw Error(ErrorKind::IndexOutOfBounds, "cell (" + std::to_string(row) + "," +
                                                 std::to_string(col) + ") outside table " + id_);
  return cells_[row * num_cols() + col];
}

std::vector<std::vector<std::string>> Table::rows() const {
  std::vector<std::vector<std::string>> out(num_rows_);
  for (const auto& c : cells_) out[c.row].push_back(c.text);
  return out;
}

std::string Passage::surface() const {
  if (title.empty()) return text;
  return title + " : " + text;
}

KnowledgeSet::KnowledgeSet(Table table, std::vector<Passage> passages)
    : table_(std::move(table)), passages_(std::move(passages)) {
  std::unordered_set<std::string> ids{table_.id()};
  for (const auto& p : passages_) {
    if (p.text.empty()) throw Error(ErrorKind::InvalidData, "passage " + p.id + ": empty text");
    if (!ids.insert(p.id).second)
      throw Error(ErrorKind::InvalidData, "duplicate candidate id " + p.id);
  }
}

const std::string& KnowledgeSet::candidate_id(std::size_t index) const {
  if (index == 0) return table_.id();
  if (index > passages_.size())
    throw Error(ErrorKind::IndexOutOfBounds, "candidate " + std::to_string(index));
  return passages_[index - 1].id;
}

std::optional<std::size_t> KnowledgeSet::find_candidate(std::string_view id) const {
  if (id == table_.id()) return 0;
  for (std::size_t i = 0; i < passages_.size(); ++i) {
    if (passages_[i].id == id) return i + 1;
  }
  return std::nullopt;
}

std::vector<TokenSpan> tokenize_with_offsets(std::string_view text) {
  std::vector<TokenSpan> out;
  std::size_t i = 0;
  while (i < text.size()) {
    auto c = static_cast<unsigned char>(text[i]);
    if (is_space_byte(c)) {
      ++i;
    } else if (is_word_byte(c)) {
      std::size_t j = i;
      while (j < text.size() && is_word_byte(static_cast<unsigned char>(text[j]))) ++j;
      out.push_back({std::string(text.substr(i, j - i)), i});
      i = j;
    } else {
      out.push_back({std::string(1, text[i]), i});
      ++i;
    }
  }
  return out;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  for (auto& t : tokenize_with_offsets(text)) out.push_back(std::move(t.text));
  return out;
}

bool is_punctuation_token(std::string_view token) {
  return token.size() == 1 && !is_word_byte(static_cast<unsigned char>(token[0])) &&
         !is_space_byte(static_cast<unsigned char>(token[0]));
}

FactTokens flatten_table(const Table& table) {
  FactTokens out;
  push_sentinel(out, kHeaderToken, 0);
  push_sentinel(out, ":", 0);
  for (std::size_t c = 0; c < table.num_cols(); ++c) {
    if (c) push_sentinel(out, "|", 0);
    push_text(out, table.headers()[c], TokenSource{0, SourceKind::TableHeader, 0, c, 0, 0, 0});
  }
  for (std::size_t r = 0; r < table.num_rows(); ++r) {
    push_sentinel(out, kRowToken, 0);
    for (std::size_t c = 0; c < table.num_cols(); ++c) {
      if (c) push_sentinel(out, "|", 0);
      push_text(out, table.cell(r, c).text, TokenSource{0, SourceKind::TableCell, r, c, 0, 0, 0});
    }
  }
  return out;
}

FactTokens flatten_passage(const Passage& passage, std::size_t candidate) {
  FactTokens out;
  push_text(out, passage.surface(),
            TokenSource{candidate, SourceKind::PassageText, 0, 0, 0, 0, 0});
  return out;
}

FactTokens fact_tokens(const KnowledgeSet& ks, std::size_t candidate) {
  if (candidate == 0) return flatten_table(ks.table());
  if (candidate > ks.passages().size())
    throw Error(ErrorKind::IndexOutOfBounds, "candidate " + std::to_string(candidate));
  return flatten_passage(ks.passages()[candidate - 1], candidate);
}

std::vector<std::string> SerializedInput::fact_region_tokens() const {
  const auto& seg = segment(Region::Fact);
  return {tokens.begin() + static_cast<std::ptrdiff_t>(seg.begin),
          tokens.begin() + static_cast<std::ptrdiff_t>(seg.end)};
}

SerializedInput serialize_parts(std::string_view question,
                                const std::optional<std::string>& prev_text,
                                const FactTokens& fact, bool with_yesno_prefix) {
  SerializedInput in;
  auto& toks = in.tokens;
  auto mark = [&](Region region, std::size_t begin) {
    in.segments[static_cast<std::size_t>(region)] = Segment{begin, toks.size()};
  };

  toks.emplace_back(kBosToken);
  if (with_yesno_prefix) {
    toks.emplace_back("yes");
    toks.emplace_back("or");
    toks.emplace_back("no");
  }
  mark(Region::Prefix, 0);

  std::size_t begin = toks.size();
  for (auto& t : tokenize(question)) toks.push_back(std::move(t));
  toks.emplace_back(kSepToken);
  mark(Region::Question, begin);

  begin = toks.size();
  if (prev_text) {
    for (auto& t : tokenize(*prev_text)) toks.push_back(std::move(t));
  } else {
    toks.emplace_back(kNoneAnswer);
  }
  toks.emplace_back(kSepToken);
  mark(Region::PrevAnswer, begin);

  begin = toks.size();
  toks.insert(toks.end(), fact.tokens.begin(), fact.tokens.end());
  mark(Region::Fact, begin);

  in.provenance.assign(begin, std::nullopt);
  in.provenance.insert(in.provenance.end(), fact.sources.begin(), fact.sources.end());
  in.source_texts = fact.texts;
  in.candidate = fact.sources.empty() ? 0 : fact.sources.front().candidate;
  return in;
}

SerializedInput serialize_input(std::string_view question, const std::optional<ExecResult>& prev,
                                const KnowledgeSet& ks, std::size_t candidate,
                                bool with_yesno_prefix) {
  std::optional<std::string> prev_text;
  if (prev) prev_text = render(*prev);
  auto in = serialize_parts(question, prev_text, fact_tokens(ks, candidate), with_yesno_prefix);
  in.candidate = candidate;
  return in;
}

std::string detokenize(const std::vector<std::string>& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i && !is_punctuation_token(tokens[i])) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

std::string span_text(const SerializedInput& input, std::size_t s, std::size_t e) {
  const auto n = input.tokens.size();
  if (s >= n || e >= n) {
    throw Error(ErrorKind::IndexOutOfBounds, "span (" + std::to_string(s) + "," +
                                                 std::to_string(e) + ") outside " +
                                                 std::to_string(n) + " tokens");
  }
  if (s > e) {
    throw Error(ErrorKind::InvalidRange,
                "span start " + std::to_string(s) + " after end " + std::to_string(e));
  }

  const auto& first = input.provenance[s];
  bool verbatim = first && first->kind != SourceKind::TableSentinel &&
                  first->text_id < input.source_texts.size();
  for (std::size_t i = s + 1; verbatim && i <= e; ++i) {
    const auto& p = input.provenance[i];
    verbatim = p && p->kind != SourceKind::TableSentinel && p->text_id == first->text_id;
  }
  if (verbatim) {
    const auto& last = *input.provenance[e];
    const auto& text = input.source_texts[first->text_id];
    return text.substr(first->offset, last.offset + last.length - first->offset);
  }

  return detokenize({input.tokens.begin() + static_cast<std::ptrdiff_t>(s),
                     input.tokens.begin() + static_cast<std::ptrdiff_t>(e) + 1});
}

}  // namespace hqa
