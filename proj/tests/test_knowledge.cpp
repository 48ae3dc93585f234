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


#include <doctest.h>

#include <random>

#include "hqa/error.hpp"
#include "hqa/knowledge.hpp"
#include "support.hpp"

using namespace hqa;
using Tokens = std::vector<std::string>;

TEST_SUITE("knowledge") {

TEST_CASE("tokenize splits words and punctuation") {
  CHECK(tokenize("Who won in 1994?") == Tokens{"Who", "won", "in", "1994", "?"});
  CHECK(tokenize("").empty());
  CHECK(tokenize("   \t\n").empty());
  CHECK(tokenize("U.S.-based") == testing::golden_tokens("tokenize_us_based.json"));
  CHECK(tokenize("São Paulo") == Tokens{"São", "Paulo"});
  CHECK(tokenize("6,650 km") == Tokens{"6", ",", "650", "km"});
}

TEST_CASE("tokenize_with_offsets points back into the text") {
  const std::string text = "  Rio de Janeiro, Brazil.";
  for (const auto& t : tokenize_with_offsets(text)) {
    CHECK(text.substr(t.offset, t.text.size()) == t.text);
  }
}

TEST_CASE("punctuation tokens") {
  CHECK(is_punctuation_token("?"));
  CHECK(is_punctuation_token(";"));
  CHECK_FALSE(is_punctuation_token("a"));
  CHECK_FALSE(is_punctuation_token("7"));
  CHECK_FALSE(is_punctuation_token("ab"));
}

TEST_CASE("table validation") {
  CHECK_THROWS_AS(Table("t", {"A", "B"}, {{"1"}}), Error);
  CHECK_THROWS_AS(Table("t", {""}, {{"1"}}), Error);
  CHECK_THROWS_AS(Table("t", {"A"}, {{"bad\x01"}}), Error);
  try {
    Table("t", {"A", "B"}, {{"1", "2"}, {"3"}});
    FAIL("ragged table accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidData);
  }
  Table ok("t", {"A", "B"}, {{"1", "2"}, {"3", "4"}});
  CHECK(ok.num_rows() == 2);
  CHECK(ok.num_cols() == 2);
  CHECK(ok.cell(1, 0).text == "3");
  CHECK(ok.rows() == std::vector<Tokens>{{"1", "2"}, {"3", "4"}});
}

TEST_CASE("knowledge set validation") {
  Table t("t", {"A"}, {{"1"}});
  CHECK_THROWS_AS(KnowledgeSet(t, {{"p", "", ""}}), Error);
  CHECK_THROWS_AS(KnowledgeSet(t, {{"p", "", "x"}, {"p", "", "y"}}), Error);
  CHECK_THROWS_AS(KnowledgeSet(t, {{"t", "", "x"}}), Error);
  KnowledgeSet ks(t, {{"p1", "", "x"}, {"p2", "T", "y"}});
  CHECK(ks.candidate_count() == 3);
  CHECK(ks.candidate_id(0) == "t");
  CHECK(ks.candidate_id(2) == "p2");
  CHECK(ks.find_candidate("p1") == std::optional<std::size_t>(1));
  CHECK_FALSE(ks.find_candidate("zz").has_value());
}

TEST_CASE("flatten_table") {
  SUBCASE("1x1 table") {
    auto f = flatten_table(Table("t", {"Year"}, {{"1994"}}));
    CHECK(f.tokens == Tokens{"HEADER", ":", "Year", "[ROW]", "1994"});
    CHECK(f.sources[4].kind == SourceKind::TableCell);
    CHECK(f.sources[2].kind == SourceKind::TableHeader);
    CHECK(f.sources[3].kind == SourceKind::TableSentinel);
  }
  SUBCASE("2x2 table is row-major with one [ROW] per row") {
    auto f = flatten_table(Table("t", {"A", "B"}, {{"1", "2"}, {"3", "4"}}));
    CHECK(f.tokens ==
          Tokens{"HEADER", ":", "A", "|", "B", "[ROW]", "1", "|", "2", "[ROW]", "3", "|", "4"});
    CHECK(f.sources[10].row == 1);
    CHECK(f.sources[10].col == 0);
    CHECK(f.sources[12].col == 1);
  }
  SUBCASE("toy table golden") {
    auto records = testing::toy_records();
    const auto& r = testing::find_record(records, "q01");
    CHECK(flatten_table(r.knowledge.table()).tokens ==
          testing::golden_tokens("flatten_t_best_picture.json"));
  }
}

TEST_CASE("passage surface includes the title") {
  CHECK(Passage{"p", "Nile", "A river."}.surface() == "Nile : A river.");
  CHECK(Passage{"p", "", "A river."}.surface() == "A river.");
  auto f = flatten_passage(Passage{"p", "Nile", "A river."}, 3);
  CHECK(f.tokens == Tokens{"Nile", ":", "A", "river", "."});
  for (const auto& s : f.sources) {
    CHECK(s.candidate == 3);
    CHECK(s.kind == SourceKind::PassageText);
  }
}

TEST_CASE("serialize layout") {
  Table t("t", {"A"}, {{"1"}});
  KnowledgeSet ks(t, {{"p", "", "It is red."}});

  SUBCASE("hop 1 with prefix") {
    auto in = serialize_input("Is it red?", std::nullopt, ks, 1, true);
    CHECK(in.tokens == Tokens{"[BOS]", "yes", "or", "no", "Is", "it", "red", "?", "[SEP]",
                              "None", "[SEP]", "It", "is", "red", "."});
    CHECK(in.segment(Region::Prefix) == Segment{0, 4});
    CHECK(in.segment(Region::Question) == Segment{4, 9});
    CHECK(in.segment(Region::PrevAnswer) == Segment{9, 11});
    CHECK(in.segment(Region::Fact) == Segment{11, 15});
    CHECK(in.fact_region_tokens() == Tokens{"It", "is", "red", "."});
  }
  SUBCASE("scalar previous answer") {
    auto in = serialize_input("Q?", ExecResult{Scalar{"Paris"}}, ks, 1, true);
    const auto seg = in.segment(Region::PrevAnswer);
    CHECK(Tokens(in.tokens.begin() + seg.begin, in.tokens.begin() + seg.end - 1) ==
          Tokens{"Paris"});
  }
  SUBCASE("set previous answer") {
    auto in = serialize_input("Q?", ExecResult{make_string_set({"A", "B"})}, ks, 1, true);
    const auto seg = in.segment(Region::PrevAnswer);
    CHECK(Tokens(in.tokens.begin() + seg.begin, in.tokens.begin() + seg.end - 1) ==
          testing::golden_tokens("prev_set_tokens.json"));
  }
  SUBCASE("without prefix") {
    auto in = serialize_input("Q?", std::nullopt, ks, 0, false);
    CHECK(in.tokens.front() == "[BOS]");
    CHECK(in.tokens[1] == "Q");
    CHECK(in.segment(Region::Prefix) == Segment{0, 1});
  }
}

TEST_CASE("span_text") {
  auto in = serialize_parts("q", std::nullopt, flatten_passage({"p", "", "a b c"}, 1), true);
  const auto f = in.segment(Region::Fact).begin;
  CHECK(span_text(in, f + 1, f + 2) == "b c");
  CHECK(span_text(in, f, f) == "a");
  CHECK(span_text(in, 0, 0) == "[BOS]");
  try {
    span_text(in, f + 2, f);
    FAIL("inverted range accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidRange);
  }
  try {
    span_text(in, 0, in.tokens.size());
    FAIL("out-of-range index accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::IndexOutOfBounds);
  }
}

TEST_CASE("span_text reproduces source text verbatim") {
  auto in = serialize_parts("q", std::nullopt,
                            flatten_passage({"p", "", "Schindler's List, U.S.-based"}, 1), true);
  const auto f = in.segment(Region::Fact).begin;
  CHECK(span_text(in, f, f + 3) == "Schindler's List");
  CHECK(span_text(in, f + 5, in.tokens.size() - 1) == "U.S.-based");
  // Cross-source spans fall back to the join rule.
  CHECK(detokenize({"a", ",", "b", "?"}) == "a, b?");
}

TEST_CASE("property: provenance covers every fact token and round-trips cells") {
  auto records = testing::toy_records();
  for (const auto& r : records) {
    for (std::size_t c = 0; c < r.knowledge.candidate_count(); ++c) {
      auto a = serialize_input(r.question, std::nullopt, r.knowledge, c, true);
      auto b = serialize_input(r.question, std::nullopt, r.knowledge, c, true);
      CHECK(a == b);
      const auto fact = a.segment(Region::Fact);
      CHECK(fact.end == a.tokens.size());
      for (std::size_t i = 0; i < a.tokens.size(); ++i) {
        const bool in_fact = i >= fact.begin && i < fact.end;
        REQUIRE(a.provenance[i].has_value() == in_fact);
        if (!in_fact) continue;
        const auto& src = *a.provenance[i];
        CHECK(src.candidate == c);
        if (src.kind != SourceKind::TableSentinel) {
          CHECK(a.source_texts[src.text_id].substr(src.offset, src.length) == a.tokens[i]);
        }
      }
      if (c != 0) continue;
      // Every cell's token range resolves back to the cell text.
      const auto& table = r.knowledge.table();
      for (const auto& cell : table.cells()) {
        std::optional<std::size_t> s, e;
        for (std::size_t i = fact.begin; i < fact.end; ++i) {
          const auto& src = *a.provenance[i];
          if (src.kind == SourceKind::TableCell && src.row == cell.row && src.col == cell.col) {
            if (!s) s = i;
            e = i;
          }
        }
        REQUIRE(s.has_value());
        CHECK(span_text(a, *s, *e) == cell.text);
      }
    }
  }
}

}  // TEST_SUITE
