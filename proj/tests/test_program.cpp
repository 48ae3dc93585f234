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

#include "hqa/program.hpp"
#include "support.hpp"

using namespace hqa;

namespace {

ErrorKind parse_error_kind(std::string_view text) {
  try {
    parse(text);
  } catch (const ProgramError& e) {
    return e.kind();
  }
  FAIL("expected a parse error for " << text);
  return ErrorKind::InvalidData;
}

Program prog(std::string_view text) { return parse(text); }

}  // namespace

TEST_SUITE("program") {

TEST_CASE("parse atoms and nested programs") {
  auto p = parse("SPAN(86,89)");
  CHECK(p.root == OpNode::atom(OpKind::Span, 86, 89));
  CHECK(p.hop == 1);

  auto a = parse("ARGMAX(KV(CELL(1,2),CELL_VALUE(3,4)),KV(CELL(5,6),CELL_VALUE(7,8)))");
  REQUIRE(a.root.kind == OpKind::ArgMax);
  REQUIRE(a.root.children.size() == 2);
  CHECK(a.root.children[1].children[1] == OpNode::atom(OpKind::CellValue, 7, 8));

  // Whitespace and case are not significant.
  CHECK(parse("  multispan( cell(1 ,2) ,\tSPAN(3,4) ) ") ==
        parse("MULTISPAN(CELL(1,2),SPAN(3,4))"));
  CHECK(parse("CELL(1,2)", 2).hop == 2);
}

TEST_CASE("parse rejects malformed input with typed errors") {
  CHECK(parse_error_kind("") == ErrorKind::SyntaxError);
  CHECK(parse_error_kind("SPAN(1") == ErrorKind::SyntaxError);
  CHECK(parse_error_kind("SPAN(1,2)x") == ErrorKind::SyntaxError);
  CHECK(parse_error_kind("FOO(1,2)") == ErrorKind::SyntaxError);
  CHECK(parse_error_kind("SPAN(-1,2)") == ErrorKind::SyntaxError);
  CHECK(parse_error_kind("SPAN(99999999999999999999999,1)") == ErrorKind::SyntaxError);
  CHECK(parse_error_kind("SPAN(1,2,3)") == ErrorKind::ArityError);
  CHECK(parse_error_kind("KV(CELL(1,2))") == ErrorKind::ArityError);
  CHECK(parse_error_kind("MULTISPAN()") == ErrorKind::SyntaxError);
  CHECK(parse_error_kind("SUM(CELL(1,2))") == ErrorKind::ChildKindError);
  CHECK(parse_error_kind("SPAN(CELL(1,2),3)") == ErrorKind::ChildKindError);
  CHECK(parse_error_kind("COMPOSE(MULTISPAN(CELL(71,76),CELL(100,101)))") ==
        ErrorKind::ChildKindError);
  CHECK(parse_error_kind("MULTISPAN(COMPOSE(CELL(1,2)))") == ErrorKind::ChildKindError);
  // A bare KV is well formed; rejecting it as a root is validate()'s job.
  CHECK_NOTHROW(parse("KV(CELL(1,2),CELL_VALUE(3,4))"));

  try {
    parse("SUM(CELL_VALUE(1,2),SPAN(3,4))");
    FAIL("accepted");
  } catch (const ProgramError& e) {
    CHECK(e.kind() == ErrorKind::ChildKindError);
    CHECK(e.node() == "SUM");
    CHECK(e.position() > 0);
  }
}

TEST_CASE("print is canonical") {
  CHECK(print(OpNode::atom(OpKind::Span, 86, 89)) == "SPAN(86,89)");
  CHECK(print(OpNode::op(OpKind::Intersect,
                         {OpNode::op(OpKind::MultiSpan, {OpNode::atom(OpKind::Cell, 1, 2)})})) ==
        "INTERSECT(MULTISPAN(CELL(1,2)))");
  CHECK(print(parse(" yesno ( 1 , 3 ) ")) == "YESNO(1,3)");
}

TEST_CASE("op names") {
  for (auto k : kAllOpKinds) {
    CHECK(op_from_name(op_name(k)) == k);
  }
  CHECK(op_from_name("cell_value") == OpKind::CellValue);
  CHECK_FALSE(op_from_name("CELLVALUE").has_value());
  CHECK(is_multihop(OpKind::Compose));
  CHECK(is_multihop(OpKind::Intersect));
  CHECK_FALSE(is_multihop(OpKind::MultiSpan));
}

TEST_CASE("structural_problem") {
  CHECK(structural_problem(OpNode::atom(OpKind::Cell, 1, 2)).empty());
  // Inverted ranges are an execution-time error, not a structural one.
  CHECK(structural_problem(OpNode::atom(OpKind::Cell, 3, 2)).empty());
  CHECK_FALSE(structural_problem(OpNode::op(OpKind::Sum, {})).empty());
  CHECK_FALSE(structural_problem(OpNode::op(OpKind::Compose, {OpNode::op(
      OpKind::Compose, {OpNode::atom(OpKind::Cell, 1, 1)})})).empty());
}

TEST_CASE("templates") {
  auto row = template_for(ReasoningType::Intersect);
  CHECK(row.hop1 == std::vector<OpKind>{OpKind::Intersect});
  CHECK(row.hop2 == std::vector<OpKind>{OpKind::MultiSpan});
  CHECK(row.hop_count() == 2);

  row = template_for(ReasoningType::Calculation);
  CHECK(row.hop1 == std::vector<OpKind>{OpKind::Sum, OpKind::Avg, OpKind::Count});
  CHECK(row.hop2.empty());

  row = template_for(ReasoningType::YesNo);
  CHECK(row.hop1 == std::vector<OpKind>{OpKind::YesNo});
  CHECK(row.hop_count() == 1);

  row = template_for(ReasoningType::ComposeSpan);
  CHECK(row.hop1 == std::vector<OpKind>{OpKind::Compose});
  CHECK(row.hop2 == std::vector<OpKind>{OpKind::Cell, OpKind::Span});

  for (auto t : kAllReasoningTypes) {
    CHECK(reasoning_type_from_name(reasoning_type_name(t)) == t);
  }
  CHECK_FALSE(reasoning_type_from_name("Compose_Compare").has_value());
}

TEST_CASE("validate hop placement") {
  CHECK(validate(prog("COMPOSE(CELL(1,2))"), 1).empty());
  CHECK_FALSE(validate(prog("INTERSECT(MULTISPAN(CELL(1,2)))"), 2).empty());
  CHECK(validate(prog("MULTISPAN(CELL(1,2))"), 2, OpKind::Intersect).empty());
  CHECK_FALSE(validate(prog("SUM(CELL_VALUE(1,2))"), 2, OpKind::Intersect).empty());
  CHECK(validate(prog("YESNO(0,0)"), 2, OpKind::Compose).empty());
  CHECK_FALSE(validate(prog("ARGMAX(KV(CELL(1,2),CELL_VALUE(3,4)),KV(CELL(5,6),CELL_VALUE(7,8)))"),
                       2).empty());
  CHECK_FALSE(validate(prog("CELL(1,2)"), 3).empty());
  CHECK_FALSE(validate(prog("COMPOSE(CELL(1,2))"), 2).empty());
  CHECK_FALSE(validate(prog("KV(CELL(1,2),CELL_VALUE(3,4))"), 1).empty());
}

TEST_CASE("is_multihop_root") {
  CHECK(is_multihop_root(prog("COMPOSE(SPAN(1,2))")));
  CHECK(is_multihop_root(prog("INTERSECT(MULTISPAN(SPAN(1,2)))")));
  CHECK_FALSE(is_multihop_root(prog("YESNO(0,0)")));
  CHECK_FALSE(is_multihop_root(
      prog("ARGMAX(KV(CELL(1,2),CELL_VALUE(3,4)),KV(CELL(5,6),CELL_VALUE(7,8)))")));
}

TEST_CASE("property: parse(print(p)) == p over random ASTs") {
  std::mt19937 rng(7);
  for (int i = 0; i < 2000; ++i) {
    const auto node = testing::random_program(rng);
    REQUIRE(structural_problem(node).empty());
    const auto text = print(node);
    CHECK(parse_node(text) == node);
    CHECK(print(parse_node(text)) == text);
  }
}

TEST_CASE("property: mutated strings parse or fail with a typed error") {
  std::mt19937 rng(11);
  for (int i = 0; i < 2000; ++i) {
    const auto text = testing::mutate(rng, print(testing::random_program(rng, 300)));
    try {
      auto p = parse(text);
      CHECK(structural_problem(p.root).empty());
    } catch (const ProgramError&) {
    } catch (...) {
      FAIL("untyped failure on " << text);
    }
  }
}

}  // TEST_SUITE
