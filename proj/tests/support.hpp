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


// Test-only helpers: fixtures, random generators and brute-force oracles.
// Nothing here calls into the executor; oracles work from the generated
// ground truth.
#pragma once

#include <algorithm>
#include <cctype>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hqa/dataset.hpp"
#include "hqa/knowledge.hpp"
#include "hqa/program.hpp"

#ifndef HQA_SOURCE_DIR
#define HQA_SOURCE_DIR "."
#endif

namespace hqa::testing {

inline std::string source_path(const std::string& rel) { return std::string(HQA_SOURCE_DIR) + "/" + rel; }

inline std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream buf;
  buf << f.rdbuf();
  return buf.str();
}

inline std::vector<DatasetRecord> toy_records() {
  auto data = load_dataset(source_path("data/toy.jsonl"), false);
  return data.records;
}

inline const DatasetRecord& find_record(const std::vector<DatasetRecord>& records, const std::string& id) {
  for (const auto& r : records) {
    if (r.question_id == id) return r;
  }
  throw std::runtime_error("no record " + id);
}

inline std::vector<std::string> golden_tokens(const std::string& name) {
  return Json::parse(read_file(source_path("tests/golden/" + name))).get<std::vector<std::string>>();
}

/// Case-insensitive, whitespace-collapsed key computed independently of the
/// library's answer_key.
inline std::string oracle_key(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!out.empty() && out.back() != ' ') out.push_back(' ');
    } else {
      out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
  }
  while (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

/// Double-loop intersection preserving the order of `a`.
inline std::vector<std::string> oracle_intersection(const std::vector<std::string>& a,
                                                    const std::vector<std::string>& b) {
  std::vector<std::string> out;
  for (const auto& x : a) {
    bool found = false;
    for (const auto& y : b) found = found || oracle_key(x) == oracle_key(y);
    if (found) out.push_back(x);
  }
  return out;
}

/// A serialized input whose fact region is a passage of single-token words
/// and integers, with the ground-truth value of every fact token recorded.
struct RandomFact {
  SerializedInput input;
  std::vector<std::size_t> number_positions;  // token indices holding integers
  std::vector<long long> numbers;             // aligned with number_positions
  std::vector<std::size_t> word_positions;
  std::vector<std::string> words;             // aligned with word_positions
};

inline RandomFact random_fact(std::mt19937& rng, std::size_t length = 24) {
  static const std::vector<std::string> vocab = {"alpha", "Beta",  "gamma", "delta", "Echo",
                                                 "fox",   "golf",  "hotel", "india", "Juliet",
                                                 "kilo",  "lima",  "Mike",  "nova",  "oscar"};
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<long long> value(0, 100000);
  std::uniform_int_distribution<std::size_t> pick(0, vocab.size() - 1);
  std::vector<std::string> fact;
  std::vector<bool> is_number;
  for (std::size_t i = 0; i < length; ++i) {
    if (coin(rng)) {
      fact.push_back(std::to_string(value(rng)));
      is_number.push_back(true);
    } else {
      fact.push_back(vocab[pick(rng)]);
      is_number.push_back(false);
    }
  }
  std::string text;
  for (const auto& t : fact) text += (text.empty() ? "" : " ") + t;

  RandomFact out;
  out.input = serialize_parts("random question ?", std::nullopt,
                              flatten_passage(Passage{"p", "", text}, 1), true);
  const auto begin = out.input.segment(Region::Fact).begin;
  for (std::size_t i = 0; i < fact.size(); ++i) {
    if (is_number[i]) {
      out.number_positions.push_back(begin + i);
      out.numbers.push_back(std::stoll(fact[i]));
    } else {
      out.word_positions.push_back(begin + i);
      out.words.push_back(fact[i]);
    }
  }
  return out;
}

/// Random structurally valid program tree with root `kind` and indices below
/// `max_index`.
inline OpNode random_node(std::mt19937& rng, OpKind kind, std::size_t max_index) {
  std::uniform_int_distribution<std::size_t> idx(0, max_index);
  std::uniform_int_distribution<int> count(1, 5);
  std::uniform_int_distribution<int> coin(0, 1);
  auto atom = [&](OpKind k) {
    auto a = idx(rng), b = idx(rng);
    return OpNode::atom(k, std::min(a, b), std::max(a, b));
  };
  auto text_atom = [&] { return atom(coin(rng) ? OpKind::Cell : OpKind::Span); };
  auto value_atom = [&] { return atom(coin(rng) ? OpKind::CellValue : OpKind::SpanValue); };
  auto kv = [&] { return OpNode::op(OpKind::Kv, {text_atom(), value_atom()}); };
  auto many = [&](auto make) {
    std::vector<OpNode> out;
    for (int i = count(rng); i > 0; --i) out.push_back(make());
    return out;
  };
  switch (kind) {
    case OpKind::Cell:
    case OpKind::Span:
    case OpKind::CellValue:
    case OpKind::SpanValue:
    case OpKind::YesNo:
      return atom(kind);
    case OpKind::Kv:
      return kv();
    case OpKind::MultiSpan:
      return OpNode::op(kind, many(text_atom));
    case OpKind::Count:
    case OpKind::Sum:
    case OpKind::Avg:
      return OpNode::op(kind, many(value_atom));
    case OpKind::ArgMax:
    case OpKind::ArgMin:
      return OpNode::op(kind, {kv(), kv()});
    case OpKind::Compose:
      return OpNode::op(kind, {text_atom()});
    case OpKind::Intersect:
      return OpNode::op(kind, {OpNode::op(OpKind::MultiSpan, many(text_atom))});
  }
  return atom(OpKind::Span);
}

inline OpNode random_program(std::mt19937& rng, std::size_t max_index = 100000) {
  std::uniform_int_distribution<std::size_t> k(0, kAllOpKinds.size() - 1);
  return random_node(rng, kAllOpKinds[k(rng)], max_index);
}

/// Random edit of a program string: delete, insert, replace or duplicate.
inline std::string mutate(std::mt19937& rng, std::string text) {
  static const std::string alphabet = "(),0123456789 CELLSPANVUMKXYZ_-x\t";
  std::uniform_int_distribution<int> op(0, 4);
  std::uniform_int_distribution<int> edits(1, 3);
  for (int n = edits(rng); n > 0; --n) {
    if (text.empty()) {
      text = "(";
      continue;
    }
    std::uniform_int_distribution<std::size_t> pos(0, text.size() - 1);
    std::uniform_int_distribution<std::size_t> ch(0, alphabet.size() - 1);
    const auto p = pos(rng);
    switch (op(rng)) {
      case 0: text.erase(p, 1); break;
      case 1: text.insert(p, 1, alphabet[ch(rng)]); break;
      case 2: text[p] = alphabet[ch(rng)]; break;
      case 3: text.insert(p, text.substr(p, std::min<std::size_t>(8, text.size() - p))); break;
      default: text = text.substr(0, p); break;
    }
  }
  return text;
}

}  // namespace hqa::testing
