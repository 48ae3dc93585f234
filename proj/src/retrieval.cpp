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


#include "hqa/retrieval.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>

#include "hqa/error.hpp"

namespace hqa {
namespace {

bool is_structural(std::string_view token) {
  return token == kBosToken || token == kSepToken || token == kRowToken || token == kHeaderToken;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace

std::size_t argmax(const ScoreVector& scores) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < scores.size(); ++i) {
    if (scores[i] > scores[best]) best = i;
  }
  return best;
}

std::size_t select(std::string_view question_id, std::string_view question,
                   const std::optional<ExecResult>& prev, const KnowledgeSet& ks, int hop,
                   const Retriever& retriever) {
  const RetrievalQuery query{question_id, question, &prev, &ks, hop};
  const auto scores = retriever.score(query);
  if (scores.size() != ks.candidate_count()) {
    throw Error(ErrorKind::InvalidData, "retriever returned " + std::to_string(scores.size()) +
                                            " scores for " +
                                            std::to_string(ks.candidate_count()) + " candidates");
  }
  return argmax(scores);
}

std::vector<std::string> index_terms(const std::vector<std::string>& tokens) {
  std::set<std::string> seen;
  std::vector<std::string> out;
  for (const auto& t : tokens) {
    if (is_structural(t) || is_punctuation_token(t)) continue;
    auto term = lower(t);
    if (seen.insert(term).second) out.push_back(std::move(term));
  }
  return out;
}

CandidateIdf::CandidateIdf(const KnowledgeSet& ks) : count_(ks.candidate_count()) {
  terms_.reserve(count_);
  for (std::size_t i = 0; i < count_; ++i) {
    terms_.push_back(index_terms(fact_tokens(ks, i).tokens));
    for (const auto& term : terms_.back()) ++document_frequency_[term];
  }
}

double CandidateIdf::weight(const std::string& term) const {
  auto it = document_frequency_.find(term);
  if (it == document_frequency_.end()) return 0.0;
  return std::log(1.0 + static_cast<double>(count_) / static_cast<double>(it->second));
}

double lexical_score(std::string_view question, const std::optional<ExecResult>& prev,
                     const KnowledgeSet& ks, std::size_t candidate, const CandidateIdf& idf) {
  // Same layout the retriever input uses: question, previous answer, fact.
  const auto input = serialize_input(question, prev, ks, candidate, false);
  std::vector<std::string> query_tokens;
  const auto& q = input.segment(Region::Question);
  const auto& p = input.segment(Region::PrevAnswer);
  for (std::size_t i = q.begin; i < q.end; ++i) query_tokens.push_back(input.tokens[i]);
  if (prev) {
    for (std::size_t i = p.begin; i < p.end; ++i) query_tokens.push_back(input.tokens[i]);
  }

  const auto fact_terms = index_terms(input.fact_region_tokens());
  const std::set<std::string> fact_set(fact_terms.begin(), fact_terms.end());
  double score = 0.0;
  for (const auto& term : index_terms(query_tokens)) {
    if (fact_set.count(term)) score += idf.weight(term);
  }
  return score;
}

ScoreVector LexicalRetriever::score(const RetrievalQuery& query) const {
  const auto& ks = *query.knowledge;
  const CandidateIdf idf(ks);
  static const std::optional<ExecResult> kNone;
  const auto& prev = query.prev ? *query.prev : kNone;
  ScoreVector scores(ks.candidate_count());
  for (std::size_t i = 0; i < scores.size(); ++i) {
    scores[i] = lexical_score(query.question, prev, ks, i, idf);
  }
  return scores;
}

double gold_score(const GoldFacts& gold, std::string_view question_id, std::size_t candidate,
                  int hop) {
  auto it = gold.find(question_id);
  if (it == gold.end() || hop < 1 || static_cast<std::size_t>(hop) > it->second.size()) {
    throw Error(ErrorKind::MissingAnnotation, "no gold fact for question " +
                                                  std::string(question_id) + " hop " +
                                                  std::to_string(hop));
  }
  return it->second[static_cast<std::size_t>(hop - 1)] == candidate ? 1.0 : 0.0;
}

ScoreVector GoldRetriever::score(const RetrievalQuery& query) const {
  ScoreVector scores(query.knowledge->candidate_count());
  for (std::size_t i = 0; i < scores.size(); ++i) {
    scores[i] = gold_score(gold_, query.question_id, i, query.hop);
  }
  return scores;
}

}  // namespace hqa
