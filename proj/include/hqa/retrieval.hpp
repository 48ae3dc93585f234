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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hqa/exec_result.hpp"
#include "hqa/knowledge.hpp"

namespace hqa {

/// One score per candidate, index-aligned with the KnowledgeSet.
using ScoreVector = std::vector<double>;

struct RetrievalQuery {
  std::string_view question_id;
  std::string_view question;
  const std::optional<ExecResult>* prev = nullptr;
  const KnowledgeSet* knowledge = nullptr;
  int hop = 1;
};

/// Scores every candidate fact for a hop. Implementations must be
/// deterministic and safe to call concurrently.
class Retriever {
 public:
  virtual ~Retriever() = default;
  virtual ScoreVector score(const RetrievalQuery& query) const = 0;
};

/// Index of the highest score; ties go to the lowest index.
std::size_t argmax(const ScoreVector& scores);

std::size_t select(std::string_view question_id, std::string_view question,
                   const std::optional<ExecResult>& prev, const KnowledgeSet& ks, int hop,
                   const Retriever& retriever);

/// Inverse document frequency over one question's candidates:
/// ln(1 + K / df(t)) for every term occurring in at least one candidate.
class CandidateIdf {
 public:
  explicit CandidateIdf(const KnowledgeSet& ks);

  double weight(const std::string& term) const;
  const std::vector<std::string>& candidate_terms(std::size_t candidate) const {
    return terms_[candidate];
  }

 private:
  std::size_t count_ = 0;
  std::map<std::string, std::size_t> document_frequency_;
  std::vector<std::vector<std::string>> terms_;  // distinct terms per candidate
};

/// Lower-cased distinct word tokens; punctuation and the structural tokens
/// of the serialization are dropped.
std::vector<std::string> index_terms(const std::vector<std::string>& tokens);

/// Sum of IDF weights of the distinct query terms (question plus previous
/// answer) that also occur in the candidate's fact region.
double lexical_score(std::string_view question, const std::optional<ExecResult>& prev,
                     const KnowledgeSet& ks, std::size_t candidate, const CandidateIdf& idf);

class LexicalRetriever : public Retriever {
 public:
  ScoreVector score(const RetrievalQuery& query) const override;
};

/// Gold fact index per hop for each question id.
using GoldFacts = std::map<std::string, std::vector<std::size_t>, std::less<>>;

/// 1.0 for the annotated fact of the hop, 0.0 elsewhere. Throws
/// Error(MissingAnnotation) when the hop has no gold fact.
double gold_score(const GoldFacts& gold, std::string_view question_id, std::size_t candidate,
                  int hop);

class GoldRetriever : public Retriever {
 public:
  explicit GoldRetriever(GoldFacts gold) : gold_(std::move(gold)) {}
  ScoreVector score(const RetrievalQuery& query) const override;

 private:
  GoldFacts gold_;
};

}  // namespace hqa
