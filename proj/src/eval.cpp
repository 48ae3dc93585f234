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


#include "hqa/eval.hpp"

#include <algorithm>
#include <cctype>
#include <iomanip>
#include <map>
#include <sstream>

#include <json.hpp>

#include "hqa/error.hpp"

namespace hqa {
namespace {

std::vector<std::string> split_words(std::string_view text) {
  std::vector<std::string> out;
  std::string current;
  for (char ch : text) {
    if (std::isspace(static_cast<unsigned char>(ch))) {
      if (!current.empty()) out.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(ch);
    }
  }
  if (!current.empty()) out.push_back(std::move(current));
  return out;
}

struct Accumulator {
  std::size_t count = 0;
  double em = 0.0;
  double f1 = 0.0;

  void add(const ScoredItem& item) {
    ++count;
    em += item.em;
    f1 += item.f1;
  }
  GroupStats stats() const {
    if (count == 0) return {};
    return {count, em / static_cast<double>(count), f1 / static_cast<double>(count)};
  }
};

nlohmann::json stats_json(const GroupStats& g) {
  return {{"count", g.count}, {"em", g.em}, {"f1", g.f1}};
}

}  // namespace

std::string normalize(std::string_view answer) {
  std::string cleaned;
  cleaned.reserve(answer.size());
  for (char ch : answer) {
    auto c = static_cast<unsigned char>(ch);
    if (c < 0x80 && std::ispunct(c)) continue;
    cleaned.push_back(static_cast<char>(std::tolower(c)));
  }
  std::string out;
  for (const auto& word : split_words(cleaned)) {
    if (word == "a" || word == "an" || word == "the") continue;
    if (!out.empty()) out.push_back(' ');
    out += word;
  }
  return out;
}

double token_f1(std::string_view pred, std::string_view gold) {
  const auto p = split_words(normalize(pred));
  const auto g = split_words(normalize(gold));
  if (p.empty() || g.empty()) return p.empty() && g.empty() ? 1.0 : 0.0;
  std::map<std::string, int> bag;
  for (const auto& w : g) ++bag[w];
  int common = 0;
  for (const auto& w : p) {
    auto it = bag.find(w);
    if (it != bag.end() && it->second > 0) {
      --it->second;
      ++common;
    }
  }
  if (common == 0) return 0.0;
  const double precision = static_cast<double>(common) / static_cast<double>(p.size());
  const double recall = static_cast<double>(common) / static_cast<double>(g.size());
  return 2.0 * precision * recall / (precision + recall);
}

Score score(const std::vector<std::string>& pred, const std::vector<std::string>& gold) {
  if (gold.empty()) throw Error(ErrorKind::EmptyGold, "gold answer list is empty");

  std::vector<std::string> np, ng;
  for (const auto& p : pred) np.push_back(normalize(p));
  for (const auto& g : gold) ng.push_back(normalize(g));

  Score s;
  {
    auto a = np, b = ng;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    s.em = a == b ? 1.0 : 0.0;
  }

  struct Pair {
    double f1;
    std::size_t p, g;
  };
  std::vector<Pair> pairs;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    for (std::size_t j = 0; j < gold.size(); ++j) {
      const double f = token_f1(pred[i], gold[j]);
      if (f > 0.0) pairs.push_back({f, i, j});
    }
  }
  // Ties are ordered by content rather than position so that shuffling the
  // inputs cannot change the matching.
  std::sort(pairs.begin(), pairs.end(), [&](const Pair& x, const Pair& y) {
    if (x.f1 != y.f1) return x.f1 > y.f1;
    if (np[x.p] != np[y.p]) return np[x.p] < np[y.p];
    return ng[x.g] < ng[y.g];
  });
  std::vector<bool> pred_used(pred.size()), gold_used(gold.size());
  double total = 0.0;
  for (const auto& pr : pairs) {
    if (pred_used[pr.p] || gold_used[pr.g]) continue;
    pred_used[pr.p] = gold_used[pr.g] = true;
    total += pr.f1;
  }
  s.f1 = total / static_cast<double>(std::max(pred.size(), gold.size()));
  return s;
}

std::string_view knowledge_kind_name(KnowledgeKind kind) {
  switch (kind) {
    case KnowledgeKind::Table: return "table";
    case KnowledgeKind::Text: return "text";
    case KnowledgeKind::Both: return "both";
  }
  return "unknown";
}

BreakdownReport breakdown(const std::vector<ScoredItem>& items) {
  Accumulator overall, single, multi;
  std::map<std::string, Accumulator> by_knowledge, by_type;
  for (const auto& item : items) {
    overall.add(item);
    (item.hop_count > 1 ? multi : single).add(item);
    by_knowledge[std::string(knowledge_kind_name(item.knowledge_kind))].add(item);
    by_type[item.reasoning_type].add(item);
  }
  BreakdownReport report;
  report.overall = overall.stats();
  report.single_hop = single.stats();
  report.multi_hop = multi.stats();
  for (const auto& [k, acc] : by_knowledge) report.by_knowledge[k] = acc.stats();
  for (const auto& [k, acc] : by_type) report.by_type[k] = acc.stats();
  return report;
}

std::string report_json(const BreakdownReport& report) {
  nlohmann::json j;
  j["overall"] = stats_json(report.overall);
  j["single_hop"] = stats_json(report.single_hop);
  j["multi_hop"] = stats_json(report.multi_hop);
  j["by_knowledge"] = nlohmann::json::object();
  for (const auto& [k, g] : report.by_knowledge) j["by_knowledge"][k] = stats_json(g);
  j["by_type"] = nlohmann::json::object();
  for (const auto& [k, g] : report.by_type) j["by_type"][k] = stats_json(g);
  return j.dump(2);
}

std::string report_table(const BreakdownReport& report) {
  std::vector<std::pair<std::string, GroupStats>> rows = {
      {"overall", report.overall},
      {"single-hop", report.single_hop},
      {"multi-hop", report.multi_hop},
  };
  for (const auto& [k, g] : report.by_knowledge) rows.emplace_back("knowledge:" + k, g);
  for (const auto& [k, g] : report.by_type) rows.emplace_back("type:" + k, g);

  std::size_t width = 5;
  for (const auto& r : rows) width = std::max(width, r.first.size());

  std::ostringstream out;
  out << std::left << std::setw(static_cast<int>(width)) << "group" << "  " << std::right
      << std::setw(6) << "count" << "  " << std::setw(7) << "EM" << "  " << std::setw(7) << "F1"
      << '\n';
  out << std::fixed << std::setprecision(2);
  for (const auto& [name, g] : rows) {
    out << std::left << std::setw(static_cast<int>(width)) << name << "  " << std::right
        << std::setw(6) << g.count << "  " << std::setw(7) << g.em * 100.0 << "  "
        << std::setw(7) << g.f1 * 100.0 << '\n';
  }
  return out.str();
}

}  // namespace hqa
