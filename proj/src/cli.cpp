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


#include "hqa/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <memory>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "hqa/dataset.hpp"
#include "hqa/error.hpp"
#include "hqa/eval.hpp"
#include "hqa/executor.hpp"
#include "hqa/generation.hpp"
#include "hqa/pipeline.hpp"
#include "hqa/pseudo.hpp"
#include "hqa/retrieval.hpp"

namespace hqa::cli {
namespace {

struct RunOptions {
  std::string dataset;
  std::string retriever = "gold";
  std::string generator = "oracle";
  std::string endpoint;
  std::string pseudo_path;
  std::vector<std::string> stub_script;
  int max_hops = 2;
  bool strict_templates = true;
  int jobs = 1;
  int timeout_ms = 30000;
  std::string out_path;
  std::string report_path;
  bool keep_going = false;
};

struct PseudoOptions {
  std::string dataset;
  std::string out_path;
  std::string report_path;
  bool keep_going = false;
};

struct EvalOptions {
  std::string dataset;
  std::string predictions;
  std::string report_path;
  bool keep_going = false;
};

struct ExecOptions {
  std::string program;
  std::string question;
  std::string fact_file;
  std::string prev;
  bool has_prev = false;
  bool show_tokens = false;
};

void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn) {
  const auto workers = static_cast<std::size_t>(std::max(1, jobs));
  if (workers == 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < std::min(workers, n); ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

void report_line_errors(const Dataset& data, std::ostream& err) {
  for (const auto& e : data.errors) {
    if (e.line) {
      err << "error: line " << e.line << ": " << e.message << '\n';
    } else {
      err << "error: " << e.message << '\n';
    }
  }
}

bool write_text(const std::string& path, const std::string& text, std::ostream& err) {
  std::ofstream f(path, std::ios::binary);
  f << text;
  if (!f) {
    err << "error: cannot write " << path << '\n';
    return false;
  }
  return true;
}

KnowledgeKind knowledge_kind(const Annotation& ann, const KnowledgeSet& ks) {
  bool table = false, text = false;
  for (const auto& h : ann.hops) {
    const auto idx = ks.find_candidate(h.gold_fact_id);
    if (!idx) continue;
    (*idx == 0 ? table : text) = true;
  }
  if (table && text) return KnowledgeKind::Both;
  return text ? KnowledgeKind::Text : KnowledgeKind::Table;
}

ScoredItem scored_item(const DatasetRecord& r, const std::vector<std::string>& pred) {
  const auto& ann = *r.annotation;
  const auto s = score(pred, ann.final_answers);
  return ScoredItem{r.question_id, s.em, s.f1, ann.type_name,
                    static_cast<int>(std::max<std::size_t>(1, ann.hops.size())),
                    knowledge_kind(ann, r.knowledge)};
}

int cmd_run(const RunOptions& opt, std::ostream& out, std::ostream& err) {
  const auto data = load_dataset(opt.dataset, opt.keep_going);
  report_line_errors(data, err);
  if (!data.errors.empty() && !opt.keep_going) return kExitIo;
  bool io_failure = !data.errors.empty();

  std::unique_ptr<Retriever> retriever;
  if (opt.retriever == "gold") {
    retriever = std::make_unique<GoldRetriever>(gold_facts(data.records));
  } else {
    retriever = std::make_unique<LexicalRetriever>();
  }

  std::unique_ptr<Generator> generator;
  if (opt.generator == "oracle") {
    ProgramStore store;
    if (!opt.pseudo_path.empty()) {
      std::ifstream f(opt.pseudo_path);
      if (!f) {
        err << "error: cannot open " << opt.pseudo_path << '\n';
        return kExitIo;
      }
      try {
        store = read_pseudo_sidecar(f);
      } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
      }
    } else {
      std::vector<PseudoProgramSet> sets;
      for (const auto& r : data.records) {
        if (r.annotation) sets.push_back(build_pseudo(*r.annotation, r.knowledge));
      }
      store = program_store(sets);
    }
    generator = std::make_unique<OracleGenerator>(std::move(store));
  } else if (opt.generator == "stub") {
    generator = std::make_unique<StubGenerator>(opt.stub_script);
  } else {
    std::string endpoint = opt.endpoint;
    if (endpoint.empty()) {
      if (const char* env = std::getenv("HOPPG_ENDPOINT")) endpoint = env;
    }
    if (endpoint.empty()) {
      err << "error: --generator remote needs --endpoint or HOPPG_ENDPOINT\n";
      return kExitUsage;
    }
    generator = std::make_unique<RemoteGenerator>(endpoint,
                                                  std::chrono::milliseconds(opt.timeout_ms));
  }

  const Pipeline pipeline(*retriever, *generator, PipelineConfig{opt.max_hops, opt.strict_templates});

  std::vector<AnswerOutcome> outcomes(data.records.size());
  parallel_for(data.records.size(), opt.jobs, [&](std::size_t i) {
    const auto& r = data.records[i];
    outcomes[i] = pipeline.answer(r.question_id, r.question, r.knowledge);
  });

  std::ostringstream predictions;
  std::vector<ScoredItem> items;
  for (std::size_t i = 0; i < data.records.size(); ++i) {
    const auto& r = data.records[i];
    predictions << outcome_to_json(r.question_id, outcomes[i], r.knowledge).dump() << '\n';
    if (!r.annotation) continue;
    std::vector<std::string> pred;
    if (const auto* res = std::get_if<ExecResult>(&outcomes[i].final)) pred = answer_list(*res);
    items.push_back(scored_item(r, pred));
  }
  if (!opt.out_path.empty() && !write_text(opt.out_path, predictions.str(), err)) {
    io_failure = true;
  }

  const auto report = breakdown(items);
  out << report_table(report);
  if (!opt.report_path.empty() && !write_text(opt.report_path, report_json(report) + "\n", err)) {
    io_failure = true;
  }
  return io_failure ? kExitIo : kExitOk;
}

int cmd_pseudo(const PseudoOptions& opt, std::ostream& out, std::ostream& err) {
  const auto data = load_dataset(opt.dataset, opt.keep_going);
  report_line_errors(data, err);
  if (!data.errors.empty() && !opt.keep_going) return kExitIo;
  bool io_failure = !data.errors.empty();

  const auto replay = replay_verify(data.records);
  const std::size_t skipped = data.records.size() - replay.total;

  std::ostringstream sidecar;
  std::size_t failed = 0;
  for (const auto& set : replay.programs) {
    if (!set.built) {
      ++failed;
      err << "pseudo: " << set.question_id << " failed (" << set.failure_kind << "): " << set.reason
          << '\n';
    }
    for (const auto& line : pseudo_lines(set)) sidecar << line.dump() << '\n';
  }
  if (opt.out_path.empty()) {
    out << sidecar.str();
  } else if (!write_text(opt.out_path, sidecar.str(), err)) {
    io_failure = true;
  }

  Json summary = {{"records", data.records.size()}, {"skipped", skipped},
                  {"annotated", replay.total},      {"built", replay.built},
                  {"failed", failed},               {"coverage", replay.coverage},
                  {"em", replay.em},                {"f1", replay.f1}};
  out << "records " << data.records.size() << "  skipped " << skipped << "  built "
      << replay.built << "  failed " << failed << '\n';
  out << "coverage " << replay.coverage << "  replay EM " << replay.em << "  F1 " << replay.f1
      << '\n';
  if (!opt.report_path.empty() && !write_text(opt.report_path, summary.dump(2) + "\n", err)) {
    io_failure = true;
  }
  return io_failure ? kExitIo : kExitOk;
}

int cmd_eval(const EvalOptions& opt, std::ostream& out, std::ostream& err) {
  const auto data = load_dataset(opt.dataset, opt.keep_going);
  report_line_errors(data, err);
  if (!data.errors.empty() && !opt.keep_going) return kExitIo;
  bool io_failure = !data.errors.empty();

  std::ifstream f(opt.predictions);
  if (!f) {
    err << "error: cannot open " << opt.predictions << '\n';
    return kExitIo;
  }
  std::map<std::string, std::vector<std::string>> predicted;
  std::string line;
  std::size_t number = 0;
  while (std::getline(f, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto j = Json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("question_id") ||
        !j["question_id"].is_string()) {
      err << "error: predictions line " << number << ": malformed\n";
      io_failure = true;
      if (!opt.keep_going) return kExitIo;
      continue;
    }
    std::vector<std::string> answers;
    if (auto it = j.find("answers"); it != j.end() && it->is_array()) {
      for (const auto& a : *it) {
        if (a.is_string()) answers.push_back(a.get<std::string>());
      }
    }
    predicted[j["question_id"].get<std::string>()] = std::move(answers);
  }

  std::vector<ScoredItem> items;
  for (const auto& r : data.records) {
    if (!r.annotation) continue;
    auto it = predicted.find(r.question_id);
    items.push_back(scored_item(r, it == predicted.end() ? std::vector<std::string>{} : it->second));
  }
  const auto report = breakdown(items);
  out << report_table(report);
  if (!opt.report_path.empty() && !write_text(opt.report_path, report_json(report) + "\n", err)) {
    io_failure = true;
  }
  return io_failure ? kExitIo : kExitOk;
}

FactTokens read_fact_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorKind::InvalidData, "cannot open " + path);
  std::stringstream buf;
  buf << f.rdbuf();
  const auto text = buf.str();
  auto j = Json::parse(text, nullptr, false);
  if (!j.is_discarded() && j.is_object() && j.contains("headers")) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& row : j.value("rows", Json::array())) {
      rows.push_back(row.get<std::vector<std::string>>());
    }
    Table table(j.value("id", std::string("table")), j["headers"].get<std::vector<std::string>>(),
                rows);
    return flatten_table(table);
  }
  Passage passage;
  passage.id = "passage";
  if (!j.is_discarded() && j.is_object() && j.contains("text")) {
    passage.title = j.value("title", std::string());
    passage.text = j["text"].get<std::string>();
  } else {
    passage.text = text;
    while (!passage.text.empty() && (passage.text.back() == '\n' || passage.text.back() == '\r')) {
      passage.text.pop_back();
    }
  }
  return flatten_passage(passage, 1);
}

void print_spans(const OpNode& node, const SerializedInput& input, std::ostream& out) {
  if (is_atomic(node.kind)) {
    out << "  " << print(node) << " = \"" << span_text(input, node.start, node.end) << "\"\n";
    return;
  }
  for (const auto& c : node.children) print_spans(c, input, out);
}

int cmd_exec(const ExecOptions& opt, std::ostream& out, std::ostream& err) {
  Program program;
  try {
    program = parse(opt.program);
  } catch (const ProgramError& e) {
    err << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return kExitUsage;
  }
  try {
    const auto fact = read_fact_file(opt.fact_file);
    std::optional<std::string> prev;
    if (opt.has_prev) prev = opt.prev;
    const auto input = serialize_parts(opt.question, prev, fact, true);
    if (opt.show_tokens) {
      for (std::size_t i = 0; i < input.tokens.size(); ++i) {
        out << i << '\t' << input.tokens[i] << '\n';
      }
    }
    const auto result = execute(program, input);
    out << "program: " << print(program) << '\n';
    out << "result: " << result_type_name(result) << ' ' << render(result) << '\n';
    out << "spans:\n";
    print_spans(program.root, input, out);
  } catch (const Error& e) {
    err << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multi-hop program generation and execution over tables and text", "hqa"};
  app.require_subcommand(1);

  RunOptions run_opt;
  auto* run_cmd = app.add_subcommand("run", "Answer every question of a dataset");
  run_cmd->add_option("dataset", run_opt.dataset, "Dataset JSONL")->required();
  run_cmd->add_option("--retriever", run_opt.retriever)
      ->check(CLI::IsMember({"gold", "lexical"}))
      ->capture_default_str();
  run_cmd->add_option("--generator", run_opt.generator)
      ->check(CLI::IsMember({"oracle", "stub", "remote"}))
      ->capture_default_str();
  run_cmd->add_option("--endpoint", run_opt.endpoint, "Generator URL (default $HOPPG_ENDPOINT)");
  run_cmd->add_option("--pseudo", run_opt.pseudo_path, "Pseudo-program sidecar for --generator oracle");
  run_cmd->add_option("--stub-program", run_opt.stub_script, "Scripted program per hop for --generator stub");
  run_cmd->add_option("--max-hops", run_opt.max_hops)->check(CLI::PositiveNumber)->capture_default_str();
  run_cmd->add_flag("--strict-templates,!--no-strict-templates", run_opt.strict_templates,
                    "Reject programs outside the hop templates")
      ->capture_default_str();
  run_cmd->add_option("--jobs", run_opt.jobs)->check(CLI::PositiveNumber)->capture_default_str();
  run_cmd->add_option("--timeout-ms", run_opt.timeout_ms)->check(CLI::PositiveNumber)->capture_default_str();
  run_cmd->add_option("--out", run_opt.out_path, "Predictions JSONL");
  run_cmd->add_option("--report", run_opt.report_path, "Report JSON");
  run_cmd->add_flag("--keep-going", run_opt.keep_going, "Skip malformed dataset lines");

  PseudoOptions pseudo_opt;
  auto* pseudo_cmd = app.add_subcommand("pseudo", "Build and replay pseudo programs");
  pseudo_cmd->add_option("dataset", pseudo_opt.dataset, "Dataset JSONL")->required();
  pseudo_cmd->add_option("--out", pseudo_opt.out_path, "Sidecar JSONL (default stdout)");
  pseudo_cmd->add_option("--report", pseudo_opt.report_path, "Summary JSON");
  pseudo_cmd->add_flag("--keep-going", pseudo_opt.keep_going, "Skip malformed dataset lines");

  EvalOptions eval_opt;
  auto* eval_cmd = app.add_subcommand("eval", "Score a predictions file");
  eval_cmd->add_option("dataset", eval_opt.dataset, "Dataset JSONL with annotations")->required();
  eval_cmd->add_option("--predictions", eval_opt.predictions, "Predictions JSONL")->required();
  eval_cmd->add_option("--report", eval_opt.report_path, "Report JSON");
  eval_cmd->add_flag("--keep-going", eval_opt.keep_going, "Skip malformed lines");

  ExecOptions exec_opt;
  auto* exec_cmd = app.add_subcommand("exec", "Execute one program over one fact");
  exec_cmd->add_option("--program", exec_opt.program)->required();
  exec_cmd->add_option("--question", exec_opt.question)->required();
  exec_cmd->add_option("--fact-file", exec_opt.fact_file,
                       "Table JSON {headers, rows}, passage JSON {title, text}, or plain text")
      ->required();
  auto* prev_opt = exec_cmd->add_option("--prev", exec_opt.prev, "Previous-hop answer");
  exec_cmd->add_flag("--show-tokens", exec_opt.show_tokens, "Print the indexed token sequence");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  exec_opt.has_prev = prev_opt->count() > 0;

  if (run_cmd->parsed()) return cmd_run(run_opt, out, err);
  if (pseudo_cmd->parsed()) return cmd_pseudo(pseudo_opt, out, err);
  if (eval_cmd->parsed()) return cmd_eval(eval_opt, out, err);
  return cmd_exec(exec_opt, out, err);
}

}  // namespace hqa::cli
