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

#include <chrono>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hqa/knowledge.hpp"

namespace hqa {

/// What a program generator sees for one hop. The fields rebuild the
/// executor's SerializedInput token for token (see request_input).
struct GenRequest {
  std::string question_id;
  std::string question;
  std::string prev_answer;  // "None" at hop 1
  std::vector<std::string> fact_tokens;
  int hop = 1;
  bool yesno_prefix = true;
};

/// `prev_text` is the rendered previous answer (nullopt at hop 1), the same
/// value passed to serialize_parts when `input` was built.
GenRequest make_request(std::string_view question_id, std::string_view question,
                        const std::optional<std::string>& prev_text,
                        const SerializedInput& input, int hop);

/// Token sequence a generator indexes into, rebuilt from the request alone.
std::vector<std::string> request_tokens(const GenRequest& request);

/// Produces program text for one hop. Implementations must be safe to call
/// concurrently; failures are thrown as hqa::Error.
class Generator {
 public:
  virtual ~Generator() = default;
  virtual std::string generate(const GenRequest& request) const = 0;
};

/// Canonical program text keyed by (question id, hop).
using ProgramStore = std::map<std::pair<std::string, int>, std::string, std::less<>>;

std::string oracle_generate(const GenRequest& request, const ProgramStore& store);

class OracleGenerator : public Generator {
 public:
  explicit OracleGenerator(ProgramStore store) : store_(std::move(store)) {}
  std::string generate(const GenRequest& request) const override;

 private:
  ProgramStore store_;
};

/// Scripted outputs for smoke and fault-injection runs. Hop h emits
/// script[h - 1] (per-question scripts take precedence over the default
/// script); hops past the end of the script emit the fallback.
class StubGenerator : public Generator {
 public:
  static constexpr std::string_view kFallback = "SPAN(0,0)";

  StubGenerator() = default;
  explicit StubGenerator(std::vector<std::string> script, std::string fallback = std::string(kFallback))
      : script_(std::move(script)), fallback_(std::move(fallback)) {}

  void set_script(std::string question_id, std::vector<std::string> script) {
    per_question_[std::move(question_id)] = std::move(script);
  }

  std::string generate(const GenRequest& request) const override;

 private:
  std::vector<std::string> script_;
  std::map<std::string, std::vector<std::string>, std::less<>> per_question_;
  std::string fallback_{kFallback};
};

/// Client for a generator served over HTTP:
///   POST {endpoint}/generate
///   {"question": str, "prev_answer": str, "fact_tokens": [str], "hop": int}
///   -> {"program": str}
/// Non-200 answers and connection failures raise TransportError, expired
/// timeouts raise TimeoutError, malformed bodies raise ProtocolError.
class RemoteGenerator : public Generator {
 public:
  explicit RemoteGenerator(std::string endpoint,
                           std::chrono::milliseconds timeout = std::chrono::seconds(30));
  std::string generate(const GenRequest& request) const override;

  const std::string& endpoint() const { return endpoint_; }

 private:
  std::string endpoint_;
  std::string base_;  // scheme://host[:port]
  std::string path_;  // path prefix + "/generate"
  std::chrono::milliseconds timeout_;
};

std::string remote_generate(const GenRequest& request, const std::string& endpoint,
                            std::chrono::milliseconds timeout = std::chrono::seconds(30));

/// JSON body sent by RemoteGenerator.
std::string encode_request_body(const GenRequest& request);
/// Extracts "program" from a response body; throws Error(ProtocolError).
std::string decode_response_body(std::string_view body);

}  // namespace hqa
