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


#include "hqa/generation.hpp"

#include <httplib.h>

#include <json.hpp>

#include "hqa/error.hpp"

namespace hqa {

GenRequest make_request(std::string_view question_id, std::string_view question,
                        const std::optional<std::string>& prev_text,
                        const SerializedInput& input, int hop) {
  GenRequest req;
  req.question_id = std::string(question_id);
  req.question = std::string(question);
  req.prev_answer = prev_text ? *prev_text : std::string(kNoneAnswer);
  req.fact_tokens = input.fact_region_tokens();
  req.hop = hop;
  req.yesno_prefix = input.segment(Region::Prefix).end > 1;
  return req;
}

std::vector<std::string> request_tokens(const GenRequest& request) {
  FactTokens fact;
  fact.tokens = request.fact_tokens;
  return serialize_parts(request.question, request.prev_answer, fact, request.yesno_prefix)
      .tokens;
}

std::string oracle_generate(const GenRequest& request, const ProgramStore& store) {
  auto it = store.find(std::make_pair(request.question_id, request.hop));
  if (it == store.end()) {
    throw Error(ErrorKind::MissingGoldProgram, "no gold program for question " +
                                                   request.question_id + " hop " +
                                                   std::to_string(request.hop));
  }
  return it->second;
}

std::string OracleGenerator::generate(const GenRequest& request) const {
  return oracle_generate(request, store_);
}

std::string StubGenerator::generate(const GenRequest& request) const {
  const std::vector<std::string>* script = &script_;
  if (auto it = per_question_.find(request.question_id); it != per_question_.end()) {
    script = &it->second;
  }
  const auto index = static_cast<std::size_t>(request.hop - 1);
  if (request.hop >= 1 && index < script->size()) return (*script)[index];
  return fallback_;
}

std::string encode_request_body(const GenRequest& request) {
  nlohmann::json body = {
      {"question", request.question},
      {"prev_answer", request.prev_answer},
      {"fact_tokens", request.fact_tokens},
      {"hop", request.hop},
  };
  return body.dump();
}

std::string decode_response_body(std::string_view body) {
  auto parsed = nlohmann::json::parse(body, nullptr, false);
  if (parsed.is_discarded()) throw Error(ErrorKind::ProtocolError, "response is not JSON");
  if (!parsed.is_object()) throw Error(ErrorKind::ProtocolError, "response is not an object");
  auto it = parsed.find("program");
  if (it == parsed.end()) throw Error(ErrorKind::ProtocolError, "response has no 'program'");
  if (!it->is_string()) throw Error(ErrorKind::ProtocolError, "'program' is not a string");
  return it->get<std::string>();
}

RemoteGenerator::RemoteGenerator(std::string endpoint, std::chrono::milliseconds timeout)
    : endpoint_(std::move(endpoint)), timeout_(timeout) {
  const auto scheme = endpoint_.find("://");
  const auto host_begin = scheme == std::string::npos ? 0 : scheme + 3;
  const auto slash = endpoint_.find('/', host_begin);
  if (slash == std::string::npos) {
    base_ = endpoint_;
    path_.clear();
  } else {
    base_ = endpoint_.substr(0, slash);
    path_ = endpoint_.substr(slash);
  }
  while (!path_.empty() && path_.back() == '/') path_.pop_back();
  path_ += "/generate";
}

std::string RemoteGenerator::generate(const GenRequest& request) const {
  // One client per call keeps concurrent requests independent.
  httplib::Client client(base_);
  if (!client.is_valid()) throw Error(ErrorKind::TransportError, "invalid endpoint " + endpoint_);
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(timeout_);
  const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(timeout_ - secs);
  client.set_connection_timeout(secs.count(), usecs.count());
  client.set_read_timeout(secs.count(), usecs.count());
  client.set_write_timeout(secs.count(), usecs.count());

  const auto started = std::chrono::steady_clock::now();
  auto res = client.Post(path_, encode_request_body(request), "application/json");
  if (!res) {
    const auto err = res.error();
    const auto elapsed = std::chrono::steady_clock::now() - started;
    if (err == httplib::Error::ConnectionTimeout ||
        (err == httplib::Error::Read && elapsed >= timeout_)) {
      throw Error(ErrorKind::TimeoutError,
                  "request to " + endpoint_ + " timed out after " +
                      std::to_string(timeout_.count()) + " ms");
    }
    throw Error(ErrorKind::TransportError,
                "request to " + endpoint_ + " failed: " + httplib::to_string(err));
  }
  if (res->status != 200) {
    throw Error(ErrorKind::TransportError,
                endpoint_ + " answered HTTP " + std::to_string(res->status));
  }
  return decode_response_body(res->body);
}

std::string remote_generate(const GenRequest& request, const std::string& endpoint,
                            std::chrono::milliseconds timeout) {
  return RemoteGenerator(endpoint, timeout).generate(request);
}

}  // namespace hqa
