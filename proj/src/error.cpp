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


#include "hqa/error.hpp"

namespace hqa {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::IndexOutOfBounds: return "IndexOutOfBounds";
    case ErrorKind::InvalidRange: return "InvalidRange";
    case ErrorKind::NonNumericSpan: return "NonNumericSpan";
    case ErrorKind::EmptyMultiSpan: return "EmptyMultiSpan";
    case ErrorKind::TypeMismatch: return "TypeMismatch";
    case ErrorKind::InvalidData: return "InvalidData";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::ArityError: return "ArityError";
    case ErrorKind::ChildKindError: return "ChildKindError";
    case ErrorKind::MissingAnnotation: return "MissingAnnotation";
    case ErrorKind::MissingGoldProgram: return "MissingGoldProgram";
    case ErrorKind::TransportError: return "TransportError";
    case ErrorKind::TimeoutError: return "TimeoutError";
    case ErrorKind::ProtocolError: return "ProtocolError";
    case ErrorKind::AnswerNotFound: return "AnswerNotFound";
    case ErrorKind::AmbiguousTemplate: return "AmbiguousTemplate";
    case ErrorKind::EmptyGold: return "EmptyGold";
  }
  return "Unknown";
}

}  // namespace hqa
