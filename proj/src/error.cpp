// Copyright 2026 The bosonsamp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "error.hpp"

namespace bosonsamp {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "E_INVALID_ARGUMENT";
    case ErrorCode::kOracleSizeExceeded: return "E_ORACLE_SIZE";
    case ErrorCode::kCapExceeded: return "E_CAP_EXCEEDED";
    case ErrorCode::kNotUnitary: return "E_NOT_UNITARY";
    case ErrorCode::kLambdaTooSmall: return "E_LAMBDA_TOO_SMALL";
    case ErrorCode::kWordLength: return "E_WORD_LENGTH";
    case ErrorCode::kZeroVariance: return "E_ZERO_VARIANCE";
    case ErrorCode::kParse: return "E_PARSE";
    case ErrorCode::kIo: return "E_IO";
    case ErrorCode::kUnreachable: return "E_UNREACHABLE";
  }
  return "E_UNKNOWN";
}

}  // namespace bosonsamp
