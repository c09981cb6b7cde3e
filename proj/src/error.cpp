// Copyright 2026 The gstkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gstkit/error.hpp"

namespace gstkit {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid argument";
    case ErrorCode::kDimensionMismatch: return "dimension mismatch";
    case ErrorCode::kUnknownLabel: return "unknown gate label";
    case ErrorCode::kNotHermitian: return "matrix is not Hermitian";
    case ErrorCode::kNotUnitary: return "matrix is not unitary";
    case ErrorCode::kNotTracePreserving: return "map is not trace preserving";
    case ErrorCode::kUnsupportedDimension: return "unsupported dimension";
    case ErrorCode::kSingular: return "singular matrix";
    case ErrorCode::kIncomplete: return "informationally incomplete";
    case ErrorCode::kNonPhysical: return "non-physical model";
    case ErrorCode::kMissingData: return "missing data";
    case ErrorCode::kParse: return "parse error";
    case ErrorCode::kIo: return "i/o error";
    case ErrorCode::kNumerical: return "numerical failure";
  }
  return "unknown error";
}

}  // namespace gstkit
