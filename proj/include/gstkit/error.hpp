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

#pragma once

#include <stdexcept>
#include <string>

namespace gstkit {

enum class ErrorCode {
  kInvalidArgument = 1,
  kDimensionMismatch,
  kUnknownLabel,
  kNotHermitian,
  kNotUnitary,
  kNotTracePreserving,
  kUnsupportedDimension,
  kSingular,
  kIncomplete,
  kNonPhysical,
  kMissingData,
  kParse,
  kIo,
  kNumerical,
};

const char* error_code_name(ErrorCode code) noexcept;

/// Base exception for all library failures. The code is stable and maps
/// one-to-one onto the C API status values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace gstkit
