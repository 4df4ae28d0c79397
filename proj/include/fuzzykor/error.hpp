// Copyright 2026 The fuzzykor Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace fuzzykor {

enum class ErrorCode {
  kInvalidArgument,
  kTruncationFailure,
  kInternalConsistency,
  kDegenerateDelta,
  kIo,
};

// All library failures are reported through this type; the code drives the
// C API status and the CLI exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Raised when a truncated series cannot meet its tolerance within the cap.
class TruncationError : public Error {
 public:
  TruncationError(const std::string& what, double achieved_bound)
      : Error(ErrorCode::kTruncationFailure, what),
        achieved_bound_(achieved_bound) {}

  double achieved_bound() const noexcept { return achieved_bound_; }

 private:
  double achieved_bound_;
};

[[noreturn]] inline void throw_invalid(const std::string& what) {
  throw Error(ErrorCode::kInvalidArgument, what);
}

}  // namespace fuzzykor
