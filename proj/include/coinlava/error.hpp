// Copyright 2026 The Coinlava Authors
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

namespace coinlava {

// Error categories shared by every module and mirrored one-to-one by the
// status codes of the C API.
enum class ErrorCode {
  InvalidArgument = 1,
  Parse,
  InvalidEndpoint,
  ZeroWidth,
  ZeroLength,
  IllegalMove,
  DegenerateInput,
  BudgetExceeded,
  UnsetVariable,
  ClauseTooSmall,
  UnusedVariable,
  ChainTooShort,
  OverBudget,
  PhaseInvariantBroken,
  OracleRequired,
  IllegalByPolicy,
  Io,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace coinlava
