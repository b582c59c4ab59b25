// Copyright 2026 The mpf-lab Authors
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

#include "mpf/error.hpp"

namespace mpf {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidInput: return "invalid-input";
    case ErrorCode::kCapacity: return "capacity";
    case ErrorCode::kNumerical: return "numerical";
    case ErrorCode::kUnsupported: return "unsupported";
    case ErrorCode::kBudgetExceeded: return "budget-exceeded";
    case ErrorCode::kInternal: return "internal";
  }
  return "unknown";
}

}  // namespace mpf
