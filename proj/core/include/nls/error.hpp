// Copyright 2026 The NLS Authors
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

#ifndef NLS_ERROR_HPP_
#define NLS_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace nls {

// Every failure the library reports is an nls::Error carrying one of these
// codes. Callers that need to branch on the failure kind switch on code().
enum class ErrorCode {
  // session
  kEmptyKey,
  kUnknownCategory,
  kUnknownModel,
  kNotConfigured,
  kAlreadyStarted,
  kNoInitialPrompt,
  kSchemaVersionMismatch,
  kSessionLocked,
  kInvalidCatalog,
  // provider
  kAuthFailed,
  kRateLimited,
  kMalformedResponse,
  kTransport,
  kProviderRejected,
  kInvalidRequest,
  kFixtureExhausted,
  kFixtureMissing,
  // ledger
  kEmptyRule,
  kDuplicateRule,
  kUnknownRule,
  // extract
  kUnterminatedFence,
  kNoModuleFound,
  kUnbalancedModuleEnd,
  kNothingToPackage,
  kMalformedArchive,
  // hdl
  kNoModuleHeader,
  // bench
  kUnknownResourceColumn,
  kNonNumericValue,
  kNoUtilizationTable,
  kZeroBaseline,
  kNoComparableResources,
  kMalformedCsv,
  // shared
  kIo,
  kInvalidArgument,
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace nls

#endif  // NLS_ERROR_HPP_
