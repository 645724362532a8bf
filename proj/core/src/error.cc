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

#include "nls/error.hpp"

namespace nls {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmptyKey: return "EmptyKey";
    case ErrorCode::kUnknownCategory: return "UnknownCategory";
    case ErrorCode::kUnknownModel: return "UnknownModel";
    case ErrorCode::kNotConfigured: return "NotConfigured";
    case ErrorCode::kAlreadyStarted: return "AlreadyStarted";
    case ErrorCode::kNoInitialPrompt: return "NoInitialPrompt";
    case ErrorCode::kSchemaVersionMismatch: return "SchemaVersionMismatch";
    case ErrorCode::kSessionLocked: return "SessionLocked";
    case ErrorCode::kInvalidCatalog: return "InvalidCatalog";
    case ErrorCode::kAuthFailed: return "AuthFailed";
    case ErrorCode::kRateLimited: return "RateLimited";
    case ErrorCode::kMalformedResponse: return "MalformedResponse";
    case ErrorCode::kTransport: return "Transport";
    case ErrorCode::kProviderRejected: return "ProviderRejected";
    case ErrorCode::kInvalidRequest: return "InvalidRequest";
    case ErrorCode::kFixtureExhausted: return "FixtureExhausted";
    case ErrorCode::kFixtureMissing: return "FixtureMissing";
    case ErrorCode::kEmptyRule: return "EmptyRule";
    case ErrorCode::kDuplicateRule: return "DuplicateRule";
    case ErrorCode::kUnknownRule: return "UnknownRule";
    case ErrorCode::kUnterminatedFence: return "UnterminatedFence";
    case ErrorCode::kNoModuleFound: return "NoModuleFound";
    case ErrorCode::kUnbalancedModuleEnd: return "UnbalancedModuleEnd";
    case ErrorCode::kNothingToPackage: return "NothingToPackage";
    case ErrorCode::kMalformedArchive: return "MalformedArchive";
    case ErrorCode::kNoModuleHeader: return "NoModuleHeader";
    case ErrorCode::kUnknownResourceColumn: return "UnknownResourceColumn";
    case ErrorCode::kNonNumericValue: return "NonNumericValue";
    case ErrorCode::kNoUtilizationTable: return "NoUtilizationTable";
    case ErrorCode::kZeroBaseline: return "ZeroBaseline";
    case ErrorCode::kNoComparableResources: return "NoComparableResources";
    case ErrorCode::kMalformedCsv: return "MalformedCsv";
    case ErrorCode::kIo: return "Io";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace nls
