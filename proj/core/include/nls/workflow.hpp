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

// One provider round trip: prompt assembly, dispatch, artifact extraction.

#ifndef NLS_WORKFLOW_HPP_
#define NLS_WORKFLOW_HPP_

#include <string>
#include <vector>

#include "nls/artifact.hpp"
#include "nls/ledger.hpp"
#include "nls/provider.hpp"
#include "nls/session.hpp"

namespace nls {

// System prompt first, then every user and assistant entry in order.
CompletionRequest BuildRequest(const SessionState& state, const std::string& system_prompt);

// Artifacts from `fresh` replace same-named ones in `existing`; other
// existing artifacts keep their place and fresh ones follow in order.
std::vector<HdlArtifact> MergeArtifacts(const std::vector<HdlArtifact>& existing,
                                        const std::vector<HdlArtifact>& fresh);

struct TurnResult {
  SessionState state;
  CompletionResponse response;
  std::vector<HdlArtifact> fresh;  // artifacts from this response only
  std::vector<std::string> notes;  // extraction notes
  bool ledger_recorded = false;    // a ledger_update entry was appended
};

// Answers the latest user entry. Appends a ledger_update entry when the
// rendered system prompt differs from the last one recorded, then the
// response. Throws kInvalidArgument when the transcript does not end with
// an unanswered user entry; provider errors propagate unchanged.
TurnResult RunGenerationTurn(SessionState state, const PromptLedger& ledger, Provider& provider,
                             Timestamp now = Now());

}  // namespace nls

#endif  // NLS_WORKFLOW_HPP_
