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

#include "nls/workflow.hpp"

#include <algorithm>

#include "nls/error.hpp"
#include "nls/extract.hpp"

namespace nls {

CompletionRequest BuildRequest(const SessionState& state, const std::string& system_prompt) {
  CompletionRequest req;
  req.model_id = state.config.model_id;
  req.messages.push_back({Role::kSystem, system_prompt});
  for (const auto& e : state.transcript) {
    if (e.role == Role::kSystem) continue;
    req.messages.push_back({e.role, e.content});
  }
  return req;
}

std::vector<HdlArtifact> MergeArtifacts(const std::vector<HdlArtifact>& existing,
                                        const std::vector<HdlArtifact>& fresh) {
  std::vector<HdlArtifact> out;
  for (const auto& a : existing) {
    const bool replaced = std::any_of(fresh.begin(), fresh.end(), [&](const HdlArtifact& f) {
      return f.module_name == a.module_name;
    });
    if (!replaced) out.push_back(a);
  }
  out.insert(out.end(), fresh.begin(), fresh.end());
  return out;
}

TurnResult RunGenerationTurn(SessionState state, const PromptLedger& ledger, Provider& provider,
                             Timestamp now) {
  const TranscriptEntry* last_user = nullptr;
  for (auto it = state.transcript.rbegin(); it != state.transcript.rend(); ++it) {
    if (it->role == Role::kSystem) continue;
    if (it->role == Role::kUser) last_user = &*it;
    break;
  }
  if (last_user == nullptr) {
    throw Error(ErrorCode::kInvalidArgument, "no unanswered user message in the session");
  }

  TurnResult result;
  const std::string system_prompt = RenderSystemPrompt(ledger);
  const TranscriptEntry* snapshot = nullptr;
  for (auto it = state.transcript.rbegin(); it != state.transcript.rend(); ++it) {
    if (it->kind == EntryKind::kLedgerUpdate) {
      snapshot = &*it;
      break;
    }
  }
  if (snapshot == nullptr || snapshot->content != system_prompt) {
    state = AppendLedgerSnapshot(std::move(state), system_prompt, now);
    result.ledger_recorded = true;
  }

  const CompletionRequest request = BuildRequest(state, system_prompt);
  result.response = provider.Complete(state.config, request);
  state = AppendResponse(std::move(state), result.response.content, now);
  const std::size_t response_index = state.transcript.back().index;

  ExtractResult extracted = ExtractArtifacts(result.response.content, response_index);
  result.fresh = std::move(extracted.artifacts);
  result.notes = std::move(extracted.notes);
  state.artifacts = MergeArtifacts(state.artifacts, result.fresh);
  result.state = std::move(state);
  return result;
}

}  // namespace nls
