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


#include "nls/session.hpp"

#include <gtest/gtest.h>

#include <random>

#include "nls/error.hpp"
#include "nls/text.hpp"
#include "test_util.hpp"

namespace nls {
namespace {

namespace fs = std::filesystem;

constexpr std::string_view kSecret = "sk-test-0123456789abcdef";

Timestamp At(long long s) { return Timestamp(std::chrono::seconds(s)); }

template <typename F>
ErrorCode CodeOf(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kIo;
}

SessionState Configured() {
  SessionState s = NewSession(At(1700000000));
  s = SetApiKey(std::move(s), kSecret);
  return SelectModel(std::move(s), ModelCatalog::Default(), "Claude-3.5", "Claude-3.5-sonnet");
}

SessionState Populated() {
  SessionState s = Configured();
  s = BeginGeneration(std::move(s), "Design a 4x4 systolic array.\n", At(1700000001));
  s = AppendLedgerSnapshot(std::move(s), "system prompt v1", At(1700000002));
  s = AppendResponse(std::move(s), "```verilog\nmodule a; endmodule\n```\n", At(1700000003));
  s = AddAdjustment(std::move(s), "Use \"quotes\" and unicode \xC3\xA9", At(1700000004));
  s = AppendResponse(std::move(s), "ok", At(1700000005));
  s.artifacts.push_back({"a", HdlLanguage::kVerilog, "module a; endmodule\n", 2});
  s.artifact_dir = "design_out";
  return s;
}

TEST(SessionTest, NewSessionHasIdAndNoTranscript) {
  const SessionState a = NewSession();
  const SessionState b = NewSession();
  EXPECT_EQ(a.id.size(), 32u);
  EXPECT_NE(a.id, b.id);
  EXPECT_FALSE(a.started());
  EXPECT_EQ(a.initial_prompt(), nullptr);
}

TEST(SessionTest, RejectsBlankKey) {
  EXPECT_EQ(CodeOf([] { SetApiKey(NewSession(), "  \n"); }), ErrorCode::kEmptyKey);
}

TEST(SessionTest, SelectModelValidatesAgainstCatalog) {
  const ModelCatalog catalog = ModelCatalog::Default();
  EXPECT_EQ(CodeOf([&] { SelectModel(NewSession(), catalog, "Nope", "ChatGPT-4o"); }),
            ErrorCode::kUnknownCategory);
  EXPECT_EQ(CodeOf([&] { SelectModel(NewSession(), catalog, "GPT-4o", "OpenAI-o1-mini"); }),
            ErrorCode::kUnknownModel);
  const SessionState s = SelectModel(NewSession(), catalog, "OpenAI-o1", "OpenAI-o1-mini");
  EXPECT_EQ(s.config.model_category, "OpenAI-o1");
  EXPECT_EQ(s.config.model_id, "OpenAI-o1-mini");
}

TEST(SessionTest, DefaultCatalogHoldsEvaluatedModels) {
  const ModelCatalog catalog = ModelCatalog::Default();
  for (const auto* id : {"ChatGPT-4o", "OpenAI-o1-preview", "OpenAI-o1-mini", "Claude-3.5-sonnet"}) {
    bool found = false;
    for (const auto& [cat, models] : catalog.categories()) {
      found |= std::find(models.begin(), models.end(), id) != models.end();
    }
    EXPECT_TRUE(found) << id;
  }
}

TEST(SessionTest, CatalogJsonRoundTripAndDuplicates) {
  const ModelCatalog catalog = ModelCatalog::Default();
  const ModelCatalog again = ModelCatalog::FromJson(catalog.ToJson());
  EXPECT_EQ(again.categories(), catalog.categories());
  EXPECT_EQ(CodeOf([] { ModelCatalog::FromJson(R"({"categories":{"a":["m"],"b":["m"]}})"); }),
            ErrorCode::kInvalidCatalog);
  EXPECT_EQ(CodeOf([] { ModelCatalog::FromJson("[1,2]"); }), ErrorCode::kInvalidCatalog);
  EXPECT_EQ(CodeOf([] { ModelCatalog::FromJson("{not json"); }), ErrorCode::kInvalidCatalog);
}

TEST(SessionTest, BeginGenerationNamesMissingSteps) {
  try {
    BeginGeneration(NewSession(), "prompt");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotConfigured);
    EXPECT_NE(std::string(e.what()).find("add-key"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("select-model"), std::string::npos);
  }
  SessionState keyed = SetApiKey(NewSession(), kSecret);
  try {
    BeginGeneration(keyed, "prompt");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(std::string(e.what()).find("add-key"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("select-model"), std::string::npos);
  }
}

TEST(SessionTest, SecondBeginIsRejected) {
  SessionState s = BeginGeneration(Configured(), "first");
  EXPECT_EQ(CodeOf([&] { BeginGeneration(s, "second"); }), ErrorCode::kAlreadyStarted);
}

TEST(SessionTest, AdjustmentNeedsInitialPrompt) {
  EXPECT_EQ(CodeOf([] { AddAdjustment(Configured(), "fix it"); }), ErrorCode::kNoInitialPrompt);
}

TEST(SessionTest, CountsAdjustmentsAndResponses) {
  const SessionState s = Populated();
  EXPECT_EQ(s.adjustment_count(), 1u);
  EXPECT_EQ(s.response_count(), 2u);
  ASSERT_NE(s.initial_prompt(), nullptr);
  EXPECT_EQ(s.initial_prompt()->index, 0u);
  for (std::size_t i = 0; i < s.transcript.size(); ++i) EXPECT_EQ(s.transcript[i].index, i);
  EXPECT_NO_THROW(CheckSessionInvariants(s));
}

TEST(SessionTest, InvariantCheckCatchesBadIndices) {
  SessionState s = Populated();
  s.transcript[2].index = 7;
  EXPECT_EQ(CodeOf([&] { CheckSessionInvariants(s); }), ErrorCode::kInvalidArgument);
}

TEST(SessionTest, SerializeParseRoundTrip) {
  SessionState s = Populated();
  const std::string text = SerializeSession(s);
  const SessionState back = ParseSession(text);
  EXPECT_EQ(SerializeSession(back), text);
  EXPECT_EQ(back.transcript, s.transcript);
  EXPECT_EQ(back.artifacts, s.artifacts);
  EXPECT_EQ(back.artifact_dir, s.artifact_dir);
  EXPECT_EQ(back.config.model_id, s.config.model_id);
  EXPECT_TRUE(back.config.api_key.empty());
}

TEST(SessionTest, SerializedSessionNeverHoldsKey) {
  const std::string text = SerializeSession(Populated());
  EXPECT_EQ(text.find(kSecret), std::string::npos);
  EXPECT_EQ(text.find("sk-test"), std::string::npos);
}

TEST(SessionTest, SaveLoadSaveIsByteStable) {
  testing::TempDir dir;
  SaveSession(Populated(), dir / "s.json");
  const std::string first = ReadFile(dir / "s.json");
  SaveSession(LoadSession(dir / "s.json"), dir / "t.json");
  EXPECT_EQ(ReadFile(dir / "t.json"), first);
}

TEST(SessionTest, UnknownSchemaVersionIsRejected) {
  std::string text = SerializeSession(Populated());
  const auto at = text.find("\"version\":1");
  ASSERT_NE(at, std::string::npos);
  text.replace(at, 11, "\"version\":99");
  EXPECT_EQ(CodeOf([&] { ParseSession(text); }), ErrorCode::kSchemaVersionMismatch);
}

TEST(SessionTest, TruncatedFileIsIoError) {
  const std::string text = SerializeSession(Populated());
  EXPECT_EQ(CodeOf([&] { ParseSession(text.substr(0, text.size() / 2)); }), ErrorCode::kIo);
  EXPECT_EQ(CodeOf([&] { ParseSession(text.substr(0, text.size() - 1)); }), ErrorCode::kIo);
  EXPECT_EQ(CodeOf([] { ParseSession(""); }), ErrorCode::kIo);
  EXPECT_EQ(CodeOf([] { ParseSession("{\"schema\":\"other\"}\n"); }), ErrorCode::kIo);
}

TEST(SessionTest, LoadMissingFileIsIoError) {
  testing::TempDir dir;
  EXPECT_EQ(CodeOf([&] { LoadSession(dir / "nope.json"); }), ErrorCode::kIo);
}

// Gating property: begin succeeds iff a key and a model were both set, in
// any order and with any number of repeats or failed attempts in between.
TEST(SessionTest, GatingHoldsForRandomOrderings) {
  std::mt19937 rng(20240917);
  const ModelCatalog catalog = ModelCatalog::Default();
  for (int trial = 0; trial < 500; ++trial) {
    SessionState s = NewSession();
    bool key = false, model = false;
    const int steps = std::uniform_int_distribution<int>(0, 6)(rng);
    for (int i = 0; i < steps; ++i) {
      switch (std::uniform_int_distribution<int>(0, 3)(rng)) {
        case 0:
          s = SetApiKey(std::move(s), kSecret);
          key = true;
          break;
        case 1:
          s = SelectModel(std::move(s), catalog, "GPT-4o", "ChatGPT-4o");
          model = true;
          break;
        case 2:
          EXPECT_THROW(SelectModel(s, catalog, "GPT-4o", "bogus"), Error);
          break;
        default:
          EXPECT_THROW(SetApiKey(s, ""), Error);
          break;
      }
    }
    const bool ok = !MissingConfigurationSteps(s.config).has_value();
    EXPECT_EQ(ok, key && model);
    if (key && model) {
      EXPECT_NO_THROW(BeginGeneration(s, "p"));
    } else {
      EXPECT_EQ(CodeOf([&] { BeginGeneration(s, "p"); }), ErrorCode::kNotConfigured);
    }
  }
}

TEST(ConfigStoreTest, DirectoryPrecedence) {
  EXPECT_EQ(config_store::DefaultDirectory({{"NLS_HOME", "/a"}, {"XDG_CONFIG_HOME", "/b"}}),
            fs::path("/a"));
  EXPECT_EQ(config_store::DefaultDirectory({{"XDG_CONFIG_HOME", "/b"}, {"HOME", "/h"}}),
            fs::path("/b/nls"));
  EXPECT_EQ(config_store::DefaultDirectory({{"HOME", "/h"}}), fs::path("/h/.config/nls"));
}

TEST(ConfigStoreTest, SaveLoadWithOwnerOnlyPermissions) {
  testing::TempDir dir;
  const auto path = dir / "sub" / "config.json";
  EXPECT_EQ(config_store::Load(path), ProviderConfig{});
  ProviderConfig c;
  c.api_key = std::string(kSecret);
  c.model_category = "GPT-4o";
  c.model_id = "ChatGPT-4o";
  c.base_url = "http://127.0.0.1:9";
  config_store::Save(c, path);
  EXPECT_EQ(config_store::Load(path), c);
  const auto perms = fs::status(path).permissions();
  EXPECT_EQ(perms & (fs::perms::group_all | fs::perms::others_all), fs::perms::none);
}

TEST(SessionLockTest, SecondHolderIsRejected) {
  testing::TempDir dir;
  const auto session = dir / "s.json";
  {
    SessionLock lock(session);
    try {
      SessionLock again(session);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kSessionLocked);
    }
    SessionLock other(dir / "t.json");
  }
  EXPECT_NO_THROW(SessionLock again(session));
}

}  // namespace
}  // namespace nls
