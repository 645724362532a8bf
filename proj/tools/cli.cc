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

#include "cli.hpp"

#include <unistd.h>

#include <CLI11.hpp>
#include <iostream>
#include <iterator>
#include <memory>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>
#include <system_error>

#include "nls/bench.hpp"
#include "nls/error.hpp"
#include "nls/extract.hpp"
#include "nls/hdl/lint.hpp"
#include "nls/ledger.hpp"
#include "nls/provider.hpp"
#include "nls/session.hpp"
#include "nls/text.hpp"
#include "nls/workflow.hpp"

extern char** environ;

namespace nls::cli {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

// Thrown for bad flag combinations that CLI11 cannot express.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Paths {
  fs::path dir;
  fs::path config() const { return dir / "config.json"; }
  fs::path ledger() const { return dir / "ledger.json"; }
  fs::path models() const { return dir / "models.json"; }
};

std::string EnvOr(const Env& env, const std::string& key, std::string fallback = "") {
  auto it = env.find(key);
  return it == env.end() ? fallback : it->second;
}

std::string ReadInput(const std::string& path, std::istream& in) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(in), {});
  return ReadFile(path);
}

std::string Dump(const json& j) {
  return j.dump(-1, ' ', false, json::error_handler_t::replace) + "\n";
}

ModelCatalog LoadCatalog(const Paths& paths, const std::string& override_path) {
  if (!override_path.empty()) return ModelCatalog::Load(override_path);
  std::error_code ec;
  if (fs::exists(paths.models(), ec)) return ModelCatalog::Load(paths.models());
  return ModelCatalog::Default();
}

// ---------------------------------------------------------------------------
// add-key / select-model / update-prompt

int AddKey(const Paths& paths, const Env& env, std::istream& in, std::ostream& out,
           std::ostream& err) {
  std::string key = EnvOr(env, "NLS_API_KEY");
  if (Trim(key).empty()) {
    if (isatty(STDIN_FILENO) && &in == &std::cin) err << "API key: " << std::flush;
    std::getline(in, key);
  }
  ProviderConfig config = config_store::Load(paths.config());
  SessionState scratch;
  scratch.config = config;
  scratch = SetApiKey(std::move(scratch), Trim(key));
  config_store::Save(scratch.config, paths.config());
  out << "API key stored in " << paths.config().string() << "\n";
  return kExitOk;
}

int SelectModelCmd(const Paths& paths, const std::string& catalog_path, bool list,
                   const std::string& category, const std::string& model, const std::string& format,
                   std::ostream& out) {
  const ModelCatalog catalog = LoadCatalog(paths, catalog_path);
  if (list) {
    if (format == "json") {
      out << catalog.ToJson();
      if (catalog.ToJson().back() != '\n') out << "\n";
      return kExitOk;
    }
    for (const auto& [name, models] : catalog.categories()) {
      out << name << "\n";
      for (const auto& m : models) out << "  " << m << "\n";
    }
    return kExitOk;
  }
  if (category.empty() && model.empty()) {
    throw UsageError("select-model needs --category and --model (or --list)");
  }
  ProviderConfig config = config_store::Load(paths.config());
  SessionState scratch;
  scratch.config = config;
  scratch = SelectModel(std::move(scratch), catalog, category, model);
  config_store::Save(scratch.config, paths.config());
  out << "selected " << scratch.config.model_category << " / " << scratch.config.model_id << "\n";
  return kExitOk;
}

int UpdatePrompt(const Paths& paths, const std::vector<std::string>& texts,
                 const std::vector<std::string>& disable, bool show, const std::string& format,
                 std::ostream& out) {
  PromptLedger ledger = LoadLedgerOrDefault(paths.ledger());
  const bool mutate = !texts.empty() || !disable.empty();
  std::vector<std::string> added;
  for (const auto& t : texts) {
    ledger = AddRule(std::move(ledger), t);
    added.push_back(ledger.rules.back().id);
  }
  for (const auto& id : disable) ledger = DisableRule(std::move(ledger), id);
  if (mutate) SaveLedger(ledger, paths.ledger());
  if (format == "json") {
    if (show || !mutate) {
      out << SerializeLedger(ledger);
    } else {
      json j;
      j["added"] = added;
      j["disabled"] = disable;
      j["ledger"] = paths.ledger().string();
      out << Dump(j);
    }
    return kExitOk;
  }
  for (const auto& id : added) out << "added rule " << id << "\n";
  for (const auto& id : disable) out << "disabled rule " << id << "\n";
  if (show || !mutate) out << RenderSystemPrompt(ledger);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// generate / adjust

struct TurnOptions {
  std::string session;
  std::string input_file;  // prompt or note
  std::string provider = "live";
  std::string fixtures;
  std::string out_dir;
  std::string format = "text";
};

fs::path ResolveArtifactDir(const SessionState& state, const fs::path& session_path) {
  fs::path dir = state.artifact_dir;
  if (dir.is_absolute()) return dir;
  return session_path.parent_path() / dir;
}

std::unique_ptr<Provider> MakeProvider(const TurnOptions& o, const SessionState& state) {
  if (o.provider == "replay") {
    if (o.fixtures.empty()) throw UsageError("--provider replay needs --fixtures DIR");
    return std::make_unique<ReplayProvider>(o.fixtures, state.response_count());
  }
  return std::make_unique<HttpProvider>();
}

int RunTurn(const Paths& paths, const Env& env, const TurnOptions& o, bool initial,
            std::istream& in, std::ostream& out, std::ostream& err) {
  const fs::path session_path = o.session;
  const std::string text = ReadInput(o.input_file, in);

  ProviderConfig config = config_store::Load(paths.config());
  if (initial) {
    // Gate before touching the session file so the message names the step.
    if (auto missing = MissingConfigurationSteps(config)) {
      throw Error(ErrorCode::kNotConfigured, *missing);
    }
  }
  const std::string base_url = EnvOr(env, "NLS_BASE_URL");
  if (!base_url.empty()) config.base_url = base_url;

  std::error_code ec;
  if (session_path.has_parent_path()) fs::create_directories(session_path.parent_path(), ec);
  SessionLock lock(session_path);

  SessionState state;
  const bool exists = fs::exists(session_path, ec);
  if (exists) {
    state = LoadSession(session_path);
  } else if (initial) {
    state = NewSession();
  } else {
    throw Error(ErrorCode::kIo, "no session at " + session_path.string());
  }
  const std::vector<HdlArtifact> previous = state.artifacts;
  const std::string previous_dir = state.artifact_dir;
  state.config = config;
  if (initial) {
    state = BeginGeneration(std::move(state), text);
  } else {
    if (auto missing = MissingConfigurationSteps(config)) {
      throw Error(ErrorCode::kNotConfigured, *missing);
    }
    state = AddAdjustment(std::move(state), text);
  }
  if (!o.out_dir.empty()) {
    state.artifact_dir = o.out_dir;
  } else if (state.artifact_dir.empty()) {
    state.artifact_dir = session_path.stem().string() + "_out";
  }

  const PromptLedger ledger = LoadLedgerOrDefault(paths.ledger());
  auto provider = MakeProvider(o, state);
  TurnResult turn = RunGenerationTurn(std::move(state), ledger, *provider);
  state = std::move(turn.state);

  // Replace the files this session wrote last time.
  if (!previous.empty() && !previous_dir.empty()) {
    SessionState old;
    old.artifact_dir = previous_dir;
    const fs::path old_dir = ResolveArtifactDir(old, session_path);
    for (const auto& name : ArtifactFileNames(previous)) fs::remove(old_dir / name, ec);
  }
  const fs::path art_dir = ResolveArtifactDir(state, session_path);
  const auto files = WriteArtifacts(state.artifacts, art_dir);
  SaveSession(state, session_path);

  std::vector<hdl::Diagnostic> diags;
  for (std::size_t i = 0; i < files.size(); ++i) {
    auto d = hdl::LintSource(state.artifacts[i].text, state.artifacts[i].language,
                             files[i].string());
    diags.insert(diags.end(), d.begin(), d.end());
  }
  hdl::SortDiagnostics(diags);
  std::size_t errors = 0, warnings = 0;
  for (const auto& d : diags) (d.severity == hdl::Severity::kError ? errors : warnings)++;

  if (o.format == "json") {
    json j;
    j["session"] = session_path.string();
    j["response_index"] = state.transcript.back().index;
    j["response"] = turn.response.content;
    j["artifact_dir"] = art_dir.string();
    j["files"] = json::array();
    for (const auto& f : files) j["files"].push_back(f.string());
    j["notes"] = turn.notes;
    j["diagnostics"] = json::parse(hdl::FormatJson(diags));
    j["lint_status"] = hdl::ExitStatus(diags);
    out << Dump(j);
  } else {
    for (const auto& n : turn.notes) err << "note: " << n << "\n";
    for (const auto& f : files) out << "wrote " << f.string() << "\n";
    out << hdl::FormatText(diags);
    out << "lint: " << errors << " error(s), " << warnings << " warning(s) in " << files.size()
        << " file(s)\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// package / lint / bench / session

int Package(const std::string& session, const std::string& dir, const std::string& zip,
            std::ostream& out) {
  fs::path source;
  if (!dir.empty()) {
    source = dir;
  } else if (!session.empty()) {
    const SessionState state = LoadSession(session);
    if (state.artifact_dir.empty()) {
      throw Error(ErrorCode::kNothingToPackage, "session has not generated any code yet");
    }
    source = ResolveArtifactDir(state, session);
  } else {
    throw UsageError("package needs --session or --dir");
  }
  const std::string bytes = PackageZipBytes(source);
  WriteFileAtomic(zip, bytes);
  out << "wrote " << zip << " (" << bytes.size() << " bytes)\n";
  return kExitOk;
}

int LintCmd(const std::vector<std::string>& files, const std::string& format,
            const std::string& language, std::ostream& out) {
  std::optional<HdlLanguage> lang;
  if (!language.empty()) lang = ParseHdlLanguage(language);
  std::vector<hdl::Diagnostic> diags;
  for (const auto& f : files) {
    auto d = hdl::LintFile(f, lang);
    diags.insert(diags.end(), d.begin(), d.end());
  }
  hdl::SortDiagnostics(diags);
  out << (format == "json" ? hdl::FormatJson(diags) : hdl::FormatText(diags));
  return hdl::ExitStatus(diags);
}

int BenchRde(const std::string& session, const std::string& format, bool header,
             std::ostream& out) {
  const SessionState state = LoadSession(session);
  const RdeMetrics m = ComputeRde(state);
  if (format == "csv") {
    if (header) out << kRdeCsvHeader << "\n";
    out << RdeToCsvRow(m);
  } else {
    out << RdeToJson(m);
  }
  return kExitOk;
}

std::vector<ResourceReport> LoadReports(const std::string& path) {
  const std::string text = ReadFile(path);
  if (text.find("Site Type") != std::string::npos && text.find('|') != std::string::npos) {
    ResourceReport r = ParseVendorUtilization(text);
    if (r.design_name.empty()) r.design_name = fs::path(path).stem().string();
    return {r};
  }
  return ParseResourceCsv(text);
}

int BenchPpa(const std::string& cand_path, const std::string& base_path,
             const std::string& cand_design, const std::string& base_design,
             const std::string& format, std::ostream& out) {
  const auto candidates = LoadReports(cand_path);
  const auto baselines = LoadReports(base_path);
  if (baselines.empty()) throw Error(ErrorCode::kNoComparableResources, base_path + " has no designs");
  const ResourceReport* baseline = nullptr;
  if (!base_design.empty()) {
    baseline = &FindReport(baselines, base_design);
  } else if (baselines.size() == 1) {
    baseline = &baselines.front();
  } else {
    throw UsageError(base_path + " holds several designs; choose one with --baseline-design");
  }
  std::vector<const ResourceReport*> chosen;
  if (!cand_design.empty()) {
    chosen.push_back(&FindReport(candidates, cand_design));
  } else {
    std::error_code ec;
    const bool same_file = fs::equivalent(cand_path, base_path, ec);
    for (const auto& r : candidates) {
      if (same_file && r.design_name == baseline->design_name) continue;
      chosen.push_back(&r);
    }
  }
  if (chosen.empty()) throw Error(ErrorCode::kNoComparableResources, "no candidate designs");
  if (format == "json" && chosen.size() != 1) {
    throw UsageError("--format json compares one design; choose it with --candidate-design");
  }
  bool first = true;
  for (const ResourceReport* c : chosen) {
    const Comparison cmp = CompareReports(*c, *baseline);
    if (format == "json") {
      out << FormatComparisonJson(cmp);
    } else {
      if (!first) out << "\n";
      out << FormatComparisonText(cmp);
    }
    first = false;
  }
  return kExitOk;
}

int SessionCmd(const std::string& session, const std::string& format, std::ostream& out) {
  const SessionState state = LoadSession(session);
  const fs::path art_dir = state.artifact_dir.empty() ? fs::path()
                                                      : ResolveArtifactDir(state, session);
  const auto names = ArtifactFileNames(state.artifacts);
  if (format == "json") {
    json j;
    j["id"] = state.id;
    j["created"] = FormatRfc3339(state.created);
    j["model_category"] = state.config.model_category;
    j["model_id"] = state.config.model_id;
    j["artifact_dir"] = art_dir.string();
    j["artifacts"] = json::array();
    for (std::size_t i = 0; i < state.artifacts.size(); ++i) {
      const auto& a = state.artifacts[i];
      json aj;
      aj["module_name"] = a.module_name;
      aj["language"] = HdlLanguageName(a.language);
      aj["response_index"] = a.response_index;
      aj["file"] = (art_dir / names[i]).string();
      j["artifacts"].push_back(std::move(aj));
    }
    j["transcript"] = json::array();
    for (const auto& e : state.transcript) {
      json ej;
      ej["index"] = e.index;
      ej["role"] = RoleName(e.role);
      ej["kind"] = EntryKindName(e.kind);
      ej["content"] = e.content;
      ej["timestamp"] = FormatRfc3339(e.timestamp);
      j["transcript"].push_back(std::move(ej));
    }
    out << Dump(j);
    return kExitOk;
  }
  out << "session " << state.id << " (" << state.config.model_category << " / "
      << state.config.model_id << ")\n";
  for (const auto& e : state.transcript) {
    std::string first_line = e.content.substr(0, e.content.find('\n'));
    if (first_line.size() > 72) first_line = first_line.substr(0, 69) + "...";
    out << "[" << e.index << "] " << EntryKindName(e.kind) << ": " << first_line << "\n";
  }
  for (std::size_t i = 0; i < state.artifacts.size(); ++i) {
    out << "artifact " << (art_dir / names[i]).string() << "\n";
  }
  return kExitOk;
}

int ExitFor(const Error& e) {
  return e.code() == ErrorCode::kNotConfigured ? kExitNotConfigured : kExitFailure;
}

}  // namespace

Env ProcessEnv() {
  Env env;
  for (char** p = environ; p != nullptr && *p != nullptr; ++p) {
    const std::string kv = *p;
    const auto eq = kv.find('=');
    if (eq != std::string::npos) env.emplace(kv.substr(0, eq), kv.substr(eq + 1));
  }
  return env;
}

int Run(const std::vector<std::string>& args, const Env& env, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Natural-language to Verilog generation, lint and benchmarking"};
  app.name("nls");
  app.require_subcommand(1, 1);

  const std::vector<std::string> kTextJson = {"text", "json"};

  auto* add_key = app.add_subcommand("add-key", "Store the provider API key (from $NLS_API_KEY or stdin)");

  std::string catalog_path, category, model, model_format = "text";
  bool list_models = false;
  auto* select = app.add_subcommand("select-model", "Choose a model category and model");
  select->add_option("--category", category, "Model category");
  select->add_option("--model", model, "Model id within the category");
  select->add_flag("--list", list_models, "List the catalog");
  select->add_option("--catalog", catalog_path, "Catalog JSON file");
  select->add_option("--format", model_format)->check(CLI::IsMember(kTextJson));

  TurnOptions gen_opts;
  auto* generate = app.add_subcommand("generate", "Send the initial prompt and write the code");
  generate->add_option("--session", gen_opts.session, "Session file")->required();
  generate->add_option("--prompt-file", gen_opts.input_file, "Prompt text file, or - for stdin")
      ->required();
  TurnOptions adj_opts;
  auto* adjust = app.add_subcommand("adjust", "Send a follow-up note and rewrite the code");
  adjust->add_option("--session", adj_opts.session, "Session file")->required();
  adjust->add_option("--note-file", adj_opts.input_file, "Note text file, or - for stdin")->required();
  for (auto [cmd, o] : {std::pair{generate, &gen_opts}, std::pair{adjust, &adj_opts}}) {
    cmd->add_option("--provider", o->provider, "live or replay")
        ->check(CLI::IsMember({"live", "replay"}));
    cmd->add_option("--fixtures", o->fixtures, "Replay fixture directory");
    cmd->add_option("--out", o->out_dir, "Directory for generated files");
    cmd->add_option("--format", o->format)->check(CLI::IsMember(kTextJson));
  }

  std::vector<std::string> rule_texts, rule_disable;
  bool show_prompt = false;
  std::string prompt_format = "text";
  auto* update = app.add_subcommand("update-prompt", "Add or disable system prompt rules");
  update->add_option("--text", rule_texts, "Rule text to append");
  update->add_option("--disable", rule_disable, "Rule id to disable");
  update->add_flag("--show", show_prompt, "Print the rendered system prompt");
  update->add_option("--format", prompt_format)->check(CLI::IsMember(kTextJson));

  std::string pkg_session, pkg_dir, pkg_out;
  auto* package = app.add_subcommand("package", "Zip the generated .v/.sv files");
  package->add_option("--session", pkg_session, "Session file");
  package->add_option("--dir", pkg_dir, "Directory to package instead of the session's");
  package->add_option("--out", pkg_out, "Zip file to write")->required();

  std::vector<std::string> lint_files;
  std::string lint_format = "text", lint_language;
  auto* lint = app.add_subcommand("lint", "Check HDL files against the rule catalog");
  lint->add_option("files", lint_files, "HDL files")->required();
  lint->add_option("--format", lint_format)->check(CLI::IsMember(kTextJson));
  lint->add_option("--language", lint_language, "Override: verilog or systemverilog")
      ->check(CLI::IsMember({"verilog", "systemverilog"}));

  std::string rde_session, rde_format = "json";
  bool rde_header = false;
  auto* rde = app.add_subcommand("bench-rde", "Design-effort metrics of a session");
  rde->add_option("--session", rde_session, "Session file")->required();
  rde->add_option("--format", rde_format)->check(CLI::IsMember({"json", "csv"}));
  rde->add_flag("--header", rde_header, "Print a CSV header row first");

  std::string ppa_cand, ppa_base, ppa_cand_design, ppa_base_design, ppa_format = "text";
  auto* ppa = app.add_subcommand("bench-ppa", "Compare resource usage against a baseline");
  ppa->add_option("--candidate", ppa_cand, "CSV or utilization report")->required();
  ppa->add_option("--baseline", ppa_base, "CSV or utilization report")->required();
  ppa->add_option("--candidate-design", ppa_cand_design, "Design row to compare");
  ppa->add_option("--baseline-design", ppa_base_design, "Design row to compare against");
  ppa->add_option("--format", ppa_format)->check(CLI::IsMember(kTextJson));

  std::string show_session, show_format = "text";
  auto* session = app.add_subcommand("session", "Show a session transcript and artifacts");
  session->add_option("--session", show_session, "Session file")->required();
  session->add_option("--format", show_format)->check(CLI::IsMember(kTextJson));

  std::vector<std::string> argv_store = {"nls"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const Paths paths{config_store::DefaultDirectory(env)};
  try {
    if (add_key->parsed()) return AddKey(paths, env, in, out, err);
    if (select->parsed()) {
      return SelectModelCmd(paths, catalog_path, list_models, category, model, model_format, out);
    }
    if (generate->parsed()) return RunTurn(paths, env, gen_opts, true, in, out, err);
    if (adjust->parsed()) return RunTurn(paths, env, adj_opts, false, in, out, err);
    if (update->parsed()) {
      return UpdatePrompt(paths, rule_texts, rule_disable, show_prompt, prompt_format, out);
    }
    if (package->parsed()) return Package(pkg_session, pkg_dir, pkg_out, out);
    if (lint->parsed()) return LintCmd(lint_files, lint_format, lint_language, out);
    if (rde->parsed()) return BenchRde(rde_session, rde_format, rde_header, out);
    if (ppa->parsed()) {
      return BenchPpa(ppa_cand, ppa_base, ppa_cand_design, ppa_base_design, ppa_format, out);
    }
    if (session->parsed()) return SessionCmd(show_session, show_format, out);
  } catch (const UsageError& e) {
    err << "nls: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "nls: " << ErrorCodeName(e.code()) << ": " << e.what() << "\n";
    return ExitFor(e);
  } catch (const std::exception& e) {
    err << "nls: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace nls::cli
