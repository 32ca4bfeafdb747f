// Command-line entry point: run, index, evaluate, replay, validate-config.
// stdout carries one JSON object per invocation, stderr the diagnostics.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "disasteller/core/scenario.hpp"
#include "disasteller/engine_config.hpp"
#include "disasteller/error.hpp"
#include "disasteller/evaluation/evaluation.hpp"
#include "disasteller/gateway/http_backend.hpp"
#include "disasteller/gateway/retry.hpp"
#include "disasteller/orchestrator/pipeline.hpp"
#include "disasteller/orchestrator/replay.hpp"
#include "disasteller/reporting/run_record.hpp"
#include "disasteller/toolkit/guideline_index.hpp"
#include "disasteller/toolkit/web_search.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace disasteller;

namespace {

enum Exit { kOk = 0, kInternal = 1, kInput = 2, kStage = 3, kIo = 4, kGateway = 5 };

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::ConfigError:
    case Errc::ScenarioInvalid:
    case Errc::UndecodableImage:
    case Errc::EmptyDocument:
    case Errc::CsvFormat:
    case Errc::ScoreOutOfRange:
      return kInput;
    case Errc::IoError:
      return kIo;
    case Errc::Timeout:
    case Errc::Transport:
    case Errc::ScriptMiss:
    case Errc::MalformedResponse:
    case Errc::ProviderUnavailable:
      return kGateway;
    default:
      return kStage;
  }
}

void emit(const ordered_json& j) { std::cout << j.dump(2) << std::endl; }

int fail(const std::string& command, Errc code, const std::string& message) {
  std::cerr << "disasteller " << command << ": " << message << "\n";
  emit({{"command", command},
        {"ok", false},
        {"error", {{"code", std::string(to_string(code))}, {"message", message}}}});
  return exit_code_for(code);
}

std::string require_env(const char* name) {
  const char* v = std::getenv(name);
  if (v == nullptr || *v == '\0') {
    throw TransportError(0, std::string(name) + " is not set");
  }
  return v;
}

/// Model backend chain for a command: scripted replay or live HTTP with retry.
struct BackendChain {
  std::unique_ptr<gateway::ModelBackend> base;
  std::unique_ptr<gateway::ModelBackend> retrying;
  gateway::ModelBackend& get() { return retrying ? *retrying : *base; }
};

BackendChain make_backend(const std::string& kind, const std::string& script,
                          const EngineConfig& config) {
  BackendChain chain;
  if (kind == "scripted") {
    if (script.empty()) throw Error(Errc::ConfigError, "--script is required with --backend scripted");
    chain.base = std::make_unique<gateway::ScriptedBackend>(gateway::load_script(script));
    return chain;
  }
  gateway::HttpBackendConfig http;
  http.endpoint = config.gateway.endpoint;
  http.api_key = require_env(gateway::kApiKeyEnv);
  http.deadline = std::chrono::milliseconds(static_cast<long>(config.gateway.deadline_s * 1000));
  http.max_in_flight = config.gateway.max_in_flight;
  chain.base = std::make_unique<gateway::HttpBackend>(std::move(http));
  gateway::RetryPolicy policy;
  policy.max_attempts = config.retry.max_attempts;
  policy.base_delay = std::chrono::milliseconds(config.retry.base_delay_ms);
  chain.retrying = std::make_unique<gateway::RetryingBackend>(*chain.base, policy);
  return chain;
}

std::unique_ptr<toolkit::WebSearchProvider> make_live_search(const EngineConfig& config) {
  if (config.tools.web_search_mode != WebSearchMode::Live) return nullptr;
  if (config.tools.web_search_endpoint.empty()) {
    throw Error(Errc::ConfigError, "tools.web_search.endpoint: required in live mode");
  }
  toolkit::LiveSearchConfig live;
  live.endpoint = config.tools.web_search_endpoint;
  if (const char* key = std::getenv(toolkit::kSearchKeyEnv)) live.api_key = key;
  return std::make_unique<toolkit::LiveSearchProvider>(std::move(live));
}

ordered_json timings_json(const reporting::RunRecord& record) {
  ordered_json t = ordered_json::object();
  for (const auto& s : record.stage_timings) {
    t[s.stage] = {{"start_ms", s.start_ms}, {"end_ms", s.end_ms}, {"duration_ms", s.duration_ms()}};
  }
  return t;
}

ordered_json reports_json(const reporting::RunRecord& record) {
  ordered_json r = ordered_json::object();
  for (const auto& [kind, report] : record.reports) {
    nlohmann::json issues = nlohmann::json::array();
    for (const auto& i : report.issues) issues.push_back(reporting::to_json(i));
    r[reporting::to_string(kind)] = {{"valid", report.valid()}, {"issues", issues}};
  }
  return r;
}

struct RunArgs {
  std::string manifest, config, out, backend = "scripted", script, index, run_id;
};

int cmd_run(const RunArgs& a) {
  const auto config = load_config(a.config);
  const auto scenario = core::load_scenario(a.manifest);
  auto chain = make_backend(a.backend, a.script, config);
  auto search = make_live_search(config);
  std::optional<toolkit::GuidelineIndex> index;
  if (!a.index.empty()) index = toolkit::load_index(a.index);

  auto result = orchestrator::run_pipeline(
      scenario, config, {&chain.get(), search.get(), index ? &*index : nullptr}, {a.run_id, {}});
  const auto& rec = result.record;
  const auto manifest = reporting::persist_run(rec, a.out);
  for (const auto& w : rec.warnings) std::cerr << "warning: " << w << "\n";

  ordered_json j = {{"command", "run"},
                    {"ok", result.ok()},
                    {"run_id", rec.run_id},
                    {"run_dir", fs::path(manifest).parent_path().string()},
                    {"stage_timings", timings_json(rec)},
                    {"total_wall_time_ms", rec.total_wall_time_ms},
                    {"reports", reports_json(rec)},
                    {"warnings", rec.warnings}};
  if (!result.ok()) {
    const auto& f = *result.failure;
    ordered_json skipped = ordered_json::array();
    for (auto s : f.skipped) skipped.push_back(orchestrator::to_string(s));
    j["failure"] = {{"stage", orchestrator::to_string(f.stage)},
                    {"code", std::string(to_string(f.code))},
                    {"message", f.message},
                    {"skipped", skipped}};
    emit(j);
    std::cerr << "disasteller run: " << f.message << "\n";
    return exit_code_for(f.code) == kGateway ? kGateway : kStage;
  }
  emit(j);
  return kOk;
}

int cmd_index(const std::string& guideline, const std::string& out, const std::string& config_path,
              int chunk_size, int overlap) {
  toolkit::ChunkingOptions opts;
  if (!config_path.empty()) {
    const auto config = load_config(config_path);
    opts = {config.retrieval.chunk_size, config.retrieval.overlap};
  }
  if (chunk_size > 0) opts.chunk_size = chunk_size;
  if (overlap >= 0) opts.overlap = overlap;
  if (opts.overlap >= opts.chunk_size) {
    throw Error(Errc::ConfigError, "retrieval.overlap: must be smaller than chunk_size");
  }
  const auto index = toolkit::ingest_guideline(guideline, opts);
  toolkit::save_index(index, out);
  emit({{"command", "index"},
        {"ok", true},
        {"index_dir", out},
        {"chunks", index.chunks().size()},
        {"chunk_size", opts.chunk_size},
        {"overlap", opts.overlap},
        {"average_chunk_length", index.average_chunk_length()}});
  return kOk;
}

struct EvalArgs {
  std::string run_dir, config, out, backend = "scripted", script, human;
  int rounds = 1;
};

int cmd_evaluate(const EvalArgs& a) {
  const auto config = load_config(a.config);
  const auto record = reporting::load_run(a.run_dir);
  const auto scenario = core::load_scenario(record.scenario_manifest);
  std::vector<evaluation::EvaluationScore> human;
  if (!a.human.empty()) human = evaluation::ingest_human_scores(a.human);
  auto chain = make_backend(a.backend, a.script, config);

  evaluation::EvaluationFiles files;
  files.run_id = record.run_id;
  files.evaluator_model_id = config.gateway.evaluator_model_id;
  const auto rubric = evaluation::default_rubric();
  for (int round = 1; round <= a.rounds; ++round) {
    evaluation::EvaluateOptions opts;
    opts.model_id = config.gateway.evaluator_model_id;
    opts.temperature = config.gateway.temperature;
    opts.round = round;
    auto outcome = evaluation::evaluate_run(record, scenario, chain.get(), rubric, opts);
    files.scores.insert(files.scores.end(), outcome.scores.begin(), outcome.scores.end());
    files.errors.insert(files.errors.end(), outcome.errors.begin(), outcome.errors.end());
  }
  const bool have_machine = !files.scores.empty();
  files.scores.insert(files.scores.end(), human.begin(), human.end());
  files.with_comparison = have_machine && !human.empty();
  evaluation::write_evaluation(a.out, files);

  ordered_json errors = ordered_json::array();
  for (const auto& e : files.errors) {
    std::cerr << "warning: " << evaluation::to_string(e.target) << ": " << e.message << "\n";
    errors.push_back({{"target", evaluation::to_string(e.target)},
                      {"code", std::string(to_string(e.code))},
                      {"message", e.message}});
  }
  nlohmann::json aggs = nlohmann::json::array();
  if (!files.scores.empty()) {
    for (const auto& s : evaluation::aggregate(files.scores)) aggs.push_back(evaluation::to_json(s));
  }
  ordered_json j = {{"command", "evaluate"},
                    {"ok", files.errors.empty()},
                    {"run_id", record.run_id},
                    {"evaluator_model_id", files.evaluator_model_id},
                    {"out_dir", a.out},
                    {"scores", files.scores.size()},
                    {"errors", errors},
                    {"aggregates", aggs}};
  if (files.with_comparison) {
    std::vector<evaluation::EvaluationScore> machine(
        files.scores.begin(), files.scores.end() - static_cast<long>(human.size()));
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : evaluation::compare(machine, human)) rows.push_back(evaluation::to_json(r));
    j["comparison"] = rows;
  }
  emit(j);
  return files.errors.empty() ? kOk : kStage;
}

int cmd_replay(const std::string& run_dir, const std::string& out) {
  const auto r = orchestrator::replay_run(run_dir, out);
  emit({{"command", "replay"},
        {"ok", r.identical},
        {"verdict", r.identical ? "identical" : "different"},
        {"replay_dir", r.replay_dir},
        {"differences", r.differences}});
  return r.identical ? kOk : kStage;
}

int cmd_validate_config(const std::string& path) {
  const auto config = load_config(path);
  emit({{"command", "validate-config"}, {"ok", true}, {"config", to_json(config)}});
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-agent post-disaster report generation"};
  app.require_subcommand(1);

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Run the four-stage pipeline on a scenario");
  run_cmd->add_option("manifest", run.manifest, "Scenario manifest")->required()->check(CLI::ExistingFile);
  run_cmd->add_option("--config", run.config, "Engine config JSON")->required();
  run_cmd->add_option("--out", run.out, "Parent directory of run directories")->required();
  run_cmd->add_option("--backend", run.backend, "live or scripted")
      ->check(CLI::IsMember({"live", "scripted"}));
  run_cmd->add_option("--script", run.script, "Script for the scripted backend");
  run_cmd->add_option("--index", run.index, "Prebuilt guideline index directory");
  run_cmd->add_option("--run-id", run.run_id, "Run id (generated when omitted)");

  std::string guideline, index_out, index_config;
  int chunk_size = 0, overlap = -1;
  auto* index_cmd = app.add_subcommand("index", "Chunk and index a guideline document");
  index_cmd->add_option("guideline", guideline, "Guideline text file")->required();
  index_cmd->add_option("--out", index_out, "New index directory")->required();
  index_cmd->add_option("--config", index_config, "Engine config supplying retrieval settings");
  index_cmd->add_option("--chunk-size", chunk_size, "Tokens per chunk");
  index_cmd->add_option("--overlap", overlap, "Tokens shared by consecutive chunks");

  EvalArgs ev;
  auto* eval_cmd = app.add_subcommand("evaluate", "Score a persisted run with the evaluator model");
  eval_cmd->add_option("run_dir", ev.run_dir, "Run directory")->required();
  eval_cmd->add_option("--config", ev.config, "Engine config JSON")->required();
  eval_cmd->add_option("--out", ev.out, "New output directory")->required();
  eval_cmd->add_option("--backend", ev.backend, "live or scripted")
      ->check(CLI::IsMember({"live", "scripted"}));
  eval_cmd->add_option("--script", ev.script, "Evaluator script for the scripted backend");
  eval_cmd->add_option("--human-scores", ev.human, "CSV round,target,score,explanation");
  eval_cmd->add_option("--rounds", ev.rounds, "Evaluation rounds")->check(CLI::PositiveNumber);

  std::string replay_dir, replay_out;
  auto* replay_cmd = app.add_subcommand("replay", "Re-execute a run against its transcript");
  replay_cmd->add_option("run_dir", replay_dir, "Run directory")->required();
  replay_cmd->add_option("--out", replay_out, "Parent directory for the rerun")->required();

  std::string config_path;
  auto* validate_cmd = app.add_subcommand("validate-config", "Print the effective configuration");
  validate_cmd->add_option("config", config_path, "Engine config JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInput;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    if (*run_cmd) return cmd_run(run);
    if (*index_cmd) return cmd_index(guideline, index_out, index_config, chunk_size, overlap);
    if (*eval_cmd) return cmd_evaluate(ev);
    if (*replay_cmd) return cmd_replay(replay_dir, replay_out);
    if (*validate_cmd) return cmd_validate_config(config_path);
  } catch (const Error& e) {
    return fail(command, e.code(), e.what());
  } catch (const std::exception& e) {
    std::cerr << "disasteller " << command << ": " << e.what() << "\n";
    emit({{"command", command}, {"ok", false}, {"error", {{"code", "Internal"}, {"message", e.what()}}}});
    return kInternal;
  }
  return kInternal;
}
