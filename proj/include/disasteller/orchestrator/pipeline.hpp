#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "disasteller/core/scenario.hpp"
#include "disasteller/engine_config.hpp"
#include "disasteller/gateway/backend.hpp"
#include "disasteller/orchestrator/agent_runner.hpp"
#include "disasteller/reporting/run_record.hpp"
#include "disasteller/toolkit/guideline_index.hpp"
#include "disasteller/toolkit/web_search.hpp"

namespace disasteller::orchestrator {

struct PipelineBackends {
  gateway::ModelBackend* model = nullptr;
  /// Required in live web-search mode; fixture mode builds its own when null.
  toolkit::WebSearchProvider* search = nullptr;
  /// Prebuilt guideline index; ingested from the scenario when null.
  const toolkit::GuidelineIndex* index = nullptr;
};

struct PipelineOptions {
  /// Generated from the scenario id and start time when empty.
  std::string run_id;
  /// Called on the stage's thread when it starts, inside its timing window.
  std::function<void(StageId)> on_stage_start;
};

struct StageFailure {
  StageId stage = StageId::Expert;
  Errc code = Errc::StageFailed;
  std::string message;
  /// Validation issues when code is FormatRetriesExhausted.
  std::vector<reporting::Issue> issues;
  std::vector<StageId> skipped;
};

struct PipelineResult {
  reporting::RunRecord record;
  std::vector<StageResult> stages;
  std::optional<StageFailure> failure;
  bool ok() const { return !failure.has_value(); }
};

/// Runs expert, then alerts and emergency (concurrently when configured),
/// then assignment. A failing stage stops its dependants; the result still
/// holds the partial record. Throws ScenarioInvalid or ConfigError before
/// any model call.
PipelineResult run_pipeline(const core::DisasterScenario& scenario, const EngineConfig& config,
                            const PipelineBackends& backends, const PipelineOptions& options = {});

std::string make_run_id(const std::string& scenario_id);

}  // namespace disasteller::orchestrator
