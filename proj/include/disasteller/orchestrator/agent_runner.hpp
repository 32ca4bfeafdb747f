#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "disasteller/core/blackboard.hpp"
#include "disasteller/error.hpp"
#include "disasteller/gateway/backend.hpp"
#include "disasteller/orchestrator/agent_spec.hpp"
#include "disasteller/reporting/report.hpp"
#include "disasteller/toolkit/registry.hpp"

namespace disasteller::orchestrator {

struct StageResult {
  StageId stage = StageId::Expert;
  std::vector<std::string> written_keys;
  std::vector<reporting::Report> reports;
  /// Every dispatch tagged with this stage, model and orchestrator origin.
  std::vector<toolkit::ToolCallRecord> tool_calls;
  int attempts = 0;
  int model_calls = 0;
  double duration_ms = 0;

  std::size_t model_tool_calls() const;
};

/// Thrown when the reports still fail validation after the last retry.
/// Carries the final attempt's reports and their issues.
class FormatRetriesExhaustedError : public Error {
 public:
  FormatRetriesExhaustedError(const std::string& message, std::vector<reporting::Report> reports)
      : Error(Errc::FormatRetriesExhausted, message), reports_(std::move(reports)) {}
  const std::vector<reporting::Report>& reports() const noexcept { return reports_; }
  std::vector<reporting::Issue> issues() const;

 private:
  std::vector<reporting::Report> reports_;
};

struct AgentRunOptions {
  reporting::ValidationContext validation;
  /// Bytes of an image-ref artifact named by an input entry.
  std::function<std::vector<std::uint8_t>(const std::string& artifact)> artifact_bytes;
  /// Runs once the reports validate; returns extra entries that are
  /// published together with the report entries.
  std::function<std::vector<core::BlackboardEntry>(const std::vector<reporting::Report>&)>
      finalize;
};

/// Executes one agent: reads its input keys, runs the tool-use loop against
/// the gateway, validates its reports (re-prompting with the issues up to
/// max_format_retries times) and publishes all outputs in one atomic write.
///
/// Throws MissingInput before any model call, DisallowedTool before any
/// dispatch of the offending response, ToolIterationLimit,
/// FormatRetriesExhaustedError, and gateway errors. Tool failures other
/// than gateway errors go back to the model as error results.
StageResult run_agent(const AgentSpec& spec, core::Blackboard& board,
                      gateway::ModelBackend& gateway, toolkit::ToolRegistry& registry,
                      const AgentRunOptions& options = {});

/// The user turn an agent starts from: its inputs and report instructions.
gateway::Message compose_task_message(const AgentSpec& spec, const core::Blackboard& board,
                                      const AgentRunOptions& options);

/// Feedback turn listing validation issues per report.
std::string describe_issues(const std::vector<reporting::Report>& reports);

}  // namespace disasteller::orchestrator
