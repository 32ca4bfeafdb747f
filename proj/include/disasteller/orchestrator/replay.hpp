#pragma once

#include <string>
#include <vector>

#include "disasteller/orchestrator/pipeline.hpp"
#include "disasteller/toolkit/web_search.hpp"

namespace disasteller::orchestrator {

/// Web-search answers recorded in a run's tool log, keyed by query.
toolkit::FixtureSearchProvider recorded_search(const std::vector<toolkit::ToolCallRecord>& calls);

struct ReplayResult {
  bool identical = false;
  /// Human-readable mismatch descriptions; empty when identical.
  std::vector<std::string> differences;
  std::string replay_dir;
  PipelineResult rerun;
};

/// Re-executes a persisted run against its transcript.json and recorded
/// search results, persists the rerun under out_dir and compares reports
/// and alert map byte for byte. Throws IoError when the transcript is
/// missing, ConfigError for an unusable recorded config.
ReplayResult replay_run(const std::string& run_dir, const std::string& out_dir);

}  // namespace disasteller::orchestrator
