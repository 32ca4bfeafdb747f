#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "disasteller/core/blackboard.hpp"
#include "disasteller/gateway/backend.hpp"
#include "disasteller/reporting/report.hpp"
#include "disasteller/toolkit/registry.hpp"

namespace disasteller::reporting {

struct StageTiming {
  std::string stage;
  double start_ms = 0;  // offsets from run start
  double end_ms = 0;
  double duration_ms() const { return end_ms - start_ms; }
};

/// Full provenance of one pipeline execution.
struct RunRecord {
  std::string run_id;
  std::string scenario_id;
  std::string scenario_manifest;
  std::chrono::system_clock::time_point started_at{};
  std::vector<StageTiming> stage_timings;
  std::vector<toolkit::ToolCallRecord> tool_calls;
  std::vector<core::BlackboardEntry> blackboard;
  std::map<ReportKind, Report> reports;
  std::vector<std::uint8_t> alert_map_png;
  std::vector<gateway::Exchange> exchanges;
  std::vector<std::string> warnings;
  /// Effective engine configuration; never holds credentials.
  nlohmann::json config;
  double total_wall_time_ms = 0;

  bool has_all_reports() const { return reports.size() == kAllReportKinds.size(); }
};

/// Relative paths of the persisted layout.
namespace layout {
inline constexpr const char* kManifest = "manifest.json";
inline constexpr const char* kAlertMap = "alert_map.png";
inline constexpr const char* kBlackboard = "blackboard.json";
inline constexpr const char* kToolLog = "tool_log.json";
inline constexpr const char* kTimings = "timings.json";
inline constexpr const char* kTranscript = "transcript.json";
std::string report_markdown(ReportKind kind);  // reports/<stem>.md
std::string report_sidecar(ReportKind kind);   // reports/<stem>.json
}  // namespace layout

/// Writes <out_dir>/<run_id>/ and returns the manifest path. Refuses to
/// touch an existing run directory (IoError). Invalid reports are persisted
/// with their validation status.
std::string persist_run(const RunRecord& record, const std::string& out_dir);

/// Reads a persisted run back: reports, alert map, blackboard, tool log,
/// timings and manifest fields. Exchanges stay empty; the transcript is
/// available through gateway::load_script.
RunRecord load_run(const std::string& run_dir);

/// Checks every manifest digest against the bytes on disk; returns the
/// artifact paths whose digest does not match.
std::vector<std::string> verify_manifest(const std::string& run_dir);

}  // namespace disasteller::reporting
