#include "disasteller/orchestrator/replay.hpp"

#include <filesystem>
#include <map>

#include "disasteller/core/text.hpp"
#include "disasteller/toolkit/standard_tools.hpp"

namespace disasteller::orchestrator {

namespace fs = std::filesystem;

toolkit::FixtureSearchProvider recorded_search(const std::vector<toolkit::ToolCallRecord>& calls) {
  std::map<std::string, std::vector<toolkit::SearchResult>> fixtures;
  for (const auto& rec : calls) {
    if (!rec.ok || rec.tool_id != toolkit::tool_ids::kWebSearch) continue;
    auto& slot = fixtures[core::normalize_name(rec.args.value("query", ""))];
    std::vector<toolkit::SearchResult> results;
    for (const auto& r : rec.result["results"]) {
      results.push_back({r.value("title", ""), r.value("url", ""), r.value("snippet", "")});
    }
    if (results.size() > slot.size()) slot = std::move(results);
  }
  return toolkit::FixtureSearchProvider(std::move(fixtures));
}

ReplayResult replay_run(const std::string& run_dir, const std::string& out_dir) {
  const auto transcript = fs::path(run_dir) / reporting::layout::kTranscript;
  if (!fs::exists(transcript)) {
    throw Error(Errc::IoError, "no " + std::string(reporting::layout::kTranscript) + " in " + run_dir);
  }
  const auto original = reporting::load_run(run_dir);
  const auto config = parse_config(original.config);
  const auto scenario = core::load_scenario(original.scenario_manifest);

  gateway::ScriptedBackend scripted(gateway::load_script(transcript.string()));
  auto search = recorded_search(original.tool_calls);

  ReplayResult out;
  out.rerun = run_pipeline(scenario, config, {&scripted, &search, nullptr}, {original.run_id, {}});
  out.replay_dir = (fs::path(out_dir) / original.run_id).string();
  reporting::persist_run(out.rerun.record, out_dir);

  const auto& rerun = out.rerun.record;
  if (out.rerun.failure) out.differences.push_back("rerun failed: " + out.rerun.failure->message);
  for (auto kind : reporting::kAllReportKinds) {
    const auto a = original.reports.find(kind);
    const auto b = rerun.reports.find(kind);
    const auto name = reporting::to_string(kind);
    if ((a == original.reports.end()) != (b == rerun.reports.end())) {
      out.differences.push_back(name + ": present in only one run");
    } else if (a != original.reports.end() && a->second.raw_text != b->second.raw_text) {
      out.differences.push_back(name + ": report text differs");
    }
  }
  if (original.alert_map_png != rerun.alert_map_png) {
    out.differences.push_back("alert map differs");
  }
  if (scripted.remaining() > 0) {
    out.differences.push_back(std::to_string(scripted.remaining()) +
                              " transcript exchange(s) were not replayed");
  }
  out.identical = out.differences.empty();
  return out;
}

}  // namespace disasteller::orchestrator
