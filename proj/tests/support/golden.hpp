#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "disasteller/core/scenario.hpp"
#include "disasteller/engine_config.hpp"
#include "disasteller/gateway/backend.hpp"
#include "disasteller/orchestrator/pipeline.hpp"
#include "support/fixtures.hpp"

namespace fixtures {

inline disasteller::core::DisasterScenario scenario() {
  return disasteller::core::load_scenario(manifest());
}

inline disasteller::EngineConfig engine_config() { return disasteller::load_config(config()); }

inline disasteller::gateway::Script golden_script() {
  return disasteller::gateway::load_script(script());
}

/// Replaces (or adds) the scripted answer for (stage, index).
inline void set_response(disasteller::gateway::Script& script, const std::string& stage, int index,
                         disasteller::gateway::ModelResponse response) {
  for (auto& e : script) {
    if (e.stage == stage && e.index == index) {
      e.response = std::move(response);
      return;
    }
  }
  script.push_back({stage, index, std::nullopt, std::move(response)});
}

inline void drop_stage(disasteller::gateway::Script& script, const std::string& stage) {
  std::erase_if(script, [&](const auto& e) { return e.stage == stage; });
}

inline int exchanges_of(const disasteller::reporting::RunRecord& r, const std::string& stage) {
  int n = 0;
  for (const auto& e : r.exchanges) n += e.stage == stage;
  return n;
}

inline int dispatches_of(const disasteller::reporting::RunRecord& r, const std::string& stage) {
  int n = 0;
  for (const auto& t : r.tool_calls) n += t.stage == stage;
  return n;
}

inline disasteller::orchestrator::PipelineResult run_scripted(
    disasteller::gateway::ModelBackend& backend, const disasteller::EngineConfig& cfg,
    const disasteller::orchestrator::PipelineOptions& options = {"wajima-2024-golden", {}}) {
  disasteller::orchestrator::PipelineBackends b;
  b.model = &backend;
  return disasteller::orchestrator::run_pipeline(scenario(), cfg, b, options);
}

/// Drops wall-clock fields so two runs can be compared byte for byte.
inline void strip_timestamps(nlohmann::json& j) {
  static const std::set<std::string> kClock = {"created_at_ms", "started_at_ms", "duration_ms",
                                               "start_ms",      "end_ms",        "total_wall_time_ms"};
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end();) {
      if (kClock.count(it.key())) {
        it = j.erase(it);
      } else {
        strip_timestamps(it.value());
        ++it;
      }
    }
  } else if (j.is_array()) {
    for (auto& v : j) strip_timestamps(v);
  }
}

/// Relative paths whose content differs between two persisted runs, with
/// timestamps removed from JSON files. Manifest digests of the timing
/// files legitimately differ, so the manifest is compared without them.
inline std::vector<std::string> run_dir_differences(const fs::path& a, const fs::path& b) {
  auto listing = [](const fs::path& root) {
    std::set<std::string> files;
    for (const auto& e : fs::recursive_directory_iterator(root)) {
      if (e.is_regular_file()) files.insert(fs::relative(e.path(), root).generic_string());
    }
    return files;
  };
  const auto fa = listing(a);
  const auto fb = listing(b);
  std::vector<std::string> diff;
  if (fa != fb) diff.push_back("<file set>");
  for (const auto& rel : fa) {
    if (!fb.count(rel)) continue;
    const auto ta = disasteller::core::read_text_file((a / rel).string());
    const auto tb = disasteller::core::read_text_file((b / rel).string());
    if (rel.size() > 5 && rel.substr(rel.size() - 5) == ".json") {
      auto ja = nlohmann::json::parse(ta);
      auto jb = nlohmann::json::parse(tb);
      strip_timestamps(ja);
      strip_timestamps(jb);
      if (rel == "manifest.json") {
        for (auto* j : {&ja, &jb}) {
          auto& arts = (*j)["artifacts"];
          for (auto it = arts.begin(); it != arts.end();) {
            const auto p = (*it)["path"].get<std::string>();
            if (p == "timings.json" || p == "blackboard.json" || p == "tool_log.json") {
              it = arts.erase(it);
            } else {
              ++it;
            }
          }
        }
      }
      if (ja != jb) diff.push_back(rel);
    } else if (ta != tb) {
      diff.push_back(rel);
    }
  }
  return diff;
}

}  // namespace fixtures
