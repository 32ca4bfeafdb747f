#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "disasteller/core/scenario.hpp"
#include "disasteller/gateway/backend.hpp"
#include "disasteller/toolkit/alert_map.hpp"
#include "disasteller/toolkit/gazetteer.hpp"
#include "disasteller/toolkit/guideline_index.hpp"
#include "disasteller/toolkit/interpret_image.hpp"
#include "disasteller/toolkit/registry.hpp"
#include "disasteller/toolkit/web_search.hpp"

namespace disasteller::toolkit {

namespace tool_ids {
inline constexpr const char* kInterpretImage = "interpret_image";
inline constexpr const char* kFileSearch = "file_search";
inline constexpr const char* kWebSearch = "web_search";
inline constexpr const char* kAnnotateMap = "annotate_map";
}  // namespace tool_ids

/// Image id accepted by interpret_image for the scenario's global map.
inline constexpr const char* kGlobalMapImageId = "global_map";

struct AlertMapOutput {
  std::vector<MapAnnotation> annotated;
  std::vector<std::string> unresolved;
  std::vector<std::uint8_t> png;
};

/// What the four tools operate on during one run. Pointers are borrowed and
/// must outlive the registry.
struct StandardToolContext {
  const core::DisasterScenario* scenario = nullptr;
  gateway::ModelBackend* gateway = nullptr;
  InterpretOptions interpret;
  const GuidelineIndex* index = nullptr;
  int default_k = 3;
  WebSearchProvider* search = nullptr;
  const Gazetteer* gazetteer = nullptr;
  MarkerStyle marker_style;
  /// Receives every rendered alert map.
  std::function<void(const AlertMapOutput&)> on_alert_map;
};

std::vector<ToolSpec> standard_tool_specs();

/// Registers interpret_image, file_search, web_search and annotate_map.
void register_standard_tools(ToolRegistry& registry, StandardToolContext context);

}  // namespace disasteller::toolkit
