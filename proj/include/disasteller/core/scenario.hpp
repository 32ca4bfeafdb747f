#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace disasteller::core {

struct SiteImage {
  std::string site_id;
  std::string location_name;
  std::string image_path;  // absolute
  int width = 0;
  int height = 0;
};

struct DisasterScenario {
  std::string scenario_id;
  std::string region_name;
  std::vector<SiteImage> sites;
  std::string global_map_path;
  int map_width = 0;
  int map_height = 0;
  std::string gazetteer_path;
  std::string guideline_path;
  std::string manifest_path;

  const SiteImage* find_site(const std::string& site_id) const;
};

/// Reads a scenario manifest. Relative paths resolve against the
/// manifest's directory; every referenced file must exist and every image
/// must decode. Throws ScenarioInvalid otherwise.
DisasterScenario load_scenario(const std::string& manifest_path);

/// Re-checks that every referenced file still exists (ScenarioInvalid).
void validate_scenario(const DisasterScenario& scenario);

nlohmann::json sites_to_json(const DisasterScenario& scenario);

}  // namespace disasteller::core
