#include "disasteller/core/scenario.hpp"

#include <filesystem>
#include <set>

#include "disasteller/core/digest.hpp"
#include "disasteller/core/raster.hpp"
#include "disasteller/error.hpp"

namespace fs = std::filesystem;

namespace disasteller::core {

const SiteImage* DisasterScenario::find_site(const std::string& site_id) const {
  for (const auto& s : sites) {
    if (s.site_id == site_id) return &s;
  }
  return nullptr;
}

namespace {

[[noreturn]] void invalid(const std::string& msg) {
  throw Error(Errc::ScenarioInvalid, msg);
}

std::string required_string(const nlohmann::json& j, const char* field,
                            const std::string& where) {
  if (!j.contains(field) || !j[field].is_string() ||
      j[field].get<std::string>().empty()) {
    invalid(where + ": missing or empty string field '" + field + "'");
  }
  return j[field].get<std::string>();
}

std::string existing_path(const fs::path& base, const std::string& rel,
                          const std::string& what) {
  const fs::path p = fs::absolute(base / rel).lexically_normal();
  if (!fs::is_regular_file(p)) {
    invalid(what + " file not found: " + p.string());
  }
  return p.string();
}

std::pair<int, int> image_dims(const std::string& path) {
  try {
    const auto r = load_image(path);
    return {r.width(), r.height()};
  } catch (const Error& e) {
    invalid(e.detail());
  }
}

}  // namespace

DisasterScenario load_scenario(const std::string& manifest_path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text_file(manifest_path));
  } catch (const nlohmann::json::exception& e) {
    invalid("manifest '" + manifest_path + "' is not valid JSON: " + e.what());
  } catch (const Error& e) {
    invalid(e.detail());
  }
  if (!j.is_object()) invalid("manifest must be a JSON object");

  const fs::path base = fs::absolute(manifest_path).parent_path();
  DisasterScenario sc;
  sc.manifest_path = fs::absolute(manifest_path).lexically_normal().string();
  sc.scenario_id = required_string(j, "scenario_id", "manifest");
  sc.region_name = required_string(j, "region_name", "manifest");

  if (!j.contains("sites") || !j["sites"].is_array() || j["sites"].empty()) {
    invalid("manifest needs at least one site");
  }
  std::set<std::string> ids;
  for (std::size_t i = 0; i < j["sites"].size(); ++i) {
    const auto& s = j["sites"][i];
    const std::string where = "sites[" + std::to_string(i) + "]";
    if (!s.is_object()) invalid(where + " must be an object");
    SiteImage site;
    site.site_id = required_string(s, "site_id", where);
    site.location_name = required_string(s, "location_name", where);
    if (!ids.insert(site.site_id).second) {
      invalid("duplicate site_id '" + site.site_id + "'");
    }
    site.image_path =
        existing_path(base, required_string(s, "image", where), where + " image");
    std::tie(site.width, site.height) = image_dims(site.image_path);
    sc.sites.push_back(std::move(site));
  }

  sc.global_map_path = existing_path(
      base, required_string(j, "global_map", "manifest"), "global map");
  std::tie(sc.map_width, sc.map_height) = image_dims(sc.global_map_path);
  sc.gazetteer_path =
      existing_path(base, required_string(j, "gazetteer", "manifest"), "gazetteer");
  sc.guideline_path =
      existing_path(base, required_string(j, "guideline", "manifest"), "guideline");
  return sc;
}

void validate_scenario(const DisasterScenario& sc) {
  if (sc.sites.empty()) invalid("scenario has no sites");
  if (sc.map_width < 1 || sc.map_height < 1) invalid("global map is empty");
  auto check = [](const std::string& p, const std::string& what) {
    if (!fs::is_regular_file(p)) invalid(what + " file not found: " + p);
  };
  for (const auto& s : sc.sites) check(s.image_path, "site image");
  check(sc.global_map_path, "global map");
  check(sc.gazetteer_path, "gazetteer");
  check(sc.guideline_path, "guideline");
}

nlohmann::json sites_to_json(const DisasterScenario& sc) {
  nlohmann::json sites = nlohmann::json::array();
  for (const auto& s : sc.sites) {
    sites.push_back({{"site_id", s.site_id},
                     {"location_name", s.location_name},
                     {"width", s.width},
                     {"height", s.height}});
  }
  return {{"scenario_id", sc.scenario_id},
          {"region_name", sc.region_name},
          {"sites", sites},
          {"global_map", {{"width", sc.map_width}, {"height", sc.map_height}}}};
}

}  // namespace disasteller::core
