#include "disasteller/toolkit/gazetteer.hpp"

#include <nlohmann/json.hpp>

#include "disasteller/core/digest.hpp"
#include "disasteller/core/text.hpp"
#include "disasteller/error.hpp"

namespace disasteller::toolkit {

Gazetteer::Gazetteer(std::vector<GazetteerEntry> entries) : entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto key = core::normalize_name(entries_[i].name);
    if (key.empty() || !canonical_.emplace(key, i).second) {
      throw Error(Errc::ScenarioInvalid,
                  "gazetteer name '" + entries_[i].name + "' is empty or duplicated");
    }
  }
  // First alias wins on collisions; canonical names shadow aliases anyway.
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    for (const auto& a : entries_[i].aliases) aliases_.emplace(core::normalize_name(a), i);
  }
}

Gazetteer Gazetteer::load(const std::string& path) {
  std::vector<GazetteerEntry> entries;
  try {
    const auto j = nlohmann::json::parse(core::read_text_file(path));
    if (!j.is_array()) throw Error(Errc::ScenarioInvalid, path + ": expected a JSON array");
    for (const auto& e : j) {
      GazetteerEntry entry;
      entry.name = e.at("name").get<std::string>();
      entry.aliases = e.value("aliases", std::vector<std::string>{});
      entry.x = e.at("x").get<int>();
      entry.y = e.at("y").get<int>();
      entries.push_back(std::move(entry));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ScenarioInvalid, path + ": " + e.what());
  }
  return Gazetteer(std::move(entries));
}

std::optional<PixelCoord> Gazetteer::try_resolve(std::string_view name) const {
  const auto key = core::normalize_name(name);
  auto it = canonical_.find(key);
  if (it == canonical_.end()) {
    it = aliases_.find(key);
    if (it == aliases_.end()) return std::nullopt;
  }
  const auto& e = entries_[it->second];
  return PixelCoord{e.x, e.y};
}

PixelCoord Gazetteer::resolve(std::string_view name) const {
  if (auto c = try_resolve(name)) return *c;
  throw Error(Errc::UnresolvedLocation, "'" + std::string(name) + "' is not in the gazetteer");
}

}  // namespace disasteller::toolkit
