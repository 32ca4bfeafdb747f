#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace disasteller::toolkit {

struct PixelCoord {
  int x = 0;
  int y = 0;
  friend bool operator==(const PixelCoord&, const PixelCoord&) = default;
};

struct GazetteerEntry {
  std::string name;
  std::vector<std::string> aliases;
  int x = 0;
  int y = 0;
};

/// Location name -> pixel position on a scenario's global map. Resolution
/// is a normalized exact match, canonical names first, then aliases. It
/// never guesses.
class Gazetteer {
 public:
  /// Throws ScenarioInvalid when two canonical names normalize alike.
  explicit Gazetteer(std::vector<GazetteerEntry> entries);

  /// Gazetteer file: JSON array of {name, aliases[], x, y}.
  static Gazetteer load(const std::string& path);

  /// Throws UnresolvedLocation.
  PixelCoord resolve(std::string_view name) const;
  std::optional<PixelCoord> try_resolve(std::string_view name) const;

  const std::vector<GazetteerEntry>& entries() const noexcept { return entries_; }

 private:
  std::vector<GazetteerEntry> entries_;
  std::map<std::string, std::size_t> canonical_;
  std::map<std::string, std::size_t> aliases_;
};

}  // namespace disasteller::toolkit
