#pragma once

#include <chrono>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace disasteller::toolkit {

struct SearchResult {
  std::string title;
  std::string url;
  std::string snippet;
  friend bool operator==(const SearchResult&, const SearchResult&) = default;
};

nlohmann::json to_json(const SearchResult& r);

class WebSearchProvider {
 public:
  virtual ~WebSearchProvider() = default;
  /// At most k results in provider order.
  virtual std::vector<SearchResult> search(const std::string& query, int k) = 0;
};

/// Canned results keyed by normalized query. Unknown queries throw
/// NoFixture; a key mapped to [] yields an empty list.
class FixtureSearchProvider : public WebSearchProvider {
 public:
  explicit FixtureSearchProvider(std::map<std::string, std::vector<SearchResult>> fixtures);

  /// Web-search fixture file: {"<query>": [{title, url, snippet}], ...}.
  static FixtureSearchProvider from_file(const std::string& path);
  static FixtureSearchProvider from_json(const nlohmann::json& j);

  std::vector<SearchResult> search(const std::string& query, int k) override;

 private:
  std::map<std::string, std::vector<SearchResult>> fixtures_;
};

struct LiveSearchConfig {
  /// GET <endpoint>?q=<query>&count=<k>, answering {"results": [...]}.
  std::string endpoint;
  std::string api_key;
  std::chrono::milliseconds deadline{30'000};
};

inline constexpr const char* kSearchKeyEnv = "DISASTELLER_SEARCH_KEY";

/// Network failures and non-2xx statuses throw ProviderUnavailable.
class LiveSearchProvider : public WebSearchProvider {
 public:
  explicit LiveSearchProvider(LiveSearchConfig config) : config_(std::move(config)) {}
  std::vector<SearchResult> search(const std::string& query, int k) override;

 private:
  LiveSearchConfig config_;
};

}  // namespace disasteller::toolkit
