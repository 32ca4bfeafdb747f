#include "disasteller/toolkit/web_search.hpp"

#include <httplib.h>

#include "disasteller/core/digest.hpp"
#include "disasteller/core/text.hpp"
#include "disasteller/error.hpp"
#include "disasteller/gateway/http_backend.hpp"

using nlohmann::json;

namespace disasteller::toolkit {

namespace {

SearchResult result_from_json(const json& j) {
  return {j.at("title").get<std::string>(), j.at("url").get<std::string>(),
          j.value("snippet", "")};
}

}  // namespace

json to_json(const SearchResult& r) {
  return {{"title", r.title}, {"url", r.url}, {"snippet", r.snippet}};
}

FixtureSearchProvider::FixtureSearchProvider(
    std::map<std::string, std::vector<SearchResult>> fixtures) {
  for (auto& [q, results] : fixtures) {
    fixtures_[core::normalize_name(q)] = std::move(results);
  }
}

FixtureSearchProvider FixtureSearchProvider::from_json(const json& j) {
  if (!j.is_object()) {
    throw Error(Errc::ConfigError, "web-search fixture must be a JSON object");
  }
  std::map<std::string, std::vector<SearchResult>> fixtures;
  try {
    for (const auto& [query, list] : j.items()) {
      auto& out = fixtures[query];
      for (const auto& r : list) out.push_back(result_from_json(r));
    }
  } catch (const json::exception& e) {
    throw Error(Errc::ConfigError, std::string("web-search fixture: ") + e.what());
  }
  return FixtureSearchProvider(std::move(fixtures));
}

FixtureSearchProvider FixtureSearchProvider::from_file(const std::string& path) {
  try {
    return from_json(json::parse(core::read_text_file(path)));
  } catch (const json::parse_error& e) {
    throw Error(Errc::ConfigError, path + ": " + e.what());
  }
}

std::vector<SearchResult> FixtureSearchProvider::search(const std::string& query, int k) {
  auto it = fixtures_.find(core::normalize_name(query));
  if (it == fixtures_.end()) {
    throw Error(Errc::NoFixture, "no canned results for query '" + query + "'");
  }
  const auto n = std::min<std::size_t>(it->second.size(), static_cast<std::size_t>(std::max(k, 0)));
  return {it->second.begin(), it->second.begin() + static_cast<std::ptrdiff_t>(n)};
}

std::vector<SearchResult> LiveSearchProvider::search(const std::string& query, int k) {
  auto [origin, path] = gateway::split_url(config_.endpoint);
  httplib::Client client(origin);
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(config_.deadline);
  client.set_connection_timeout(secs.count());
  client.set_read_timeout(secs.count());
  if (!config_.api_key.empty()) client.set_bearer_token_auth(config_.api_key);
  httplib::Params params{{"q", query}, {"count", std::to_string(k)}};
  auto res = client.Get(path.empty() ? "/" : path, params, httplib::Headers{});
  if (!res) {
    throw Error(Errc::ProviderUnavailable,
                "search request failed: " + httplib::to_string(res.error()));
  }
  if (res->status < 200 || res->status > 299) {
    throw Error(Errc::ProviderUnavailable, "search provider returned HTTP " +
                                               std::to_string(res->status));
  }
  std::vector<SearchResult> out;
  try {
    const auto body = json::parse(res->body);
    for (const auto& r : body.at("results")) {
      if (static_cast<int>(out.size()) >= k) break;
      out.push_back(result_from_json(r));
    }
  } catch (const json::exception& e) {
    throw Error(Errc::ProviderUnavailable, std::string("unreadable search response: ") + e.what());
  }
  return out;
}

}  // namespace disasteller::toolkit
