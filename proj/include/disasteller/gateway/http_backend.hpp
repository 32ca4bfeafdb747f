#pragma once

#include <chrono>
#include <condition_variable>
#include <memory>
#include <mutex>
#include <string>

#include "disasteller/gateway/backend.hpp"

namespace disasteller::gateway {

struct HttpBackendConfig {
  /// Base URL; requests go to <endpoint>/chat/completions.
  std::string endpoint;
  std::string api_key;
  std::chrono::milliseconds deadline{120'000};
  /// 0 means unlimited.
  int max_in_flight = 0;
};

/// Environment variable holding the bearer token for live runs.
inline constexpr const char* kApiKeyEnv = "DISASTELLER_API_KEY";

/// OpenAI-compatible chat-completions client.
class HttpBackend : public ModelBackend {
 public:
  explicit HttpBackend(HttpBackendConfig config);
  ~HttpBackend() override;

  ModelResponse complete(const ModelRequest& request) override;

 private:
  void acquire();
  void release();

  HttpBackendConfig config_;
  std::string origin_;  // scheme://host[:port]
  std::string path_;    // base path + /chat/completions
  std::mutex mu_;
  std::condition_variable cv_;
  int in_flight_ = 0;
};

/// Splits "https://host:port/base" into ("https://host:port", "/base").
std::pair<std::string, std::string> split_url(const std::string& url);

}  // namespace disasteller::gateway
