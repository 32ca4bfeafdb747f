#include "disasteller/gateway/http_backend.hpp"

#include <httplib.h>

#include "disasteller/error.hpp"

namespace disasteller::gateway {

std::pair<std::string, std::string> split_url(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw Error(Errc::ConfigError, "endpoint '" + url + "' has no scheme");
  }
  const auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, ""};
  std::string path = url.substr(path_start);
  while (!path.empty() && path.back() == '/') path.pop_back();
  return {url.substr(0, path_start), path};
}

HttpBackend::HttpBackend(HttpBackendConfig config) : config_(std::move(config)) {
  std::tie(origin_, path_) = split_url(config_.endpoint);
  path_ += "/chat/completions";
}

HttpBackend::~HttpBackend() = default;

void HttpBackend::acquire() {
  if (config_.max_in_flight <= 0) return;
  std::unique_lock lock(mu_);
  cv_.wait(lock, [&] { return in_flight_ < config_.max_in_flight; });
  ++in_flight_;
}

void HttpBackend::release() {
  if (config_.max_in_flight <= 0) return;
  {
    std::lock_guard lock(mu_);
    --in_flight_;
  }
  cv_.notify_one();
}

ModelResponse HttpBackend::complete(const ModelRequest& request) {
  validate_request(request);
  const std::string body = encode_request(request).dump();

  acquire();
  struct Release {
    HttpBackend* self;
    ~Release() { self->release(); }
  } guard{this};

  httplib::Client client(origin_);
  const auto deadline = config_.deadline;
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(deadline);
  const auto usecs =
      std::chrono::duration_cast<std::chrono::microseconds>(deadline - secs);
  client.set_connection_timeout(secs.count(), usecs.count());
  client.set_read_timeout(secs.count(), usecs.count());
  client.set_write_timeout(secs.count(), usecs.count());
  if (!config_.api_key.empty()) client.set_bearer_token_auth(config_.api_key);

  const auto start = std::chrono::steady_clock::now();
  auto res = client.Post(path_, body, "application/json");
  const auto elapsed = std::chrono::steady_clock::now() - start;

  if (!res) {
    const auto err = res.error();
    if (err == httplib::Error::ConnectionTimeout ||
        ((err == httplib::Error::Read || err == httplib::Error::Write) &&
         elapsed >= deadline)) {
      throw Error(Errc::Timeout, "no response from " + origin_ + " within " +
                                     std::to_string(deadline.count()) + " ms");
    }
    throw TransportError(0, "request to " + origin_ + " failed: " +
                                httplib::to_string(err));
  }
  if (res->status < 200 || res->status > 299) {
    // Body may echo request details; keep only the status line.
    throw TransportError(res->status, "HTTP " + std::to_string(res->status) +
                                          " from " + origin_ + path_);
  }
  nlohmann::json parsed;
  try {
    parsed = nlohmann::json::parse(res->body);
  } catch (const nlohmann::json::parse_error&) {
    throw Error(Errc::MalformedResponse, "response body is not JSON");
  }
  return decode_response(parsed);
}

}  // namespace disasteller::gateway
