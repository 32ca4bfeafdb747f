#pragma once

#include <chrono>
#include <functional>
#include <set>

#include "disasteller/error.hpp"
#include "disasteller/gateway/backend.hpp"

namespace disasteller::gateway {

struct RetryPolicy {
  int max_attempts = 3;
  std::chrono::milliseconds base_delay{500};
  /// Only Timeout and Transport are ever honoured here; Transport retries
  /// additionally require a 5xx status.
  std::set<Errc> retryable = {Errc::Timeout, Errc::Transport};
};

using Sleeper = std::function<void(std::chrono::milliseconds)>;

bool is_retryable(const Error& error, const RetryPolicy& policy);

/// Calls backend.complete until success or max_attempts. The delay after
/// the failed attempt with zero-based index i is base_delay * 2^i.
/// Rethrows the last error once attempts are exhausted.
ModelResponse with_retry(ModelBackend& backend, const ModelRequest& request,
                         const RetryPolicy& policy, const Sleeper& sleep = {},
                         int* attempts_used = nullptr);

class RetryingBackend : public ModelBackend {
 public:
  RetryingBackend(ModelBackend& inner, RetryPolicy policy, Sleeper sleep = {})
      : inner_(inner), policy_(std::move(policy)), sleep_(std::move(sleep)) {}

  ModelResponse complete(const ModelRequest& request) override {
    return with_retry(inner_, request, policy_, sleep_);
  }

 private:
  ModelBackend& inner_;
  RetryPolicy policy_;
  Sleeper sleep_;
};

}  // namespace disasteller::gateway
