#include "disasteller/gateway/retry.hpp"

#include <stdexcept>
#include <thread>

namespace disasteller::gateway {

bool is_retryable(const Error& error, const RetryPolicy& policy) {
  if (!policy.retryable.contains(error.code())) return false;
  switch (error.code()) {
    case Errc::Timeout:
      return true;
    case Errc::Transport: {
      const auto* t = dynamic_cast<const TransportError*>(&error);
      return t != nullptr && t->status() >= 500 && t->status() <= 599;
    }
    default:
      return false;
  }
}

ModelResponse with_retry(ModelBackend& backend, const ModelRequest& request,
                         const RetryPolicy& policy, const Sleeper& sleep,
                         int* attempts_used) {
  if (policy.max_attempts < 1) {
    throw std::invalid_argument("retry policy needs max_attempts >= 1");
  }
  for (int attempt = 0;; ++attempt) {
    if (attempts_used != nullptr) *attempts_used = attempt + 1;
    try {
      return backend.complete(request);
    } catch (const Error& e) {
      if (attempt + 1 >= policy.max_attempts || !is_retryable(e, policy)) throw;
      const auto delay = policy.base_delay * (1LL << attempt);
      if (sleep) {
        sleep(delay);
      } else {
        std::this_thread::sleep_for(delay);
      }
    }
  }
}

}  // namespace disasteller::gateway
