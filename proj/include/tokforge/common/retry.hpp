#pragma once

#include <chrono>
#include <functional>
#include <mutex>

#include "tokforge/common/error.hpp"

namespace tokforge {

struct RetryPolicy {
  int max_retries = 3;
  std::chrono::milliseconds initial_delay{500};
  std::chrono::milliseconds max_delay{8000};
  double multiplier = 2.0;

  /// Delay before retry number `retry` (1-based), capped at max_delay.
  [[nodiscard]] std::chrono::milliseconds delay_for(int retry) const;
};

using Sleeper = std::function<void(std::chrono::milliseconds)>;

/// Sleeps on the calling thread.
[[nodiscard]] Sleeper real_sleeper();

/// Calls fn(attempt) for attempt = 0, 1, ... and retries only on
/// Error(transport), sleeping per the policy between tries. `retries` receives
/// the number of retries performed, also when the last error is rethrown.
template <typename Fn>
auto with_retries(const RetryPolicy& policy, const Sleeper& sleep, int& retries, Fn&& fn) -> decltype(fn(0)) {
  for (int attempt = 0;; ++attempt) {
    retries = attempt;
    try {
      return fn(attempt);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::transport || attempt >= policy.max_retries) throw;
    }
    if (sleep) sleep(policy.delay_for(attempt + 1));
  }
}

/// Token bucket shared by concurrent callers. A rate of zero disables limiting.
class RateLimiter {
 public:
  explicit RateLimiter(double requests_per_second, double burst = 1.0);

  void acquire();

 private:
  using Clock = std::chrono::steady_clock;

  double rate_;
  double burst_;
  double tokens_;
  Clock::time_point last_;
  std::mutex mutex_;
};

}  // namespace tokforge
