#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "capgeo/gateway/cache.hpp"
#include "capgeo/gateway/provider.hpp"

namespace capgeo::gateway {

struct RetryPolicy {
  int max_attempts = 5;
  int base_delay_ms = 1000;  // doubles per attempt
  double factor = 2.0;
};

// Provider-agnostic completion front end: fingerprint cache, retry with
// exponential backoff for transient failures, and bounded-parallel batches.
// Shareable across threads after providers are registered.
class Gateway {
public:
  explicit Gateway(std::filesystem::path cache_dir = {}, RetryPolicy policy = {});

  void register_provider(ProviderPtr provider);
  bool has_provider(const std::string& id) const;

  // Cached completion. On a fingerprint hit no provider call is made; on a
  // miss, transient failures retry per policy and successes are persisted.
  // Throws GatewayError when the provider cannot produce a response.
  ChatResponse complete(const ChatRequest& req);

  // Positionally aligned batch with at most `max_in_flight` uncached
  // requests outstanding. Identical requests are deduplicated inside the
  // batch. Item failures are embedded (finish_reason = error), never thrown.
  std::vector<ChatResponse> batch(const std::vector<ChatRequest>& reqs, int max_in_flight);

  // Backoff sleep hook; tests replace it to avoid real delays.
  void set_sleeper(std::function<void(int)> sleeper) { sleeper_ = std::move(sleeper); }

  struct Stats {
    long provider_calls = 0;
    long cache_hits = 0;
    long failures = 0;
  };
  Stats stats() const;
  void reset_stats();

private:
  Provider& provider_for(const ChatRequest& req);

  ResponseCache cache_;
  RetryPolicy policy_;
  std::map<std::string, ProviderPtr> providers_;
  std::function<void(int)> sleeper_;
  mutable std::mutex stats_mutex_;
  Stats stats_;
};

}  // namespace capgeo::gateway
