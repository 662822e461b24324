#include "capgeo/gateway/gateway.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <thread>

namespace capgeo::gateway {

Gateway::Gateway(std::filesystem::path cache_dir, RetryPolicy policy)
    : cache_(std::move(cache_dir)), policy_(policy) {
  sleeper_ = [](int ms) { std::this_thread::sleep_for(std::chrono::milliseconds(ms)); };
}

void Gateway::register_provider(ProviderPtr provider) {
  providers_[provider->id()] = std::move(provider);
}

bool Gateway::has_provider(const std::string& id) const { return providers_.count(id) > 0; }

Provider& Gateway::provider_for(const ChatRequest& req) {
  const auto it = providers_.find(req.provider_id);
  if (it == providers_.end()) {
    throw GatewayError(GatewayError::Kind::Rejected,
                       "no provider registered for '" + req.provider_id + "'");
  }
  return *it->second;
}

ChatResponse Gateway::complete(const ChatRequest& req) {
  validate_request(req);
  const std::string fingerprint = cache_key(req);

  if (auto hit = cache_.lookup(fingerprint)) {
    std::lock_guard lock(stats_mutex_);
    ++stats_.cache_hits;
    return *hit;
  }

  Provider& provider = provider_for(req);
  const auto start = std::chrono::steady_clock::now();
  int attempt = 0;
  for (;;) {
    ++attempt;
    try {
      {
        std::lock_guard lock(stats_mutex_);
        ++stats_.provider_calls;
      }
      const ProviderReply reply = provider.complete(req);
      ChatResponse resp;
      resp.text = reply.text;
      resp.finish_reason = reply.finish_reason;
      resp.usage = reply.usage;
      resp.provenance.cache_hit = false;
      resp.provenance.attempts = attempt;
      resp.provenance.wall_ms = static_cast<long>(
          std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                                start)
              .count());
      if (resp.finish_reason != FinishReason::Error) {
        cache_.store(fingerprint, resp);
      }
      return resp;
    } catch (const GatewayError& e) {
      if (!e.retryable() || attempt >= policy_.max_attempts) {
        std::lock_guard lock(stats_mutex_);
        ++stats_.failures;
        throw;
      }
      const int delay = static_cast<int>(
          std::llround(policy_.base_delay_ms * std::pow(policy_.factor, attempt - 1)));
      sleeper_(delay);
    }
  }
}

std::vector<ChatResponse> Gateway::batch(const std::vector<ChatRequest>& reqs, int max_in_flight) {
  if (max_in_flight < 1) throw UsageError("max_in_flight must be >= 1");

  // Dedup identical requests inside the batch: one provider call per unique
  // fingerprint, every other position reports a cache hit.
  std::vector<std::string> keys(reqs.size());
  std::map<std::string, std::size_t> first_of;
  std::vector<std::size_t> unique_positions;
  for (std::size_t i = 0; i < reqs.size(); ++i) {
    validate_request(reqs[i]);
    keys[i] = cache_key(reqs[i]);
    if (first_of.emplace(keys[i], i).second) unique_positions.push_back(i);
  }

  std::vector<ChatResponse> results(reqs.size());
  std::atomic<std::size_t> next{0};
  const int workers =
      static_cast<int>(std::min<std::size_t>(unique_positions.size(),
                                             static_cast<std::size_t>(max_in_flight)));

  auto run = [&]() {
    for (;;) {
      const std::size_t slot = next.fetch_add(1);
      if (slot >= unique_positions.size()) return;
      const std::size_t i = unique_positions[slot];
      try {
        results[i] = complete(reqs[i]);
      } catch (const std::exception& e) {
        results[i].finish_reason = FinishReason::Error;
        results[i].error = e.what();
      }
    }
  };

  if (workers <= 1) {
    run();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(run);
    for (auto& t : pool) t.join();
  }

  for (std::size_t i = 0; i < reqs.size(); ++i) {
    const std::size_t first = first_of[keys[i]];
    if (first != i) {
      results[i] = results[first];
      if (results[i].finish_reason != FinishReason::Error) {
        results[i].provenance.cache_hit = true;
        results[i].provenance.attempts = 0;
        std::lock_guard lock(stats_mutex_);
        ++stats_.cache_hits;
      }
    }
  }
  return results;
}

Gateway::Stats Gateway::stats() const {
  std::lock_guard lock(stats_mutex_);
  return stats_;
}

void Gateway::reset_stats() {
  std::lock_guard lock(stats_mutex_);
  stats_ = {};
}

}  // namespace capgeo::gateway
