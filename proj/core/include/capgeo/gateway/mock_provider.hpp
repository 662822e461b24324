#pragma once

#include <atomic>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "capgeo/gateway/provider.hpp"

namespace capgeo::gateway {

// Deterministic offline provider. The reply is a pure function of the
// request, so cached and uncached runs agree byte for byte. Supports
// scripted failure injection and records a concurrency high-water mark,
// which the batch tests use to check the in-flight bound.
class MockProvider : public Provider {
public:
  using Handler = std::function<std::string(const ChatRequest&)>;

  explicit MockProvider(std::string id, Handler handler = scripted_default());

  std::string id() const override { return id_; }
  ProviderReply complete(const ChatRequest& req) override;

  // The next `n` calls fail with the given kind before any reply is produced.
  void fail_next(int n, GatewayError::Kind kind = GatewayError::Kind::Transport);

  // Artificial per-call latency, for concurrency tests.
  void set_latency_ms(int ms) { latency_ms_ = ms; }

  int call_count() const { return calls_.load(); }
  int concurrency_high_water() const { return high_water_.load(); }

  // Substring rules evaluated against the concatenated message text, first
  // match wins; falls back to `fallback` (scripted_default when empty).
  struct Rule {
    std::string contains;
    std::string reply;
  };
  static Handler table_handler(std::vector<Rule> rules, std::string default_reply = "");

  // Derives a deterministic reply from the request fingerprint. Understands
  // the shipped prompt shapes well enough to produce an option letter for
  // choice questions, a number for numeric ones, and a small keypoint
  // document for judge extraction requests.
  static Handler scripted_default();

private:
  std::string id_;
  Handler handler_;
  std::atomic<int> calls_{0};
  std::atomic<int> in_flight_{0};
  std::atomic<int> high_water_{0};
  std::atomic<int> fail_remaining_{0};
  GatewayError::Kind fail_kind_ = GatewayError::Kind::Transport;
  int latency_ms_ = 0;
};

}  // namespace capgeo::gateway
