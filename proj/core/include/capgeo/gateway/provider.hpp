#pragma once

#include <memory>
#include <string>

#include "capgeo/errors.hpp"
#include "capgeo/gateway/chat.hpp"

namespace capgeo::gateway {

class GatewayError : public Error {
public:
  enum class Kind {
    Transport,  // network-level failure, retryable
    RateLimit,  // throttled, retryable
    Rejected,   // provider refused the request, not retryable
    Malformed,  // response did not match the provider schema
  };

  GatewayError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}

  Kind kind() const { return kind_; }
  bool retryable() const { return kind_ == Kind::Transport || kind_ == Kind::RateLimit; }

private:
  Kind kind_;
};

struct ProviderReply {
  std::string text;
  FinishReason finish_reason = FinishReason::Stop;
  Usage usage;
};

// One model backend. Implementations must be safe to call from multiple
// threads concurrently.
class Provider {
public:
  virtual ~Provider() = default;
  virtual std::string id() const = 0;
  virtual ProviderReply complete(const ChatRequest& req) = 0;  // throws GatewayError
};

using ProviderPtr = std::shared_ptr<Provider>;

}  // namespace capgeo::gateway
