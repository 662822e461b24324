#pragma once

#include <functional>
#include <string>
#include <vector>

#include "capgeo/gateway/provider.hpp"

namespace capgeo::gateway {

// Resolves an image digest to its bytes (backed by the content store).
using ImageResolver = std::function<std::vector<unsigned char>(const std::string& digest)>;

struct HttpProviderConfig {
  std::string id;
  std::string endpoint;     // e.g. "https://api.openai.com/v1/chat/completions"
  std::string api_key_env;  // environment variable holding the bearer token
  int timeout_seconds = 120;
};

// Chat-completions adapter speaking the OpenAI-style wire schema. Image
// attachments are inlined as base64 data URLs resolved from the content
// store. HTTP 429/5xx map to retryable errors, other 4xx to rejections.
class OpenAiChatProvider : public Provider {
public:
  OpenAiChatProvider(HttpProviderConfig config, ImageResolver resolver = {});

  std::string id() const override { return config_.id; }
  ProviderReply complete(const ChatRequest& req) override;

  // Exposed for tests: the exact JSON payload sent on the wire.
  std::string build_payload(const ChatRequest& req) const;

private:
  HttpProviderConfig config_;
  ImageResolver resolver_;
};

std::string base64_encode(const unsigned char* data, std::size_t size);

}  // namespace capgeo::gateway
