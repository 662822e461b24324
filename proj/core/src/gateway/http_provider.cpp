#ifdef CAPGEO_WITH_TLS
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include <httplib.h>

#include "capgeo/gateway/http_provider.hpp"

#include <nlohmann/json.hpp>

#include <cstdlib>

namespace capgeo::gateway {

using nlohmann::json;

std::string base64_encode(const unsigned char* data, std::size_t size) {
  static constexpr char alphabet[] =
      "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
  std::string out;
  out.reserve((size + 2) / 3 * 4);
  for (std::size_t i = 0; i < size; i += 3) {
    unsigned int chunk = static_cast<unsigned int>(data[i]) << 16;
    if (i + 1 < size) chunk |= static_cast<unsigned int>(data[i + 1]) << 8;
    if (i + 2 < size) chunk |= static_cast<unsigned int>(data[i + 2]);
    out += alphabet[(chunk >> 18) & 0x3f];
    out += alphabet[(chunk >> 12) & 0x3f];
    out += i + 1 < size ? alphabet[(chunk >> 6) & 0x3f] : '=';
    out += i + 2 < size ? alphabet[chunk & 0x3f] : '=';
  }
  return out;
}

OpenAiChatProvider::OpenAiChatProvider(HttpProviderConfig config, ImageResolver resolver)
    : config_(std::move(config)), resolver_(std::move(resolver)) {}

std::string OpenAiChatProvider::build_payload(const ChatRequest& req) const {
  json messages = json::array();
  for (const auto& m : req.messages) {
    if (m.image_digest.empty()) {
      messages.push_back({{"role", m.role}, {"content", m.text}});
      continue;
    }
    if (!resolver_) {
      throw GatewayError(GatewayError::Kind::Rejected,
                         "request attaches an image but no content store is configured");
    }
    const auto bytes = resolver_(m.image_digest);
    json parts = json::array();
    parts.push_back({{"type", "text"}, {"text", m.text}});
    parts.push_back(
        {{"type", "image_url"},
         {"image_url",
          {{"url", "data:image/png;base64," + base64_encode(bytes.data(), bytes.size())}}}});
    messages.push_back({{"role", m.role}, {"content", std::move(parts)}});
  }
  json payload = {
      {"model", req.model_id},
      {"messages", std::move(messages)},
      {"temperature", req.decoding.temperature},
      {"max_tokens", req.decoding.max_output_tokens},
  };
  if (req.decoding.seed) payload["seed"] = *req.decoding.seed;
  return payload.dump();
}

ProviderReply OpenAiChatProvider::complete(const ChatRequest& req) {
  // Split endpoint into origin + path for httplib.
  const auto scheme_end = config_.endpoint.find("://");
  if (scheme_end == std::string::npos) {
    throw GatewayError(GatewayError::Kind::Rejected, "bad endpoint: " + config_.endpoint);
  }
  const auto path_start = config_.endpoint.find('/', scheme_end + 3);
  const std::string origin =
      path_start == std::string::npos ? config_.endpoint : config_.endpoint.substr(0, path_start);
  const std::string path =
      path_start == std::string::npos ? "/" : config_.endpoint.substr(path_start);

#ifndef CAPGEO_WITH_TLS
  if (origin.rfind("https", 0) == 0) {
    throw GatewayError(GatewayError::Kind::Rejected, "built without TLS support");
  }
#endif

  httplib::Client client(origin);
  client.set_connection_timeout(config_.timeout_seconds);
  client.set_read_timeout(config_.timeout_seconds);

  httplib::Headers headers;
  if (!config_.api_key_env.empty()) {
    const char* key = std::getenv(config_.api_key_env.c_str());
    if (!key || !*key) {
      throw GatewayError(GatewayError::Kind::Rejected,
                         "credentials missing: set " + config_.api_key_env);
    }
    headers.emplace("Authorization", std::string("Bearer ") + key);
  }

  const auto result = client.Post(path, headers, build_payload(req), "application/json");
  if (!result) {
    throw GatewayError(GatewayError::Kind::Transport,
                       "transport failure: " + httplib::to_string(result.error()));
  }
  if (result->status == 429) {
    throw GatewayError(GatewayError::Kind::RateLimit, "rate limited (429)");
  }
  if (result->status >= 500) {
    throw GatewayError(GatewayError::Kind::Transport,
                       "server error (" + std::to_string(result->status) + ")");
  }
  if (result->status != 200) {
    throw GatewayError(GatewayError::Kind::Rejected,
                       "provider rejected request (" + std::to_string(result->status) +
                           "): " + result->body.substr(0, 200));
  }

  try {
    const json j = json::parse(result->body);
    const auto& choice = j.at("choices").at(0);
    ProviderReply reply;
    reply.text = choice.at("message").at("content").get<std::string>();
    const std::string finish = choice.value("finish_reason", "stop");
    reply.finish_reason = finish == "length" ? FinishReason::Length : FinishReason::Stop;
    if (j.contains("usage")) {
      reply.usage.prompt_tokens = j["usage"].value("prompt_tokens", 0L);
      reply.usage.completion_tokens = j["usage"].value("completion_tokens", 0L);
    }
    return reply;
  } catch (const json::exception& e) {
    throw GatewayError(GatewayError::Kind::Malformed,
                       std::string("malformed provider response: ") + e.what());
  }
}

}  // namespace capgeo::gateway
