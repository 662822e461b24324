#include "capgeo/gateway/chat.hpp"

#include <nlohmann/json.hpp>

#include "capgeo/digest.hpp"
#include "capgeo/errors.hpp"

namespace capgeo::gateway {

using nlohmann::json;

const char* finish_reason_name(FinishReason r) {
  switch (r) {
    case FinishReason::Stop: return "stop";
    case FinishReason::Length: return "length";
    case FinishReason::Error: return "error";
  }
  return "error";
}

FinishReason finish_reason_from_name(const std::string& name) {
  if (name == "stop") return FinishReason::Stop;
  if (name == "length") return FinishReason::Length;
  return FinishReason::Error;
}

void validate_request(const ChatRequest& req) {
  if (req.messages.empty()) throw UsageError("chat request has no messages");
  if (req.decoding.temperature < 0) throw UsageError("temperature must be >= 0");
  if (req.model_id.empty()) throw UsageError("chat request has no model id");
}

std::string canonical_request_json(const ChatRequest& req) {
  json messages = json::array();
  for (const auto& m : req.messages) {
    json jm = {{"role", m.role}, {"text", m.text}};
    if (!m.image_digest.empty()) jm["image"] = m.image_digest;
    messages.push_back(std::move(jm));
  }
  json j = {
      {"provider", req.provider_id},
      {"model", req.model_id},
      {"messages", std::move(messages)},
      {"temperature", req.decoding.temperature},
      {"max_output_tokens", req.decoding.max_output_tokens},
  };
  if (req.decoding.seed) j["seed"] = *req.decoding.seed;
  return j.dump();  // object keys are emitted sorted
}

std::string cache_key(const ChatRequest& req) {
  return sha256_hex(canonical_request_json(req));
}

}  // namespace capgeo::gateway
