#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace capgeo::gateway {

struct Decoding {
  double temperature = 0.0;  // deterministic decoding by default
  int max_output_tokens = 4096;
  std::optional<std::uint64_t> seed;

  friend bool operator==(const Decoding&, const Decoding&) = default;
};

// One chat turn. Images travel by content digest and are resolved from the
// local content store by the provider adapter; at most one image per message.
struct ChatMessage {
  std::string role;  // "system" | "user" | "assistant"
  std::string text;
  std::string image_digest;  // empty = no attachment

  friend bool operator==(const ChatMessage&, const ChatMessage&) = default;
};

struct ChatRequest {
  std::string provider_id;
  std::string model_id;
  std::vector<ChatMessage> messages;
  Decoding decoding;

  friend bool operator==(const ChatRequest&, const ChatRequest&) = default;
};

struct Usage {
  long prompt_tokens = 0;
  long completion_tokens = 0;
};

enum class FinishReason { Stop, Length, Error };

const char* finish_reason_name(FinishReason r);
FinishReason finish_reason_from_name(const std::string& name);

struct Provenance {
  bool cache_hit = false;
  int attempts = 0;
  long wall_ms = 0;
};

struct ChatResponse {
  std::string text;
  FinishReason finish_reason = FinishReason::Stop;
  Usage usage;
  Provenance provenance;
  std::string error;  // set when finish_reason == Error
};

// Throws UsageError when a request violates its invariants (empty message
// list, negative temperature).
void validate_request(const ChatRequest& req);

// Canonical serialization of the full request: model, every message (order
// significant), image digests, and decoding parameters.
std::string canonical_request_json(const ChatRequest& req);

// Collision-resistant fingerprint of the canonical serialization.
std::string cache_key(const ChatRequest& req);

}  // namespace capgeo::gateway
