#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "capgeo/gateway/chat.hpp"
#include "capgeo/gateway/gateway.hpp"
#include "capgeo/gateway/http_provider.hpp"
#include "capgeo/gateway/mock_provider.hpp"

namespace capgeo {

struct ProviderDecl {
  std::string id;
  std::string kind;  // "mock" | "openai-chat"
  // openai-chat
  std::string endpoint;
  std::string api_key_env;
  // mock
  std::vector<gateway::MockProvider::Rule> rules;
  std::string default_reply;
};

// A user-facing model name routed to a provider, with the provider-side
// model identifier.
struct ModelBinding {
  std::string id;
  std::string provider;
  std::string model_name;
};

struct ToolkitConfig {
  std::vector<ProviderDecl> providers;
  std::vector<ModelBinding> models;
  gateway::Decoding decoding;
  std::string prompts_dir;
  std::string cache_dir;
  std::string store_dir = "store";
  std::string mathvista_filter = "geometry";

  // Default offline configuration: a single deterministic mock provider
  // that every model id routes to.
  static ToolkitConfig offline_defaults();

  // Routes a model id through its binding; unbound ids fall back to a
  // provider with the same id, then to a provider named "mock".
  std::pair<std::string, std::string> route_model(const std::string& model_id) const;
};

ToolkitConfig load_config(const std::string& path);

// Builds a gateway with every configured provider registered.
// `resolver` feeds image bytes to HTTP providers.
std::unique_ptr<gateway::Gateway> build_gateway(const ToolkitConfig& config,
                                                gateway::ImageResolver resolver = {});

}  // namespace capgeo
