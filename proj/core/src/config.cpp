#include "capgeo/config.hpp"

#include <nlohmann/json.hpp>

#include <fstream>

#include "capgeo/errors.hpp"

namespace capgeo {

using nlohmann::json;

ToolkitConfig ToolkitConfig::offline_defaults() {
  ToolkitConfig c;
  c.providers.push_back({"mock", "mock", "", "", {}, ""});
  return c;
}

std::pair<std::string, std::string> ToolkitConfig::route_model(const std::string& model_id) const {
  for (const auto& binding : models) {
    if (binding.id == model_id) {
      return {binding.provider, binding.model_name.empty() ? binding.id : binding.model_name};
    }
  }
  for (const auto& p : providers) {
    if (p.id == model_id) return {p.id, model_id};
  }
  for (const auto& p : providers) {
    if (p.kind == "mock") return {p.id, model_id};
  }
  throw UsageError("no provider route for model '" + model_id + "'");
}

ToolkitConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw DataError("bad config JSON in " + path + ": " + e.what());
  }

  ToolkitConfig c;
  for (const auto& jp : j.value("providers", json::array())) {
    ProviderDecl p;
    p.id = jp.at("id").get<std::string>();
    p.kind = jp.value("kind", "mock");
    p.endpoint = jp.value("endpoint", "");
    p.api_key_env = jp.value("api_key_env", "");
    p.default_reply = jp.value("default_reply", "");
    for (const auto& jr : jp.value("rules", json::array())) {
      p.rules.push_back({jr.at("contains").get<std::string>(), jr.at("reply").get<std::string>()});
    }
    c.providers.push_back(std::move(p));
  }
  for (const auto& jm : j.value("models", json::array())) {
    c.models.push_back({jm.at("id").get<std::string>(), jm.at("provider").get<std::string>(),
                        jm.value("model_name", "")});
  }
  if (j.contains("decoding")) {
    const auto& jd = j["decoding"];
    c.decoding.temperature = jd.value("temperature", 0.0);
    c.decoding.max_output_tokens = jd.value("max_output_tokens", 4096);
    if (jd.contains("seed")) c.decoding.seed = jd["seed"].get<std::uint64_t>();
  }
  c.prompts_dir = j.value("prompts_dir", "");
  c.cache_dir = j.value("cache_dir", "");
  c.store_dir = j.value("store_dir", "store");
  c.mathvista_filter = j.value("mathvista_filter", "geometry");
  if (c.providers.empty()) c.providers.push_back({"mock", "mock", "", "", {}, ""});
  return c;
}

std::unique_ptr<gateway::Gateway> build_gateway(const ToolkitConfig& config,
                                                gateway::ImageResolver resolver) {
  auto gw = std::make_unique<gateway::Gateway>(config.cache_dir);
  for (const auto& decl : config.providers) {
    if (decl.kind == "mock") {
      auto handler = decl.rules.empty() && decl.default_reply.empty()
                         ? gateway::MockProvider::scripted_default()
                         : gateway::MockProvider::table_handler(decl.rules, decl.default_reply);
      gw->register_provider(std::make_shared<gateway::MockProvider>(decl.id, std::move(handler)));
    } else if (decl.kind == "openai-chat") {
      gateway::HttpProviderConfig hc;
      hc.id = decl.id;
      hc.endpoint = decl.endpoint;
      hc.api_key_env = decl.api_key_env;
      gw->register_provider(std::make_shared<gateway::OpenAiChatProvider>(hc, resolver));
    } else {
      throw DataError("unknown provider kind '" + decl.kind + "'");
    }
  }
  return gw;
}

}  // namespace capgeo
