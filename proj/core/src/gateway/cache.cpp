#include "capgeo/gateway/cache.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>

namespace capgeo::gateway {

using nlohmann::json;
namespace fs = std::filesystem;

ResponseCache::ResponseCache(fs::path dir) : dir_(std::move(dir)) {
  if (dir_.empty()) return;
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec) degrade("cannot create cache directory: " + ec.message());
}

fs::path ResponseCache::entry_path(const std::string& fingerprint) const {
  return dir_ / fingerprint.substr(0, 2) / (fingerprint + ".resp");
}

void ResponseCache::degrade(const std::string& why) {
  if (!degraded_) {
    std::cerr << "warning: response cache disabled (" << why << ")\n";
  }
  degraded_ = true;
}

std::optional<ChatResponse> ResponseCache::lookup(const std::string& fingerprint) {
  std::lock_guard lock(mutex_);
  if (!enabled()) return std::nullopt;
  const fs::path path = entry_path(fingerprint);
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  try {
    json j;
    in >> j;
    ChatResponse resp;
    resp.text = j.at("text").get<std::string>();
    resp.finish_reason = finish_reason_from_name(j.at("finish_reason").get<std::string>());
    resp.usage.prompt_tokens = j.value("prompt_tokens", 0L);
    resp.usage.completion_tokens = j.value("completion_tokens", 0L);
    resp.provenance.cache_hit = true;
    resp.provenance.attempts = 0;
    return resp;
  } catch (const std::exception& e) {
    degrade(std::string("unreadable cache entry: ") + e.what());
    return std::nullopt;
  }
}

void ResponseCache::store(const std::string& fingerprint, const ChatResponse& response) {
  std::lock_guard lock(mutex_);
  if (!enabled()) return;
  try {
    const fs::path path = entry_path(fingerprint);
    fs::create_directories(path.parent_path());
    const json j = {
        {"fingerprint", fingerprint},
        {"created_at",
         std::chrono::duration_cast<std::chrono::seconds>(
             std::chrono::system_clock::now().time_since_epoch())
             .count()},
        {"text", response.text},
        {"finish_reason", finish_reason_name(response.finish_reason)},
        {"prompt_tokens", response.usage.prompt_tokens},
        {"completion_tokens", response.usage.completion_tokens},
    };
    const fs::path tmp = path.parent_path() / (fingerprint + ".tmp");
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) throw std::runtime_error("cannot open " + tmp.string());
      out << j.dump(2) << '\n';
      if (!out) throw std::runtime_error("short write to " + tmp.string());
    }
    fs::rename(tmp, path);
  } catch (const std::exception& e) {
    degrade(e.what());
  }
}

}  // namespace capgeo::gateway
