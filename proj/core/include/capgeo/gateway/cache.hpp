#pragma once

#include <filesystem>
#include <mutex>
#include <optional>
#include <string>

#include "capgeo/gateway/chat.hpp"

namespace capgeo::gateway {

// Content-addressed response cache: cache/<2-hex-prefix>/<fingerprint>.resp.
// Writes are atomic (write temp file, then rename). I/O failures degrade to
// a disabled cache with a single warning instead of failing the call.
class ResponseCache {
public:
  ResponseCache() = default;  // disabled
  explicit ResponseCache(std::filesystem::path dir);

  bool enabled() const { return !dir_.empty() && !degraded_; }
  const std::filesystem::path& dir() const { return dir_; }

  std::optional<ChatResponse> lookup(const std::string& fingerprint);
  void store(const std::string& fingerprint, const ChatResponse& response);

private:
  std::filesystem::path entry_path(const std::string& fingerprint) const;
  void degrade(const std::string& why);

  std::filesystem::path dir_;
  bool degraded_ = false;
  std::mutex mutex_;
};

}  // namespace capgeo::gateway
