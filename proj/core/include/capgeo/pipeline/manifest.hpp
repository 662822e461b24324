#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "capgeo/gateway/chat.hpp"

namespace capgeo::pipeline {

inline constexpr const char* kToolkitVersion = "0.1.0";

// Reproducible description of one run: everything a request fingerprint
// depends on. The run id is a digest of these fields; timestamps are
// recorded but excluded so reruns of identical inputs share the id.
struct RunManifest {
  std::string stage;  // caption | reason | bench-eval
  std::string dataset_digest;
  std::string captioner;
  std::string reasoner;
  std::string judge;
  std::string mode;
  gateway::Decoding decoding;
  std::optional<std::uint64_t> sample_seed;
  std::optional<std::size_t> sample_n;
  std::string prompts_digest;
  std::string mathvista_filter;
  std::string toolkit_version = kToolkitVersion;
  std::string created_at;  // ISO-8601 UTC

  std::string run_id() const;
  std::string to_json() const;

  static RunManifest from_json(const std::string& text);
  void stamp_now();
  void save(const std::string& path) const;
};

std::string file_digest(const std::string& path);  // sha256 of the file bytes

}  // namespace capgeo::pipeline
