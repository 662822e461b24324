#include "capgeo/pipeline/manifest.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>

#include "capgeo/digest.hpp"
#include "capgeo/errors.hpp"

namespace capgeo::pipeline {

using nlohmann::json;

namespace {

json manifest_core(const RunManifest& m) {
  json j = {
      {"stage", m.stage},
      {"dataset_digest", m.dataset_digest},
      {"captioner", m.captioner},
      {"reasoner", m.reasoner},
      {"judge", m.judge},
      {"mode", m.mode},
      {"temperature", m.decoding.temperature},
      {"max_output_tokens", m.decoding.max_output_tokens},
      {"prompts_digest", m.prompts_digest},
      {"mathvista_filter", m.mathvista_filter},
      {"toolkit_version", m.toolkit_version},
  };
  if (m.decoding.seed) j["decoding_seed"] = *m.decoding.seed;
  if (m.sample_seed) j["sample_seed"] = *m.sample_seed;
  if (m.sample_n) j["sample_n"] = *m.sample_n;
  return j;
}

}  // namespace

std::string RunManifest::run_id() const { return sha256_hex(manifest_core(*this).dump()).substr(0, 12); }

std::string RunManifest::to_json() const {
  json j = manifest_core(*this);
  j["run_id"] = run_id();
  j["created_at"] = created_at;
  return j.dump(2);
}

RunManifest RunManifest::from_json(const std::string& text) {
  const json j = json::parse(text);
  RunManifest m;
  m.stage = j.value("stage", "");
  m.dataset_digest = j.value("dataset_digest", "");
  m.captioner = j.value("captioner", "");
  m.reasoner = j.value("reasoner", "");
  m.judge = j.value("judge", "");
  m.mode = j.value("mode", "");
  m.decoding.temperature = j.value("temperature", 0.0);
  m.decoding.max_output_tokens = j.value("max_output_tokens", 4096);
  if (j.contains("decoding_seed")) m.decoding.seed = j["decoding_seed"].get<std::uint64_t>();
  if (j.contains("sample_seed")) m.sample_seed = j["sample_seed"].get<std::uint64_t>();
  if (j.contains("sample_n")) m.sample_n = j["sample_n"].get<std::size_t>();
  m.prompts_digest = j.value("prompts_digest", "");
  m.mathvista_filter = j.value("mathvista_filter", "");
  m.toolkit_version = j.value("toolkit_version", kToolkitVersion);
  m.created_at = j.value("created_at", "");
  return m;
}

void RunManifest::stamp_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  created_at = buf;
}

void RunManifest::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write manifest: " + path);
  out << to_json() << '\n';
}

std::string file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return sha256_hex(buf.str());
}

}  // namespace capgeo::pipeline
