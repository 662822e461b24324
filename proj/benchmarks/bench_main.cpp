#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "capgeo/gateway/chat.hpp"
#include "capgeo/matching.hpp"
#include "capgeo/notation.hpp"

using namespace capgeo;

namespace {

// Deterministic synthetic set: n elements, n relations, n numericals over a
// small label pool so matching has real collisions.
KeypointSet synthetic_set(int n, unsigned salt) {
  KeypointSet set;
  for (int i = 0; i < n; ++i) {
    const char a = static_cast<char>('A' + (i + salt) % 6);
    const char b = static_cast<char>('A' + (i + salt + 1) % 6);
    set.insert(parse_keypoint_line("E: segment " + std::string{a, b}));
    set.insert(parse_keypoint_line("R: parallel(segment " + std::string{a, b} + "; segment " +
                                   std::string{b, static_cast<char>('A' + (i + salt + 2) % 6)} +
                                   ")"));
    set.insert(parse_keypoint_line("N: length(segment " + std::string{a, b} +
                                   ") = " + std::to_string(1 + (i + salt) % 9)));
  }
  return set;
}

void BM_ParseDocument(benchmark::State& state) {
  const std::string text = serialize_keypoints(synthetic_set(static_cast<int>(state.range(0)), 0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(parse_keypoint_document(text));
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(text.size()));
}
BENCHMARK(BM_ParseDocument)->Arg(4)->Arg(16)->Arg(64);

void BM_SerializeKeypoints(benchmark::State& state) {
  const KeypointSet set = synthetic_set(static_cast<int>(state.range(0)), 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(serialize_keypoints(set));
  }
}
BENCHMARK(BM_SerializeKeypoints)->Arg(4)->Arg(16)->Arg(64);

void BM_Canonicalize(benchmark::State& state) {
  const Keypoint kp = parse_keypoint_line("R: parallel(segment FE; segment BA)");
  for (auto _ : state) {
    benchmark::DoNotOptimize(canonicalize(kp));
  }
}
BENCHMARK(BM_Canonicalize);

void BM_OracleMatch(benchmark::State& state) {
  const KeypointSet gt = synthetic_set(static_cast<int>(state.range(0)), 0);
  const KeypointSet resp = synthetic_set(static_cast<int>(state.range(0)), 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle_match(resp, gt, Dimension::Spatial));
  }
}
BENCHMARK(BM_OracleMatch)->Arg(4)->Arg(8)->Arg(16);

void BM_CacheKey(benchmark::State& state) {
  gateway::ChatRequest req;
  req.provider_id = "openai";
  req.model_id = "gpt-4o";
  req.messages.push_back({"user", std::string(1024, 'q'), "0123456789abcdef"});
  for (auto _ : state) {
    benchmark::DoNotOptimize(gateway::cache_key(req));
  }
}
BENCHMARK(BM_CacheKey);

}  // namespace

BENCHMARK_MAIN();
