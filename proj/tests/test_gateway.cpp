#include <doctest.h>

#include <httplib.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <thread>

#include "capgeo/gateway/gateway.hpp"
#include "capgeo/gateway/http_provider.hpp"
#include "capgeo/gateway/mock_provider.hpp"
#include "support.hpp"

using namespace capgeo;
using namespace capgeo::gateway;
namespace fs = std::filesystem;

namespace {

ChatRequest simple_request(const std::string& text, const std::string& image = "") {
  ChatRequest req;
  req.provider_id = "mock";
  req.model_id = "test-model";
  req.messages.push_back({"user", text, image});
  return req;
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("capgeo-test-" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("cache keys are sensitive to every request component") {
  const auto base = simple_request("hello");
  CHECK(cache_key(base) == cache_key(simple_request("hello")));

  auto other = base;
  other.decoding.temperature = 0.7;
  CHECK(cache_key(base) != cache_key(other));

  other = base;
  other.messages[0].text = "hello!";
  CHECK(cache_key(base) != cache_key(other));

  other = base;
  other.model_id = "test-model-2";
  CHECK(cache_key(base) != cache_key(other));

  CHECK(cache_key(simple_request("hi", "abc123")) != cache_key(simple_request("hi", "abc124")));

  // message order is significant
  auto two = base;
  two.messages.push_back({"user", "second", ""});
  auto swapped = two;
  std::swap(swapped.messages[0], swapped.messages[1]);
  CHECK(cache_key(two) != cache_key(swapped));

  other = base;
  other.decoding.seed = 7;
  CHECK(cache_key(base) != cache_key(other));
}

TEST_CASE("request invariants are enforced") {
  ChatRequest empty;
  empty.provider_id = "mock";
  empty.model_id = "m";
  CHECK_THROWS_AS(validate_request(empty), UsageError);

  auto bad_temp = simple_request("x");
  bad_temp.decoding.temperature = -0.5;
  CHECK_THROWS_AS(validate_request(bad_temp), UsageError);
}

TEST_CASE("second identical call is a cache hit with zero provider calls") {
  TempDir tmp;
  Gateway gw(tmp.path / "cache");
  auto mock = std::make_shared<MockProvider>("mock");
  gw.register_provider(mock);

  const auto req = simple_request("what is AB?");
  const auto first = gw.complete(req);
  CHECK_FALSE(first.provenance.cache_hit);
  CHECK(first.provenance.attempts == 1);
  CHECK(mock->call_count() == 1);

  const auto second = gw.complete(req);
  CHECK(second.provenance.cache_hit);
  CHECK(second.provenance.attempts == 0);
  CHECK(second.text == first.text);  // byte-identical
  CHECK(mock->call_count() == 1);
  CHECK(gw.stats().cache_hits == 1);

  // the entry sits under the two-hex fan-out
  const std::string key = cache_key(req);
  CHECK(fs::exists(tmp.path / "cache" / key.substr(0, 2) / (key + ".resp")));
}

TEST_CASE("fixed reply table returns the mapped reply") {
  Gateway gw;  // no cache
  gw.register_provider(std::make_shared<MockProvider>(
      "mock", MockProvider::table_handler({{"parallelogram", "It is a parallelogram."},
                                           {"circle", "It is a circle."}},
                                          "no idea")));
  CHECK(gw.complete(simple_request("describe the parallelogram ABCD")).text ==
        "It is a parallelogram.");
  CHECK(gw.complete(simple_request("describe circle O")).text == "It is a circle.");
  CHECK(gw.complete(simple_request("describe the line")).text == "no idea");
}

TEST_CASE("retry with exponential backoff: fail twice, succeed on attempt 3") {
  TempDir tmp;
  Gateway gw(tmp.path / "cache");
  auto mock = std::make_shared<MockProvider>("mock");
  gw.register_provider(mock);

  std::vector<int> delays;
  gw.set_sleeper([&](int ms) { delays.push_back(ms); });

  mock->fail_next(2);
  const auto resp = gw.complete(simple_request("flaky"));
  CHECK(resp.provenance.attempts == 3);
  CHECK(mock->call_count() == 3);
  REQUIRE(delays.size() == 2);
  CHECK(delays[0] == 1000);  // base 1s
  CHECK(delays[1] == 2000);  // doubled
}

TEST_CASE("retries stop at the attempt budget and non-retryable errors are immediate") {
  Gateway gw;
  auto mock = std::make_shared<MockProvider>("mock");
  gw.register_provider(mock);
  int sleeps = 0;
  gw.set_sleeper([&](int) { ++sleeps; });

  mock->fail_next(100);
  CHECK_THROWS_AS(gw.complete(simple_request("always down")), GatewayError);
  CHECK(mock->call_count() == 5);  // max attempts
  CHECK(sleeps == 4);

  mock->fail_next(1, GatewayError::Kind::Rejected);
  const int before = mock->call_count();
  CHECK_THROWS_AS(gw.complete(simple_request("rejected")), GatewayError);
  CHECK(mock->call_count() == before + 1);  // no retry
  CHECK(gw.stats().failures == 2);
}

TEST_CASE("batch: positional alignment and sequential degenerate bound") {
  Gateway gw;
  gw.register_provider(std::make_shared<MockProvider>("mock"));
  std::vector<ChatRequest> reqs;
  for (int i = 0; i < 10; ++i) reqs.push_back(simple_request("q" + std::to_string(i)));

  const auto results = gw.batch(reqs, 1);
  REQUIRE(results.size() == 10);
  for (int i = 0; i < 10; ++i) {
    CHECK(results[static_cast<std::size_t>(i)].text ==
          gw.complete(reqs[static_cast<std::size_t>(i)]).text);
  }
}

TEST_CASE("batch deduplicates identical requests") {
  TempDir tmp;
  Gateway gw(tmp.path / "cache");
  auto mock = std::make_shared<MockProvider>("mock");
  gw.register_provider(mock);

  std::vector<ChatRequest> reqs(10, simple_request("same question"));
  const auto results = gw.batch(reqs, 4);
  CHECK(mock->call_count() == 1);
  int hits = 0;
  for (const auto& r : results) {
    CHECK(r.text == results[0].text);
    if (r.provenance.cache_hit) ++hits;
  }
  CHECK(hits == 9);
}

TEST_CASE("batch concurrency never exceeds max-in-flight") {
  Gateway gw;
  auto mock = std::make_shared<MockProvider>("mock");
  mock->set_latency_ms(3);
  gw.register_provider(mock);

  std::vector<ChatRequest> reqs;
  for (int i = 0; i < 100; ++i) reqs.push_back(simple_request("q" + std::to_string(i)));
  const auto results = gw.batch(reqs, 8);

  CHECK(mock->concurrency_high_water() <= 8);
  CHECK(mock->concurrency_high_water() >= 2);  // it did actually run in parallel
  CHECK(mock->call_count() == 100);
  for (std::size_t i = 0; i < reqs.size(); ++i) {
    CHECK(results[i].text == gw.complete(reqs[i]).text);
  }
}

TEST_CASE("batch embeds per-item failures without aborting") {
  Gateway gw;
  auto mock = std::make_shared<MockProvider>("mock");
  gw.register_provider(mock);
  gw.set_sleeper([](int) {});

  mock->fail_next(5, GatewayError::Kind::Rejected);  // first item fails fast
  std::vector<ChatRequest> reqs;
  for (int i = 0; i < 6; ++i) reqs.push_back(simple_request("item " + std::to_string(i)));
  const auto results = gw.batch(reqs, 1);

  int errors = 0;
  for (const auto& r : results) {
    if (r.finish_reason == FinishReason::Error) {
      ++errors;
      CHECK_FALSE(r.error.empty());
    }
  }
  CHECK(errors == 5);
  CHECK(results[5].finish_reason == FinishReason::Stop);
}

TEST_CASE("cache io failure degrades to no-cache instead of failing the call") {
  TempDir tmp;
  const fs::path blocked = tmp.path / "blocked";
  std::ofstream(blocked) << "a file where the cache dir should be";
  Gateway gw(blocked / "cache");  // cannot create a directory under a file
  gw.register_provider(std::make_shared<MockProvider>("mock"));
  const auto resp = gw.complete(simple_request("still works"));
  CHECK(resp.finish_reason == FinishReason::Stop);
  CHECK_FALSE(resp.text.empty());
}

TEST_CASE("openai-style http provider against a local server") {
  httplib::Server server;
  std::atomic<int> fails{2};
  std::string last_body;
  server.Post("/v1/chat/completions", [&](const httplib::Request& req, httplib::Response& res) {
    last_body = req.body;
    if (fails.fetch_sub(1) > 0) {
      res.status = 429;
      return;
    }
    res.set_content(
        R"({"choices":[{"message":{"content":"The answer is (B)."},"finish_reason":"stop"}],)"
        R"("usage":{"prompt_tokens":12,"completion_tokens":5}})",
        "application/json");
  });

  const int port = server.bind_to_any_port("127.0.0.1");
  std::thread server_thread([&] { server.listen_after_bind(); });
  while (!server.is_running()) std::this_thread::sleep_for(std::chrono::milliseconds(1));

  TempDir tmp;
  std::ofstream(tmp.path / "img") << "fake image bytes";
  HttpProviderConfig config;
  config.id = "local";
  config.endpoint = "http://127.0.0.1:" + std::to_string(port) + "/v1/chat/completions";
  Gateway gw;
  gw.set_sleeper([](int) {});
  gw.register_provider(std::make_shared<OpenAiChatProvider>(
      config, [&](const std::string&) { return std::vector<unsigned char>{1, 2, 3, 4}; }));

  ChatRequest req = simple_request("What is angle ABC?", "imagedigest00");
  req.provider_id = "local";
  const auto resp = gw.complete(req);
  CHECK(resp.text == "The answer is (B).");
  CHECK(resp.provenance.attempts == 3);  // two 429s then success
  CHECK(resp.usage.prompt_tokens == 12);

  // wire payload carried the data-url image and the decoding params
  CHECK(last_body.find("image_url") != std::string::npos);
  CHECK(last_body.find("data:image/png;base64,AQIDBA==") != std::string::npos);
  CHECK(last_body.find("\"temperature\":0.0") != std::string::npos);

  server.stop();
  server_thread.join();
}

TEST_CASE("http provider maps status codes to error kinds") {
  httplib::Server server;
  server.Post("/chat", [&](const httplib::Request&, httplib::Response& res) {
    res.status = 400;
    res.set_content("bad request", "text/plain");
  });
  const int port = server.bind_to_any_port("127.0.0.1");
  std::thread server_thread([&] { server.listen_after_bind(); });
  while (!server.is_running()) std::this_thread::sleep_for(std::chrono::milliseconds(1));

  HttpProviderConfig config;
  config.id = "local";
  config.endpoint = "http://127.0.0.1:" + std::to_string(port) + "/chat";
  OpenAiChatProvider provider(config);
  auto req = simple_request("x");
  req.provider_id = "local";
  try {
    provider.complete(req);
    FAIL("expected GatewayError");
  } catch (const GatewayError& e) {
    CHECK(e.kind() == GatewayError::Kind::Rejected);
    CHECK_FALSE(e.retryable());
  }
  server.stop();
  server_thread.join();
}

TEST_CASE("missing credentials are a non-retryable rejection") {
  HttpProviderConfig config;
  config.id = "remote";
  config.endpoint = "http://127.0.0.1:1/chat";
  config.api_key_env = "CAPGEO_TEST_KEY_THAT_IS_NOT_SET";
  OpenAiChatProvider provider(config);
  auto req = simple_request("x");
  req.provider_id = "remote";
  try {
    provider.complete(req);
    FAIL("expected GatewayError");
  } catch (const GatewayError& e) {
    CHECK(e.kind() == GatewayError::Kind::Rejected);
  }
}
