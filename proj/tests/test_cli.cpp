#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "support.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  const std::string command = std::string(CAPGEO_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  char buffer[4096];
  while (std::size_t n = fread(buffer, 1, sizeof(buffer), pipe)) {
    result.output.append(buffer, n);
  }
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

struct Workspace {
  fs::path dir;
  Workspace() {
    dir = fs::temp_directory_path() / ("capgeo-cli-" + std::to_string(std::random_device{}()));
    fs::create_directories(dir);
  }
  ~Workspace() { fs::remove_all(dir); }
  std::string operator/(const std::string& name) const { return (dir / name).string(); }
};

std::string common_flags(const Workspace& ws) {
  return "--config " + testsupport::fixture_path("config/mock_config.json") + " --cache-dir " +
         (ws / "cache");
}

}  // namespace

TEST_CASE("cli: usage errors exit 1") {
  CHECK(run_cli("no-such-command").exit_code == 1);
  CHECK(run_cli("ingest").exit_code == 1);  // missing required options
  CHECK(run_cli("reason --records x.jsonl --mode caption-with-image --reasoner m").exit_code == 1);
}

TEST_CASE("cli: data errors exit 2, bad layout is usage") {
  Workspace ws;
  const auto missing =
      run_cli("ingest --benchmark /does/not/exist.jsonl --format mathverse --out " + (ws / "r"));
  CHECK(missing.exit_code == 2);

  const auto bad_format = run_cli("ingest --benchmark " +
                                  testsupport::fixture_path("benchmark/geoqa_records.jsonl") +
                                  " --format not-a-format --out " + (ws / "r"));
  CHECK(bad_format.exit_code == 2);
}

TEST_CASE("cli: full offline pipeline, warm-cache rerun is byte-identical") {
  Workspace ws;
  const std::string store = ws / "store";
  const std::string records = ws / "records.jsonl";

  // ingest
  auto r = run_cli("--out " + records + " ingest --benchmark " +
                   testsupport::fixture_path("benchmark/mathverse_records.jsonl") +
                   " --format mathverse --store " + store);
  CAPTURE(r.output);
  REQUIRE(r.exit_code == 0);
  CHECK(r.output.find("ingested 20 records") != std::string::npos);

  auto run_pipeline = [&](const std::string& tag) {
    const std::string captions = ws / ("captions-" + tag + ".jsonl");
    const std::string flags = common_flags(ws);
    // the config's store_dir defaults to "store"; pass cwd-independent paths
    auto c = run_cli(flags + " --out " + captions +
                     " caption --records " + records + " --captioner mock-captioner");
    CAPTURE(c.output);
    REQUIRE(c.exit_code == 0);

    std::string tabulate_inputs;
    for (const std::string mode :
         {"direct-vision", "caption-with-image", "caption-without-image"}) {
      const std::string results = ws / ("results-" + mode + "-" + tag + ".jsonl");
      std::string cmd = flags + " --out " + results + " reason --records " + records +
                        " --mode " + mode + " --reasoner mock-reasoner";
      if (mode != "direct-vision") cmd += " --captions " + captions;
      auto reason = run_cli(cmd);
      CAPTURE(reason.output);
      REQUIRE(reason.exit_code == 0);

      auto grade = run_cli("--out " + results + " grade --records " + records + " --results " +
                           results);
      REQUIRE(grade.exit_code == 0);
      tabulate_inputs += " " + results;
    }

    const std::string table = ws / ("table-" + tag + ".md");
    auto t = run_cli("--out " + table + " tabulate --results" + tabulate_inputs +
                     " --layout mathverse --format markdown");
    CAPTURE(t.output);
    REQUIRE(t.exit_code == 0);
    return slurp(table);
  };

  // content store location comes from the config's store_dir, which is
  // relative; run caption/reason from the workspace so "store" resolves
  const std::string saved = fs::current_path().string();
  fs::current_path(ws.dir);
  const std::string first = run_pipeline("a");
  const std::string second = run_pipeline("b");
  fs::current_path(saved);

  CHECK(first == second);  // warm cache reproduces the report byte for byte
  CHECK(first.find("mathverse vision-only") != std::string::npos);
  CHECK(first.find("mock-reasoner") != std::string::npos);
}

TEST_CASE("cli: bench-eval with oracle judge, score table, export-traces") {
  Workspace ws;
  const std::string report = ws / "bench_report.json";
  const std::string scores = ws / "scores.csv";
  const std::string traces = ws / "traces";

  auto b = run_cli("--out " + report + " bench-eval --pairs " +
                   testsupport::fixture_path("bench/capgeo_pairs.jsonl") +
                   " --judge oracle --traces " + traces + " --scores " + scores);
  CAPTURE(b.output);
  REQUIRE(b.exit_code == 0);
  CHECK(b.output.find("evaluated 12, failed 0") != std::string::npos);
  CHECK(fs::exists(report));

  // score rows export carries the documented columns
  const std::string scores_text = slurp(scores);
  CHECK(scores_text.find("record_id,class,difficulty,s_element,s_spatial,s_numerical,mean,") !=
        std::string::npos);
  CHECK(scores_text.find("pg-t2,PG,T2,0.75,") != std::string::npos);

  auto s = run_cli("--out " + (ws / "grid.md") + " score --reports " + report);
  REQUIRE(s.exit_code == 0);
  const std::string grid = slurp(ws / "grid.md");
  CHECK(grid.find("| AG |") != std::string::npos);
  CHECK(grid.find("Overall") != std::string::npos);

  // run id from the report manifest names the trace directory
  const std::string manifest = slurp(report + ".manifest.json");
  const auto pos = manifest.find("\"run_id\": \"");
  REQUIRE(pos != std::string::npos);
  const std::string run_id = manifest.substr(pos + 11, 12);
  auto e = run_cli("--out " + (ws / "bundle.txt") + " export-traces --traces " + traces +
                   " --run " + run_id);
  CAPTURE(e.output);
  REQUIRE(e.exit_code == 0);
  const std::string bundle = slurp(ws / "bundle.txt");
  CHECK(bundle.find("record: pg-t2") != std::string::npos);
  CHECK(bundle.find("12 records") != std::string::npos);
}

TEST_CASE("cli: correlate joins bench quality with reasoning accuracy") {
  Workspace ws;

  // two bench reports, patched to carry different captioner labels
  // (--captioner would run a captioning model; these pairs already carry
  // their response captions)
  for (const std::string cap : {"cap-a", "cap-b"}) {
    auto b = run_cli("--out " + (ws / ("report-" + cap + ".json")) + " bench-eval --pairs " +
                     testsupport::fixture_path("bench/capgeo_pairs.jsonl") + " --judge oracle");
    REQUIRE(b.exit_code == 0);
    std::string text = slurp(ws / ("report-" + cap + ".json"));
    const std::string needle = "\"captioner\": \"\"";
    const auto pos = text.find(needle);
    REQUIRE(pos != std::string::npos);
    text.replace(pos, needle.size(), "\"captioner\": \"" + cap + "\"");
    std::ofstream(ws / ("report-" + cap + ".json")) << text;
  }

  // graded results referencing the same captioners
  std::ofstream results(ws / "graded.jsonl");
  auto row = [&](const std::string& cap, bool correct) {
    results << R"({"problem_id":"p","reasoner":"mm","mode":"caption-with-image",)"
            << R"("benchmark":"mathverse","variant":"vision-only","raw":"x","graded":true,)"
            << R"("captioner":")" << cap << R"(","correct":)" << (correct ? "true" : "false")
            << R"(,"extracted":"A","extraction_failure":false,"fingerprint":"f","run_id":"runY"})"
            << "\n";
  };
  row("cap-a", true);
  row("cap-a", true);
  row("cap-b", true);
  row("cap-b", false);
  results.close();

  auto c = run_cli("--out " + (ws / "corr.json") + " correlate --reports " +
                   (ws / "report-cap-a.json") + " " + (ws / "report-cap-b.json") +
                   " --results " + (ws / "graded.jsonl") +
                   " --reasoner mm --mode caption-with-image --benchmark mathverse "
                   "--variant vision-only");
  CAPTURE(c.output);
  REQUIRE(c.exit_code == 0);
  const std::string corr = slurp(ws / "corr.json");
  CHECK(corr.find("\"statistic\": \"pearson\"") != std::string::npos);
  CHECK(corr.find("cap-a") != std::string::npos);

  // report bundles the table csv and the correlation json
  auto score = run_cli("--out " + (ws / "grid.csv") + " score --reports " +
                       (ws / "report-cap-a.json") + " --format csv");
  REQUIRE(score.exit_code == 0);
  auto rep = run_cli("--out " + (ws / "final.md") + " report --tables " + (ws / "grid.csv") +
                     " --correlations " + (ws / "corr.json") + " --format markdown");
  CAPTURE(rep.output);
  REQUIRE(rep.exit_code == 0);
  const std::string final_md = slurp(ws / "final.md");
  CHECK(final_md.find("caption quality by class and difficulty") != std::string::npos);
  CHECK(final_md.find("pearson r =") != std::string::npos);
}
