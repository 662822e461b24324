// capgeo: caption-assisted geometric reasoning pipeline and caption-quality
// evaluation toolkit. See README.md for the workflow.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>

#include "capgeo/analysis/report.hpp"
#include "capgeo/analysis/table.hpp"
#include "capgeo/bench/evaluate.hpp"
#include "capgeo/bench/judge.hpp"
#include "capgeo/config.hpp"
#include "capgeo/errors.hpp"
#include "capgeo/pipeline/ingest.hpp"
#include "capgeo/pipeline/manifest.hpp"
#include "capgeo/pipeline/stages.hpp"

namespace fs = std::filesystem;
using namespace capgeo;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitProvider = 3;

struct GlobalOptions {
  std::string config_path;
  std::string cache_dir;
  std::string out;
  std::uint64_t seed = 0;
  int max_in_flight = 4;
};

ToolkitConfig load_toolkit_config(const GlobalOptions& global) {
  ToolkitConfig config = global.config_path.empty() ? ToolkitConfig::offline_defaults()
                                                    : load_config(global.config_path);
  if (!global.cache_dir.empty()) config.cache_dir = global.cache_dir;
  return config;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path);
  out << content;
}

pipeline::StageOptions stage_options(const GlobalOptions& global, const std::string& records_path,
                                     std::int64_t sample_n) {
  pipeline::StageOptions options;
  options.max_in_flight = global.max_in_flight;
  options.dataset_digest = pipeline::file_digest(records_path);
  if (sample_n >= 0) {
    options.sample_n = static_cast<std::size_t>(sample_n);
    options.sample_seed = global.seed;
  }
  return options;
}

std::vector<pipeline::ReasoningRecord> read_many_results(const std::vector<std::string>& paths) {
  std::vector<pipeline::ReasoningRecord> all;
  for (const auto& path : paths) {
    auto rows = pipeline::read_reasoning_records(path);
    all.insert(all.end(), rows.begin(), rows.end());
  }
  return all;
}

std::vector<bench::BenchReport> read_many_reports(const std::vector<std::string>& paths) {
  std::vector<bench::BenchReport> reports;
  for (const auto& path : paths) {
    reports.push_back(bench::bench_report_from_json(read_text_file(path)));
  }
  return reports;
}

// ---- subcommand bodies ----

int cmd_ingest(const GlobalOptions& global, const std::string& benchmark_path,
               const std::string& format, const std::string& store_dir) {
  const ToolkitConfig config = load_toolkit_config(global);
  pipeline::ContentStore store(store_dir.empty() ? config.store_dir : store_dir);
  const auto result =
      pipeline::ingest_benchmark(benchmark_path, format, store, config.mathvista_filter);

  const std::string out = global.out.empty() ? "records.jsonl" : global.out;
  pipeline::write_problem_records(out, result.records);
  write_text_file(out + ".rejects", pipeline::rejects_to_json_lines(result.rejects));

  std::cout << "ingested " << result.records.size() << " records, rejected "
            << result.rejects.size() << ", filtered " << result.filtered << "\n"
            << "records: " << out << "\nrejects: " << out << ".rejects\n";
  return kExitOk;
}

int cmd_caption(const GlobalOptions& global, const std::string& records_path,
                const std::string& captioner, std::int64_t sample_n) {
  const ToolkitConfig config = load_toolkit_config(global);
  const auto records = pipeline::read_problem_records(records_path);
  pipeline::ContentStore store(config.store_dir);
  auto gw = build_gateway(config, [&store](const std::string& digest) { return store.get(digest); });
  const auto prompts = pipeline::PromptLibrary::load(config.prompts_dir);

  const auto stage = pipeline::run_caption_stage(records, captioner, *gw, config, prompts,
                                                 stage_options(global, records_path, sample_n));

  const std::string out = global.out.empty() ? "captions.jsonl" : global.out;
  pipeline::write_caption_records(out, stage.captions);
  stage.manifest.save(out + ".manifest.json");
  const auto stats = gw->stats();
  std::cout << "captioned " << stage.captions.size() << " records (provider calls "
            << stats.provider_calls << ", cache hits " << stats.cache_hits << ")\nrun: "
            << stage.manifest.run_id() << "\ncaptions: " << out << "\n";
  return kExitOk;
}

int cmd_reason(const GlobalOptions& global, const std::string& records_path,
               const std::string& mode_name, const std::string& reasoner,
               const std::string& captions_path, std::int64_t sample_n) {
  const auto mode = pipeline::mode_from_token(mode_name);
  if (!mode) throw UsageError("unknown mode '" + mode_name + "'");
  if (*mode != pipeline::ReasoningMode::DirectVision && captions_path.empty()) {
    throw UsageError("mode " + mode_name + " requires --captions");
  }

  const ToolkitConfig config = load_toolkit_config(global);
  const auto records = pipeline::read_problem_records(records_path);
  std::map<std::string, pipeline::CaptionRecord> captions;
  if (!captions_path.empty()) {
    captions = pipeline::captions_by_problem(pipeline::read_caption_records(captions_path));
  }
  pipeline::ContentStore store(config.store_dir);
  auto gw = build_gateway(config, [&store](const std::string& digest) { return store.get(digest); });
  const auto prompts = pipeline::PromptLibrary::load(config.prompts_dir);

  const auto stage = pipeline::run_reason_stage(records, *mode, reasoner, captions, *gw, config,
                                                prompts, stage_options(global, records_path, sample_n));

  const std::string out = global.out.empty() ? "results.jsonl" : global.out;
  pipeline::write_reasoning_records(out, stage.rows);
  stage.manifest.save(out + ".manifest.json");
  const auto stats = gw->stats();
  std::cout << "reasoned " << stage.rows.size() << " records (provider calls "
            << stats.provider_calls << ", cache hits " << stats.cache_hits << ")\nrun: "
            << stage.manifest.run_id() << "\nresults: " << out << "\n";
  return kExitOk;
}

int cmd_grade(const GlobalOptions& global, const std::string& records_path,
              const std::string& results_path) {
  const auto records = pipeline::read_problem_records(records_path);
  auto rows = pipeline::read_reasoning_records(results_path);
  const int graded = pipeline::grade_rows(rows, records);

  const std::string out = global.out.empty() ? results_path : global.out;
  pipeline::write_reasoning_records(out, rows);
  int correct = 0;
  for (const auto& r : rows) {
    if (r.graded && r.correct) ++correct;
  }
  std::cout << "graded " << graded << "/" << rows.size() << " rows, " << correct
            << " correct\ngraded results: " << out << "\n";
  return kExitOk;
}

int cmd_bench_eval(const GlobalOptions& global, const std::string& pairs_path,
                   const std::string& judge_name, const std::string& captions_path,
                   const std::string& captioner, const std::string& trace_dir,
                   const std::string& scores_path, int max_parallel) {
  const ToolkitConfig config = load_toolkit_config(global);
  auto pairs = bench::read_caption_pairs(pairs_path);

  pipeline::ContentStore store(config.store_dir);
  auto gw = build_gateway(config, [&store](const std::string& digest) { return store.get(digest); });
  const auto prompts = pipeline::PromptLibrary::load(config.prompts_dir);

  // Captioner given: generate response captions from the pair figures
  // through the caption stage, then evaluate those.
  if (!captioner.empty()) {
    std::vector<pipeline::ProblemRecord> figure_records;
    for (const auto& p : pairs) {
      if (p.image_path.empty()) {
        throw DataError("pair " + p.id + " has no image_path; cannot run a captioner");
      }
      pipeline::ProblemRecord r;
      r.id = p.id;
      r.benchmark = "capgeo-bench";
      r.image_digest = store.put_file(fs::path(pairs_path).parent_path() / p.image_path);
      figure_records.push_back(std::move(r));
    }
    pipeline::StageOptions options;
    options.max_in_flight = global.max_in_flight;
    options.dataset_digest = pipeline::file_digest(pairs_path);
    const auto stage =
        pipeline::run_caption_stage(figure_records, captioner, *gw, config, prompts, options);
    std::map<std::string, std::string> by_id;
    for (const auto& c : stage.captions) by_id[c.problem_id] = c.caption;
    bench::merge_response_captions(pairs, by_id);
  } else if (!captions_path.empty()) {
    std::map<std::string, std::string> by_id;
    for (const auto& c : pipeline::read_caption_records(captions_path)) {
      by_id[c.problem_id] = c.caption;
    }
    bench::merge_response_captions(pairs, by_id);
  }

  std::unique_ptr<bench::Judge> judge;
  if (judge_name == "oracle") {
    judge = std::make_unique<bench::OracleJudge>();
  } else {
    judge = std::make_unique<bench::ModelJudge>(*gw, config, judge_name, prompts);
  }

  pipeline::RunManifest manifest;
  manifest.stage = "bench-eval";
  manifest.dataset_digest = pipeline::file_digest(pairs_path);
  manifest.judge = judge_name;
  manifest.captioner = captioner;
  manifest.decoding = config.decoding;
  manifest.prompts_digest = prompts.digest();
  manifest.stamp_now();

  bench::BenchOptions options;
  options.trace_dir = trace_dir;
  options.max_parallel = max_parallel > 0 ? max_parallel : global.max_in_flight;
  options.run_id = manifest.run_id();
  options.captioner_label = captioner;
  const auto report = bench::run_bench(pairs, *judge, options);

  const std::string out = global.out.empty() ? "bench_report.json" : global.out;
  write_text_file(out, bench::bench_report_to_json(report) + "\n");
  manifest.save(out + ".manifest.json");
  if (!scores_path.empty()) write_text_file(scores_path, score_rows_to_csv(report.rows));

  const auto tables = analysis::tabulate_bench({report});
  std::cout << tables[0].to_markdown() << "evaluated " << report.evaluated << ", failed "
            << report.failed << "\nreport: " << out << "\n";
  return report.failed == 0 || report.evaluated > 0 ? kExitOk : kExitData;
}

int cmd_score(const GlobalOptions& global, const std::vector<std::string>& report_paths,
              const std::string& format) {
  const auto reports = read_many_reports(report_paths);
  const auto tables = analysis::tabulate_bench(reports);
  const std::string out = global.out.empty() ? "bench_table.md" : global.out;
  analysis::emit_report(tables, {}, format, out);
  std::cout << "score table: " << out << "\n";
  return kExitOk;
}

int cmd_tabulate(const GlobalOptions& global, const std::vector<std::string>& results_paths,
                 const std::string& layout, const std::string& format) {
  const auto rows = read_many_results(results_paths);
  const auto tables = analysis::tabulate(rows, layout);
  const std::string out = global.out.empty() ? "tables.md" : global.out;
  analysis::emit_report(tables, {}, format, out);
  std::cout << "tables: " << out << "\n";
  return kExitOk;
}

int cmd_correlate(const GlobalOptions& global, const std::vector<std::string>& report_paths,
                  const std::vector<std::string>& results_paths, const std::string& reasoner,
                  const std::string& mode, const std::string& benchmark,
                  const std::string& variant) {
  const auto reports = read_many_reports(report_paths);
  const auto rows = read_many_results(results_paths);
  const auto cells = analysis::accuracy_cells(rows);

  analysis::CorrelationReport corr;
  corr.x_desc = "caption quality avg (bench)";
  corr.y_desc = "accuracy of " + reasoner + " (" + mode + ", " + benchmark +
                (variant.empty() ? "" : ", " + variant) + ")";
  for (const auto& report : reports) {
    const std::string captioner =
        report.captioner.empty() ? report.judge_id : report.captioner;
    if (!report.aggregate.avg) continue;
    for (const auto& cell : cells) {
      if (cell.reasoner == reasoner && cell.captioner == captioner && cell.mode == mode &&
          cell.benchmark == benchmark && cell.variant == variant && cell.n > 0) {
        corr.input.points.emplace_back(*report.aggregate.avg * 100.0, cell.accuracy() * 100.0);
        corr.input.labels.push_back(captioner);
        if (!report.run_id.empty()) corr.source_runs.push_back(report.run_id);
        break;
      }
    }
  }
  if (corr.input.points.size() < 2) {
    throw DataError("correlation needs at least 2 matched captioner points, found " +
                    std::to_string(corr.input.points.size()));
  }
  corr.r = analysis::pearson(corr.input.points);

  const std::string out = global.out.empty() ? "correlation.json" : global.out;
  write_text_file(out, analysis::correlation_to_json(corr) + "\n");
  std::cout << "pearson r: " << (corr.r ? std::to_string(*corr.r) : "undefined") << " over "
            << corr.input.points.size() << " points\ncorrelation: " << out << "\n";
  return kExitOk;
}

int cmd_report(const GlobalOptions& global, const std::vector<std::string>& table_paths,
               const std::vector<std::string>& correlation_paths, const std::string& format) {
  std::vector<analysis::Table> tables;
  for (const auto& path : table_paths) {
    tables.push_back(analysis::table_from_csv(read_text_file(path)));
  }
  std::vector<analysis::CorrelationReport> correlations;
  for (const auto& path : correlation_paths) {
    correlations.push_back(analysis::correlation_from_json(read_text_file(path)));
  }
  const std::string out = global.out.empty() ? "report.md" : global.out;
  const auto written = analysis::emit_report(tables, correlations, format, out);
  for (const auto& path : written) std::cout << "wrote " << path << "\n";
  return kExitOk;
}

int cmd_export_traces(const GlobalOptions& global, const std::string& trace_dir,
                      const std::string& run_id) {
  const fs::path dir = fs::path(trace_dir) / run_id;
  if (!fs::is_directory(dir)) throw DataError("no trace directory: " + dir.string());

  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() == ".trace") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  std::string bundle = "trace export, run " + run_id + ", " + std::to_string(files.size()) +
                       " records\n";
  for (const auto& file : files) {
    bundle += "\n================================================================\n";
    bundle += read_text_file(file.string());
  }
  const std::string out = global.out.empty() ? ("traces-" + run_id + ".txt") : global.out;
  write_text_file(out, bundle);
  std::cout << "exported " << files.size() << " traces to " << out << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"caption-assisted geometric reasoning and caption-quality evaluation"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags are valid after the subcommand name

  GlobalOptions global;
  app.add_option("--config", global.config_path, "toolkit config file (JSON)");
  app.add_option("--cache-dir", global.cache_dir, "response cache directory");
  app.add_option("--out", global.out, "output path");
  app.add_option("--seed", global.seed, "sampling seed");
  app.add_option("--max-in-flight", global.max_in_flight, "request concurrency bound")
      ->check(CLI::PositiveNumber);

  // ingest
  auto* ingest = app.add_subcommand("ingest", "validate a benchmark file into the content store");
  std::string benchmark_path, format_tag, store_dir;
  ingest->add_option("--benchmark", benchmark_path, "benchmark record file")->required();
  ingest->add_option("--format", format_tag,
                     "mathverse | mathvista-geometry | geoqa | capgeo-bench")
      ->required();
  ingest->add_option("--store", store_dir, "content store directory (default from config)");

  // caption
  auto* caption = app.add_subcommand("caption", "generate figure captions");
  std::string records_path, captioner_id;
  std::int64_t sample_n = -1;
  caption->add_option("--records", records_path, "ingested records file")->required();
  caption->add_option("--captioner", captioner_id, "captioning model id")->required();
  caption->add_option("--sample-n", sample_n, "evaluate a seeded random subset");

  // reason
  auto* reason = app.add_subcommand("reason", "answer problems in one of three modes");
  std::string reason_records, mode_name, reasoner_id, captions_path;
  std::int64_t reason_sample_n = -1;
  reason->add_option("--records", reason_records, "ingested records file")->required();
  reason->add_option("--mode", mode_name,
                     "direct-vision | caption-with-image | caption-without-image")
      ->required();
  reason->add_option("--reasoner", reasoner_id, "reasoning model id")->required();
  reason->add_option("--captions", captions_path, "captions file (caption modes)");
  reason->add_option("--sample-n", reason_sample_n, "evaluate a seeded random subset");

  // grade
  auto* grade = app.add_subcommand("grade", "grade raw reasoning results");
  std::string grade_records, grade_results;
  grade->add_option("--records", grade_records, "ingested records file")->required();
  grade->add_option("--results", grade_results, "reasoning results file")->required();

  // bench-eval
  auto* bench_eval = app.add_subcommand("bench-eval", "keypoint caption-quality evaluation");
  std::string pairs_path, judge_name = "oracle", bench_captions, bench_captioner, trace_dir,
              scores_path;
  int bench_parallel = 0;
  bench_eval->add_option("--pairs", pairs_path, "caption pair file")->required();
  bench_eval->add_option("--judge", judge_name, "oracle or a judge model id");
  bench_eval->add_option("--captions", bench_captions, "response captions file");
  bench_eval->add_option("--captioner", bench_captioner,
                         "generate response captions with this model");
  bench_eval->add_option("--traces", trace_dir, "trace output directory");
  bench_eval->add_option("--scores", scores_path, "also export per-record score rows (csv)");
  bench_eval->add_option("--parallel", bench_parallel, "records evaluated in parallel");

  // score
  auto* score = app.add_subcommand("score", "aggregate bench reports into the grid table");
  std::vector<std::string> score_reports;
  std::string score_format = "markdown";
  score->add_option("--reports", score_reports, "bench report JSON files")->required();
  score->add_option("--format", score_format, "markdown | csv | jsonl");

  // tabulate
  auto* tabulate = app.add_subcommand("tabulate", "accuracy tables from graded results");
  std::vector<std::string> tabulate_results;
  std::string layout, tabulate_format = "markdown";
  tabulate->add_option("--results", tabulate_results, "graded results files")->required();
  tabulate->add_option("--layout", layout, "mathverse | mathvista-geoqa")->required();
  tabulate->add_option("--format", tabulate_format, "markdown | csv | jsonl");

  // correlate
  auto* correlate = app.add_subcommand("correlate",
                                       "caption quality vs reasoning accuracy correlation");
  std::vector<std::string> corr_reports, corr_results;
  std::string corr_reasoner, corr_mode = "caption-with-image", corr_benchmark = "mathverse",
              corr_variant;
  correlate->add_option("--reports", corr_reports, "bench report JSON files (x axis)")->required();
  correlate->add_option("--results", corr_results, "graded results files (y axis)")->required();
  correlate->add_option("--reasoner", corr_reasoner, "reasoner whose accuracy pairs with quality")
      ->required();
  correlate->add_option("--mode", corr_mode, "reasoning mode for the y axis");
  correlate->add_option("--benchmark", corr_benchmark, "benchmark for the y axis");
  correlate->add_option("--variant", corr_variant, "benchmark variant for the y axis");

  // report
  auto* report = app.add_subcommand("report", "bundle tables and correlations");
  std::vector<std::string> report_tables, report_correlations;
  std::string report_format = "markdown";
  report->add_option("--tables", report_tables, "table csv files");
  report->add_option("--correlations", report_correlations, "correlation JSON files");
  report->add_option("--format", report_format, "markdown | csv | jsonl");

  // export-traces
  auto* export_traces = app.add_subcommand("export-traces", "bundle evaluation traces for review");
  std::string export_dir, export_run;
  export_traces->add_option("--traces", export_dir, "trace directory")->required();
  export_traces->add_option("--run", export_run, "run id")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*ingest) return cmd_ingest(global, benchmark_path, format_tag, store_dir);
    if (*caption) return cmd_caption(global, records_path, captioner_id, sample_n);
    if (*reason) {
      return cmd_reason(global, reason_records, mode_name, reasoner_id, captions_path,
                        reason_sample_n);
    }
    if (*grade) return cmd_grade(global, grade_records, grade_results);
    if (*bench_eval) {
      return cmd_bench_eval(global, pairs_path, judge_name, bench_captions, bench_captioner,
                            trace_dir, scores_path, bench_parallel);
    }
    if (*score) return cmd_score(global, score_reports, score_format);
    if (*tabulate) return cmd_tabulate(global, tabulate_results, layout, tabulate_format);
    if (*correlate) {
      return cmd_correlate(global, corr_reports, corr_results, corr_reasoner, corr_mode,
                           corr_benchmark, corr_variant);
    }
    if (*report) return cmd_report(global, report_tables, report_correlations, report_format);
    if (*export_traces) return cmd_export_traces(global, export_dir, export_run);
    std::cerr << "no subcommand\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const gateway::GatewayError& e) {
    std::cerr << "provider error: " << e.what() << "\n";
    return kExitProvider;
  } catch (const bench::JudgeError& e) {
    std::cerr << "judge error: " << e.what() << "\n";
    return kExitProvider;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
}
