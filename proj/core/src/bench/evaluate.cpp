#include "capgeo/bench/evaluate.hpp"

#include <nlohmann/json.hpp>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <set>
#include <thread>

#include "capgeo/notation.hpp"

namespace capgeo::bench {

using nlohmann::json;
namespace fs = std::filesystem;

std::vector<CaptionPair> read_caption_pairs(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open pair file: " + path);
  std::vector<CaptionPair> pairs;
  std::set<std::string> seen;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::string where = path + ":" + std::to_string(line_no);
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw DataError(where + ": bad JSON: " + e.what());
    }
    CaptionPair p;
    try {
      p.id = j.at("id").get<std::string>();
      p.image_path = j.value("image_path", "");
      p.gt_caption = j.at("gt_caption").get<std::string>();
      p.response_caption = j.value("response_caption", "");
      p.class_tag = j.at("class").get<std::string>();
      const auto difficulty = j.at("difficulty");
      p.difficulty_tag = difficulty.is_number()
                             ? "T" + std::to_string(difficulty.get<int>())
                             : difficulty.get<std::string>();
      p.language = j.value("language", "en");
    } catch (const json::exception& e) {
      throw DataError(where + ": " + e.what());
    }
    if (p.gt_caption.empty()) throw DataError(where + ": empty gt_caption");
    if (p.class_tag != "AG" && p.class_tag != "PG" && p.class_tag != "SG") {
      throw DataError(where + ": unknown class '" + p.class_tag + "'");
    }
    static const std::set<std::string> difficulties = {"T1", "T2", "T3", "T4"};
    if (difficulties.count(p.difficulty_tag) == 0) {
      throw DataError(where + ": unknown difficulty '" + p.difficulty_tag + "'");
    }
    if (p.language != "zh" && p.language != "en") {
      throw DataError(where + ": unknown language '" + p.language + "'");
    }
    if (!seen.insert(p.id).second) throw DataError(where + ": duplicate id '" + p.id + "'");
    pairs.push_back(std::move(p));
  }
  return pairs;
}

void write_caption_pairs(const std::string& path, const std::vector<CaptionPair>& pairs) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path);
  for (const auto& p : pairs) {
    json j = {{"id", p.id},           {"image_path", p.image_path},
              {"gt_caption", p.gt_caption}, {"class", p.class_tag},
              {"difficulty", p.difficulty_tag}, {"language", p.language}};
    if (!p.response_caption.empty()) j["response_caption"] = p.response_caption;
    out << j.dump() << '\n';
  }
}

EvalTrace evaluate_caption(const CaptionPair& pair, Judge& judge) {
  EvalTrace trace;
  trace.record_id = pair.id;
  trace.judge_id = judge.id();
  trace.class_tag = pair.class_tag;
  trace.difficulty_tag = pair.difficulty_tag;
  try {
    auto gt = judge.extract(pair.gt_caption, CaptionRole::GroundTruth);
    auto response = judge.extract(pair.response_caption, CaptionRole::Response);
    trace.gt_set = std::move(gt.set);
    trace.response_set = std::move(response.set);
    for (auto& t : gt.transcripts) trace.transcripts.push_back("extract-gt: " + t);
    for (auto& t : response.transcripts) trace.transcripts.push_back("extract-response: " + t);

    auto match = judge.match(trace.response_set, trace.gt_set);
    trace.matches = match.results;
    trace.rejected_lines = std::move(match.rejected_lines);
    for (auto& t : match.transcripts) trace.transcripts.push_back("match: " + t);

    trace.scores = dimension_scores(trace.matches[0], trace.matches[1], trace.matches[2]);
    trace.evaluated = true;
  } catch (const std::exception& e) {
    trace.evaluated = false;
    trace.error = e.what();
  }
  return trace;
}

std::string trace_to_text(const EvalTrace& trace) {
  std::string out;
  out += "record: " + trace.record_id + "\n";
  out += "judge: " + trace.judge_id + "\n";
  out += "class: " + trace.class_tag + "\n";
  out += "difficulty: " + trace.difficulty_tag + "\n";
  if (!trace.evaluated) {
    out += "status: unevaluated\nerror: " + trace.error + "\n";
    return out;
  }
  out += "status: evaluated\n";
  out += "\n-- ground-truth keypoints --\n" + serialize_keypoints(trace.gt_set) + "\n";
  out += "\n-- response keypoints --\n" + serialize_keypoints(trace.response_set) + "\n";
  out += "\n-- matches --\n";
  for (const auto& m : trace.matches) {
    out += std::string(dimension_name(m.dimension)) + ": tp=" + std::to_string(m.tp_count) +
           " gt=" + std::to_string(m.gt_count) +
           " response=" + std::to_string(m.response_count) + " pairs=";
    for (std::size_t i = 0; i < m.pairs.size(); ++i) {
      if (i > 0) out += ' ';
      out += "(" + std::to_string(m.pairs[i].first) + "," + std::to_string(m.pairs[i].second) + ")";
    }
    out += "\n";
  }
  out += "\n-- scores --\n";
  auto line = [&](const char* name, const std::optional<double>& v) {
    out += std::string(name) + ": ";
    out += v ? std::to_string(*v) : "undefined";
    out += "\n";
  };
  line("element", trace.scores.element);
  line("spatial", trace.scores.spatial);
  line("numerical", trace.scores.numerical);
  line("mean", trace.scores.mean());
  if (!trace.rejected_lines.empty()) {
    out += "\n-- rejected judge claims --\n";
    for (const auto& r : trace.rejected_lines) out += r + "\n";
  }
  if (!trace.transcripts.empty()) {
    out += "\n-- judge transcripts --\n";
    for (const auto& t : trace.transcripts) out += t + "\n---\n";
  }
  return out;
}

int merge_response_captions(std::vector<CaptionPair>& pairs,
                            const std::map<std::string, std::string>& captions_by_id) {
  int merged = 0;
  for (auto& p : pairs) {
    const auto it = captions_by_id.find(p.id);
    if (it != captions_by_id.end()) {
      p.response_caption = it->second;
      ++merged;
    }
  }
  return merged;
}

BenchReport run_bench(const std::vector<CaptionPair>& pairs, Judge& judge,
                      const BenchOptions& options) {
  BenchReport report;
  report.judge_id = judge.id();
  report.captioner = options.captioner_label;
  report.run_id = options.run_id;

  std::vector<EvalTrace> traces(pairs.size());
  const int workers = std::max(1, options.max_parallel);
  if (workers == 1) {
    for (std::size_t i = 0; i < pairs.size(); ++i) traces[i] = evaluate_caption(pairs[i], judge);
  } else {
    std::atomic<std::size_t> next{0};
    auto run = [&]() {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= pairs.size()) return;
        traces[i] = evaluate_caption(pairs[i], judge);
      }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < std::min<int>(workers, static_cast<int>(pairs.size())); ++w) {
      pool.emplace_back(run);
    }
    for (auto& t : pool) t.join();
  }

  fs::path trace_dir;
  if (!options.trace_dir.empty()) {
    trace_dir = fs::path(options.trace_dir) / options.run_id;
    fs::create_directories(trace_dir);
  }

  for (const auto& trace : traces) {
    if (!trace_dir.empty()) {
      std::ofstream out(trace_dir / (trace.record_id + ".trace"),
                        std::ios::binary | std::ios::trunc);
      out << trace_to_text(trace);
    }
    if (trace.evaluated) {
      report.rows.push_back(
          make_score_row(trace.record_id, trace.class_tag, trace.difficulty_tag, trace.matches));
      ++report.evaluated;
    } else {
      ++report.failed;
      report.failed_ids.push_back(trace.record_id);
    }
  }
  report.aggregate = aggregate_scores(report.rows);
  return report;
}

std::string bench_report_to_json(const BenchReport& report) {
  json rows = json::array();
  for (const auto& row : report.rows) {
    json jr = {
        {"record_id", row.record_id},
        {"class", row.class_tag},
        {"difficulty", row.difficulty_tag},
        {"tp", row.tp},
        {"gt", row.gt},
    };
    if (row.scores.element) jr["s_element"] = *row.scores.element;
    if (row.scores.spatial) jr["s_spatial"] = *row.scores.spatial;
    if (row.scores.numerical) jr["s_numerical"] = *row.scores.numerical;
    rows.push_back(std::move(jr));
  }
  const json j = {
      {"judge", report.judge_id},       {"captioner", report.captioner},
      {"run_id", report.run_id},        {"evaluated", report.evaluated},
      {"failed", report.failed},        {"failed_ids", report.failed_ids},
      {"rows", std::move(rows)},
  };
  return j.dump(2);
}

BenchReport bench_report_from_json(const std::string& text) {
  const json j = json::parse(text);
  BenchReport report;
  report.judge_id = j.value("judge", "");
  report.captioner = j.value("captioner", "");
  report.run_id = j.value("run_id", "");
  report.evaluated = j.value("evaluated", 0);
  report.failed = j.value("failed", 0);
  if (j.contains("failed_ids")) {
    report.failed_ids = j["failed_ids"].get<std::vector<std::string>>();
  }
  for (const auto& jr : j.value("rows", json::array())) {
    ScoreRow row;
    row.record_id = jr.at("record_id").get<std::string>();
    row.class_tag = jr.at("class").get<std::string>();
    row.difficulty_tag = jr.at("difficulty").get<std::string>();
    row.tp = jr.at("tp").get<std::array<int, 3>>();
    row.gt = jr.at("gt").get<std::array<int, 3>>();
    if (jr.contains("s_element")) row.scores.element = jr["s_element"].get<double>();
    if (jr.contains("s_spatial")) row.scores.spatial = jr["s_spatial"].get<double>();
    if (jr.contains("s_numerical")) row.scores.numerical = jr["s_numerical"].get<double>();
    report.rows.push_back(std::move(row));
  }
  report.aggregate = aggregate_scores(report.rows);
  return report;
}

}  // namespace capgeo::bench
