#include "capgeo/analysis/report.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "capgeo/errors.hpp"

namespace capgeo::analysis {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string slug(const std::string& title) {
  std::string out;
  for (char c : title) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    } else if (!out.empty() && out.back() != '-') {
      out += '-';
    }
  }
  while (!out.empty() && out.back() == '-') out.pop_back();
  return out.empty() ? "table" : out;
}

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  out << content;
}

std::string format_r(const std::optional<double>& r) {
  if (!r) return "undefined";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", *r);
  return buf;
}

}  // namespace

std::string correlation_to_json(const CorrelationReport& report) {
  json points = json::array();
  for (std::size_t i = 0; i < report.input.points.size(); ++i) {
    json p = {{"x", report.input.points[i].first}, {"y", report.input.points[i].second}};
    if (i < report.input.labels.size()) p["label"] = report.input.labels[i];
    points.push_back(std::move(p));
  }
  json j = {
      {"statistic", "pearson"},
      {"x", report.x_desc},
      {"y", report.y_desc},
      {"points", std::move(points)},
      {"runs", report.source_runs},
  };
  if (report.r) j["r"] = *report.r;
  return j.dump(2);
}

CorrelationReport correlation_from_json(const std::string& text) {
  const json j = json::parse(text);
  CorrelationReport report;
  report.x_desc = j.value("x", "");
  report.y_desc = j.value("y", "");
  for (const auto& p : j.value("points", json::array())) {
    report.input.points.emplace_back(p.at("x").get<double>(), p.at("y").get<double>());
    report.input.labels.push_back(p.value("label", ""));
  }
  if (j.contains("r")) report.r = j["r"].get<double>();
  if (j.contains("runs")) report.source_runs = j["runs"].get<std::vector<std::string>>();
  return report;
}

std::vector<std::string> emit_report(const std::vector<Table>& tables,
                                     const std::vector<CorrelationReport>& correlations,
                                     const std::string& format, const std::string& out_path) {
  std::vector<std::string> written;

  if (format == "markdown") {
    std::string out = "# results report\n\n";
    for (const auto& t : tables) {
      out += t.to_markdown();
      out += "\n";
    }
    for (const auto& c : correlations) {
      out += "### correlation: " + c.x_desc + " vs " + c.y_desc + "\n\n";
      out += "pearson r = " + format_r(c.r) + " over " +
             std::to_string(c.input.points.size()) + " points\n\n";
      out += "| label | x | y |\n| --- | --- | --- |\n";
      char buf[64];
      for (std::size_t i = 0; i < c.input.points.size(); ++i) {
        const std::string label = i < c.input.labels.size() ? c.input.labels[i] : "";
        std::snprintf(buf, sizeof(buf), "| %s | %g | %g |\n", label.c_str(),
                      c.input.points[i].first, c.input.points[i].second);
        out += buf;
      }
      if (!c.source_runs.empty()) {
        out += "\nruns:";
        for (const auto& r : c.source_runs) out += " " + r;
        out += "\n";
      }
      out += "\n";
    }
    write_file(out_path, out);
    written.push_back(out_path);
    return written;
  }

  if (format != "csv" && format != "jsonl") {
    throw UsageError("unknown report format '" + format + "'");
  }

  const bool single = tables.size() == 1 && correlations.empty() &&
                      (out_path.ends_with(".csv") || out_path.ends_with(".jsonl"));
  const std::string extension = format == "csv" ? ".csv" : ".jsonl";
  auto emit_table = [&](const Table& t, const fs::path& path) {
    write_file(path, format == "csv" ? t.to_csv() : t.to_json_lines());
    written.push_back(path.string());
  };

  if (single) {
    emit_table(tables[0], out_path);
    return written;
  }

  const fs::path dir(out_path);
  for (const auto& t : tables) emit_table(t, dir / (slug(t.title) + extension));
  for (std::size_t i = 0; i < correlations.size(); ++i) {
    const fs::path path = dir / ("correlation-" + std::to_string(i) + ".json");
    write_file(path, correlation_to_json(correlations[i]) + "\n");
    written.push_back(path.string());
  }
  return written;
}

}  // namespace capgeo::analysis
