#include "capgeo/analysis/table.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "capgeo/errors.hpp"
#include "capgeo/scoring.hpp"

namespace capgeo::analysis {

using nlohmann::json;
using pipeline::ReasoningRecord;

namespace {

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::string> csv_split(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else {
      field += c;
    }
  }
  fields.push_back(std::move(field));
  return fields;
}

std::string percent_or_dash(const AccuracyCell* cell) {
  if (!cell || cell->n == 0) return "--";
  return format_percent(cell->accuracy());
}

struct CellKey {
  std::string reasoner, captioner, mode, benchmark, variant;
  bool operator<(const CellKey& o) const {
    return std::tie(reasoner, captioner, mode, benchmark, variant) <
           std::tie(o.reasoner, o.captioner, o.mode, o.benchmark, o.variant);
  }
};

}  // namespace

std::string Table::to_markdown() const {
  std::string out = "### " + title + "\n\n|";
  for (const auto& c : columns) out += " " + c + " |";
  out += "\n|";
  for (std::size_t i = 0; i < columns.size(); ++i) out += " --- |";
  out += "\n";
  for (const auto& row : rows) {
    out += "|";
    for (const auto& cell : row) out += " " + cell + " |";
    out += "\n";
  }
  if (!source_runs.empty()) {
    out += "\nruns:";
    for (const auto& r : source_runs) out += " " + r;
    out += "\n";
  }
  return out;
}

std::string Table::to_csv() const {
  std::string out = "# table: " + title + "\n";
  if (!source_runs.empty()) {
    out += "# runs:";
    for (const auto& r : source_runs) out += " " + r;
    out += "\n";
  }
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i > 0) out += ',';
    out += csv_escape(columns[i]);
  }
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out += ',';
      out += csv_escape(row[i]);
    }
    out += '\n';
  }
  return out;
}

std::string Table::to_json_lines() const {
  std::string out;
  for (const auto& row : rows) {
    json j = {{"table", title}};
    for (std::size_t i = 0; i < columns.size() && i < row.size(); ++i) {
      j[columns[i]] = row[i];
    }
    if (!source_runs.empty()) j["runs"] = source_runs;
    out += j.dump();
    out += '\n';
  }
  return out;
}

Table table_from_csv(const std::string& text) {
  Table t;
  std::istringstream in(text);
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.rfind("# table: ", 0) == 0) {
      t.title = line.substr(9);
      continue;
    }
    if (line.rfind("# runs:", 0) == 0) {
      std::istringstream runs(line.substr(7));
      std::string run;
      while (runs >> run) t.source_runs.push_back(run);
      continue;
    }
    if (line[0] == '#') continue;
    if (!have_header) {
      t.columns = csv_split(line);
      have_header = true;
    } else {
      t.rows.push_back(csv_split(line));
    }
  }
  return t;
}

std::vector<AccuracyCell> accuracy_cells(const std::vector<ReasoningRecord>& records) {
  std::map<CellKey, AccuracyCell> cells;
  for (const auto& r : records) {
    if (!r.graded) continue;
    const CellKey key{r.reasoner, r.captioner, r.mode, r.benchmark, r.variant};
    auto& cell = cells[key];
    if (cell.n == 0) {
      cell.reasoner = r.reasoner;
      cell.captioner = r.captioner;
      cell.mode = r.mode;
      cell.benchmark = r.benchmark;
      cell.variant = r.variant;
    }
    ++cell.n;
    if (r.correct) ++cell.correct;
  }
  std::vector<AccuracyCell> out;
  out.reserve(cells.size());
  for (auto& [key, cell] : cells) out.push_back(std::move(cell));
  return out;
}

namespace {

struct CellIndex {
  std::map<CellKey, AccuracyCell> by_key;
  std::set<std::string> reasoners;
  std::set<std::string> captioners;
  std::set<std::string> runs;

  explicit CellIndex(const std::vector<ReasoningRecord>& records) {
    for (const auto& cell : accuracy_cells(records)) {
      by_key[{cell.reasoner, cell.captioner, cell.mode, cell.benchmark, cell.variant}] = cell;
      reasoners.insert(cell.reasoner);
      if (!cell.captioner.empty()) captioners.insert(cell.captioner);
    }
    for (const auto& r : records) {
      if (!r.run_id.empty()) runs.insert(r.run_id);
    }
  }

  const AccuracyCell* find(const std::string& reasoner, const std::string& captioner,
                           const std::string& mode, const std::string& benchmark,
                           const std::string& variant) const {
    const auto it = by_key.find({reasoner, captioner, mode, benchmark, variant});
    return it == by_key.end() ? nullptr : &it->second;
  }
};

}  // namespace

std::vector<Table> tabulate_mathverse(const std::vector<ReasoningRecord>& records) {
  const CellIndex index(records);
  std::vector<Table> tables;
  for (const std::string variant : {"vision-only", "vision-intensive"}) {
    Table t;
    t.title = std::string("mathverse ") + variant;
    t.source_runs.assign(index.runs.begin(), index.runs.end());
    t.columns = {"Reasoning Model", "w/o"};
    for (const auto& captioner : index.captioners) {
      t.columns.push_back(captioner + " w/o img");
      t.columns.push_back(captioner + " w img");
    }
    for (const auto& reasoner : index.reasoners) {
      std::vector<std::string> row{reasoner};
      row.push_back(percent_or_dash(
          index.find(reasoner, "", "direct-vision", "mathverse", variant)));
      for (const auto& captioner : index.captioners) {
        row.push_back(percent_or_dash(
            index.find(reasoner, captioner, "caption-without-image", "mathverse", variant)));
        row.push_back(percent_or_dash(
            index.find(reasoner, captioner, "caption-with-image", "mathverse", variant)));
      }
      t.rows.push_back(std::move(row));
    }
    tables.push_back(std::move(t));
  }
  return tables;
}

std::vector<Table> tabulate_mathvista_geoqa(const std::vector<ReasoningRecord>& records) {
  const CellIndex index(records);
  std::vector<Table> tables;
  for (const std::string benchmark : {"mathvista-geometry", "geoqa"}) {
    Table t;
    t.title = benchmark;
    t.source_runs.assign(index.runs.begin(), index.runs.end());
    t.columns = {"Model", "-"};
    for (const auto& captioner : index.captioners) t.columns.push_back(captioner);
    for (const auto& reasoner : index.reasoners) {
      std::vector<std::string> row{reasoner};
      row.push_back(percent_or_dash(index.find(reasoner, "", "direct-vision", benchmark, "")));
      for (const auto& captioner : index.captioners) {
        // Caption-assisted accuracy; the with-image setting when present,
        // otherwise the text-only one.
        const AccuracyCell* cell =
            index.find(reasoner, captioner, "caption-with-image", benchmark, "");
        if (!cell) cell = index.find(reasoner, captioner, "caption-without-image", benchmark, "");
        row.push_back(percent_or_dash(cell));
      }
      t.rows.push_back(std::move(row));
    }
    tables.push_back(std::move(t));
  }
  return tables;
}

std::vector<Table> tabulate_bench(const std::vector<bench::BenchReport>& reports) {
  Table t;
  t.title = "caption quality by class and difficulty";
  t.columns = {"Captioner", "Score Dimension", "AG", "PG", "SG", "T1",
               "T2",        "T3",              "T4", "Overall", "Avg"};
  static constexpr const char* dim_names[] = {"Element", "Relation", "Numerical"};
  for (const auto& report : reports) {
    if (!report.run_id.empty()) t.source_runs.push_back(report.run_id);
    const std::string label = report.captioner.empty() ? report.judge_id : report.captioner;
    for (int d = 0; d < 3; ++d) {
      const auto di = static_cast<std::size_t>(d);
      std::vector<std::string> row{label, dim_names[di]};
      for (int c = 0; c < BenchAggregate::kColumns; ++c) {
        row.push_back(format_percent(report.aggregate.cells[di][static_cast<std::size_t>(c)]));
      }
      row.push_back(d == 0 ? format_percent(report.aggregate.avg) : "");
      t.rows.push_back(std::move(row));
    }
  }
  return {std::move(t)};
}

std::vector<Table> tabulate(const std::vector<ReasoningRecord>& records,
                            const std::string& layout) {
  if (layout == "mathverse") return tabulate_mathverse(records);
  if (layout == "mathvista-geoqa") return tabulate_mathvista_geoqa(records);
  throw UsageError("unknown layout '" + layout + "' (expected mathverse | mathvista-geoqa | bench)");
}

}  // namespace capgeo::analysis
