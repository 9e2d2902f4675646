// pairing.hpp - trace-unit extraction, schema/unit matching with dangling
// and near-miss reporting, and assembly of paired observations.
//
// Trace comments have the form `-- trace_unit: SchemaName`, either on the
// line immediately above a subprogram header or as the first line of its
// body. Matching is case-sensitive; near misses within the edit-distance
// bound become suggestions and are never auto-paired.
#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "zedmet/codemetrics/metrics.hpp"
#include "zedmet/codemetrics/table.hpp"
#include "zedmet/common/csv.hpp"
#include "zedmet/common/error.hpp"
#include "zedmet/common/text.hpp"
#include "zedmet/mil/ast.hpp"
#include "zedmet/specmetrics/metrics.hpp"
#include "zedmet/specmetrics/table.hpp"
#include "zedmet/zspec/ast.hpp"

namespace zedmet::pairing {

struct TraceRef {
  std::string unit;
  std::string schema;
  int line = 0;  // line of the trace comment
  std::string file;
};

struct Suggestion {
  std::string unknown;  // the unmatched trace name
  std::string nearest;  // unique schema within the edit-distance bound
  int distance = 0;
  std::string unit;
};

struct Conflict {
  std::string schema;
  std::vector<std::string> units;
};

enum class AggregatePolicy { strict, sum };

struct PairingReport {
  std::vector<std::pair<std::string, std::string>> pairs;  // (schema, unit)
  std::vector<std::pair<std::string, std::string>> dangling;  // (unit, name)
  std::vector<std::string> unreferenced;  // schemas never referenced
  std::vector<Suggestion> suggestions;
  std::vector<Conflict> conflicts;
  AggregatePolicy policy = AggregatePolicy::strict;
};

struct PairedObservation {
  int pair_id = 0;
  std::string schema;
  std::string unit;
  specmetrics::SpecMetrics spec;
  codemetrics::CodeMetrics code;
};

// --- trace-unit extraction -------------------------------------------------

inline std::optional<std::string> trace_comment_name(std::string_view line) {
  auto t = text::trim(line);
  if (!text::starts_with(t, "--")) return std::nullopt;
  t = text::trim(t.substr(2));
  constexpr std::string_view tag = "trace_unit:";
  if (!text::starts_with(t, tag)) return std::nullopt;
  auto name = text::trim(t.substr(tag.size()));
  if (name.empty()) return std::nullopt;
  return std::string(name);
}

// One entry per trace comment bound to its adjacent subprogram; a comment
// that precedes no subprogram is an error.
inline std::vector<TraceRef> extract_trace_units(
    const std::vector<mil::CodeUnit>& units, std::string_view source,
    const std::string& file = "<code>") {
  std::vector<TraceRef> refs;
  auto lines = text::split_lines(source);
  for (std::size_t li = 0; li < lines.size(); ++li) {
    auto name = trace_comment_name(lines[li]);
    if (!name) continue;
    int line_no = static_cast<int>(li) + 1;
    const mil::CodeUnit* bound = nullptr;
    for (const auto& u : units) {
      if (u.file != file) continue;
      if (u.first_line == line_no + 1 || u.begin_line == line_no - 1) {
        bound = &u;
        break;
      }
    }
    if (!bound)
      throw Error(ErrorKind::orphan_trace_comment,
                  file + ":" + std::to_string(line_no) +
                      ": trace comment '" + *name +
                      "' precedes no subprogram",
                  line_no);
    refs.push_back({bound->name, *name, line_no, file});
  }
  return refs;
}

// --- matching --------------------------------------------------------------

inline int edit_distance(const std::string& a, const std::string& b) {
  std::vector<int> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = static_cast<int>(j);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = static_cast<int>(i);
    for (std::size_t j = 1; j <= b.size(); ++j) {
      int sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

inline PairingReport match_pairs(const zspec::Specification& spec,
                                 const std::vector<TraceRef>& traces,
                                 int max_edit_distance = 2,
                                 AggregatePolicy policy =
                                     AggregatePolicy::strict) {
  PairingReport report;
  report.policy = policy;

  std::set<std::string> schema_names;
  for (const auto& s : spec.schemas) schema_names.insert(s.name);

  std::map<std::string, std::vector<std::string>> by_schema;
  for (const auto& t : traces) {
    if (schema_names.count(t.schema)) {
      by_schema[t.schema].push_back(t.unit);
      continue;
    }
    // unknown reference: a unique near schema becomes a suggestion,
    // anything else is a dangling link
    std::vector<std::pair<int, std::string>> near;
    for (const auto& s : schema_names) {
      int d = edit_distance(t.schema, s);
      if (d <= max_edit_distance) near.emplace_back(d, s);
    }
    if (near.size() == 1) {
      report.suggestions.push_back(
          {t.schema, near.front().second, near.front().first, t.unit});
    } else {
      report.dangling.emplace_back(t.unit, t.schema);
    }
  }

  for (auto& [schema, units] : by_schema) {
    std::sort(units.begin(), units.end());
    if (units.size() == 1) {
      report.pairs.emplace_back(schema, units.front());
    } else if (policy == AggregatePolicy::sum) {
      std::string merged = units.front();
      for (std::size_t i = 1; i < units.size(); ++i) merged += "+" + units[i];
      report.pairs.emplace_back(schema, merged);
      report.conflicts.push_back({schema, units});
    } else {
      report.conflicts.push_back({schema, units});
    }
  }
  for (const auto& s : spec.schemas)
    if (!by_schema.count(s.name)) report.unreferenced.push_back(s.name);
  return report;
}

// --- observation assembly ---------------------------------------------------

inline std::vector<PairedObservation> assemble_observations(
    const PairingReport& report,
    const std::vector<specmetrics::SpecMetrics>& spec_table,
    const std::vector<codemetrics::CodeMetrics>& code_table) {
  std::map<std::string, const specmetrics::SpecMetrics*> spec_by_name;
  for (const auto& m : spec_table) spec_by_name[m.schema] = &m;
  std::map<std::string, const codemetrics::CodeMetrics*> code_by_name;
  for (const auto& m : code_table) code_by_name[m.unit] = &m;

  auto pairs = report.pairs;
  std::sort(pairs.begin(), pairs.end());

  std::vector<PairedObservation> out;
  int next_id = 1;
  for (const auto& [schema, unit] : pairs) {
    auto sit = spec_by_name.find(schema);
    if (sit == spec_by_name.end())
      throw Error(ErrorKind::missing_metrics,
                  "no specification metrics for schema '" + schema + "'");
    PairedObservation obs;
    obs.pair_id = next_id++;
    obs.schema = schema;
    obs.unit = unit;
    obs.spec = *sit->second;

    // aggregated pairs sum the code metrics of the competing units
    std::vector<std::string> unit_names;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= unit.size(); ++i)
      if (i == unit.size() || unit[i] == '+') {
        unit_names.push_back(unit.substr(start, i - start));
        start = i + 1;
      }
    codemetrics::CodeMetrics sum;
    sum.unit = unit;
    sum.cyc = 0;
    for (const auto& name : unit_names) {
      auto cit = code_by_name.find(name);
      if (cit == code_by_name.end())
        throw Error(ErrorKind::missing_metrics,
                    "no code metrics for unit '" + name + "'");
      const auto& c = *cit->second;
      sum.cl += c.cl;
      sum.clc += c.clc;
      sum.clcd += c.clcd;
      sum.clce += c.clce;
      sum.cyc += c.cyc;
      sum.knots += c.knots;
      sum.fin += c.fin;
      sum.fout += c.fout;
      sum.si += c.si;
    }
    obs.code = sum;
    out.push_back(std::move(obs));
  }
  return out;
}

// --- pairs.csv ---------------------------------------------------------------

inline const std::string& pairs_csv_header() {
  static const std::string header =
      "pair_id,schema,unit,CC,VL,VU,DU,USE,DEF,AND,OR,COV,OVL,CHI,"
      "CL,CLC,CLCD,CLCE,CYC,KNOTS,FIN,FOUT,SI";
  return header;
}

inline std::string observations_to_csv(
    const std::vector<PairedObservation>& observations) {
  std::string out = pairs_csv_header() + "\n";
  for (const auto& obs : observations) {
    std::vector<std::string> row{std::to_string(obs.pair_id), obs.schema,
                                 obs.unit};
    for (double v : specmetrics::metric_values(obs.spec))
      row.push_back(text::format_double(v));
    for (long long v : codemetrics::metric_values(obs.code))
      row.push_back(std::to_string(v));
    out += csv::join_row(row);
  }
  return out;
}

inline nlohmann::json observations_to_json(
    const std::vector<PairedObservation>& observations) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& obs : observations) {
    nlohmann::json row;
    row["pair_id"] = obs.pair_id;
    row["schema"] = obs.schema;
    row["unit"] = obs.unit;
    auto sv = specmetrics::metric_values(obs.spec);
    const auto& sn = specmetrics::column_names();
    for (std::size_t i = 0; i < sn.size(); ++i) row[sn[i]] = sv[i];
    auto cv = codemetrics::metric_values(obs.code);
    const auto& cn = codemetrics::column_names();
    for (std::size_t i = 0; i < cn.size(); ++i) row[cn[i]] = cv[i];
    arr.push_back(std::move(row));
  }
  return arr;
}

inline nlohmann::json report_to_json(const PairingReport& report) {
  nlohmann::json j;
  j["policy"] = report.policy == AggregatePolicy::sum ? "sum" : "strict";
  j["pairs"] = nlohmann::json::array();
  for (const auto& [schema, unit] : report.pairs)
    j["pairs"].push_back({{"schema", schema}, {"unit", unit}});
  j["dangling"] = nlohmann::json::array();
  for (const auto& [unit, name] : report.dangling)
    j["dangling"].push_back({{"unit", unit}, {"reference", name}});
  j["suggestions"] = nlohmann::json::array();
  for (const auto& s : report.suggestions)
    j["suggestions"].push_back({{"unit", s.unit},
                                {"reference", s.unknown},
                                {"nearest", s.nearest},
                                {"distance", s.distance}});
  j["conflicts"] = nlohmann::json::array();
  for (const auto& c : report.conflicts) {
    nlohmann::json e;
    e["schema"] = c.schema;
    e["units"] = c.units;
    j["conflicts"].push_back(std::move(e));
  }
  j["unreferenced"] = report.unreferenced;
  return j;
}

// A generic numeric view of pairs.csv for the statistics stages.
struct ObservationTable {
  std::vector<std::string> pair_ids;
  std::vector<std::string> schemas;
  std::vector<std::string> units;
  std::vector<std::string> metric_names;           // 20 metric columns
  std::vector<std::vector<double>> metric_columns; // column-major values

  std::size_t size() const { return pair_ids.size(); }

  const std::vector<double>& column(const std::string& name) const {
    for (std::size_t i = 0; i < metric_names.size(); ++i)
      if (metric_names[i] == name) return metric_columns[i];
    throw Error(ErrorKind::missing_metrics,
                "pairs table has no column '" + name + "'");
  }
};

inline ObservationTable load_pairs_csv(const std::string& content) {
  auto table = csv::parse(content);
  auto expected = csv::parse_row(pairs_csv_header());
  if (table.header != expected)
    throw Error(ErrorKind::io,
                "pairs csv header does not match '" + pairs_csv_header() + "'");
  ObservationTable out;
  out.metric_names.assign(expected.begin() + 3, expected.end());
  out.metric_columns.assign(out.metric_names.size(), {});
  for (const auto& row : table.rows) {
    out.pair_ids.push_back(row[0]);
    out.schemas.push_back(row[1]);
    out.units.push_back(row[2]);
    for (std::size_t i = 0; i < out.metric_names.size(); ++i)
      out.metric_columns[i].push_back(
          csv::to_double(row[i + 3], out.metric_names[i]));
  }
  return out;
}

}  // namespace zedmet::pairing
