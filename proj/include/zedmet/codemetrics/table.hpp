// table.hpp - CSV/JSON export of the code metric table.
#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "zedmet/codemetrics/metrics.hpp"
#include "zedmet/common/csv.hpp"

namespace zedmet::codemetrics {

inline const std::vector<std::string>& column_names() {
  static const std::vector<std::string> names = {
      "CL", "CLC", "CLCD", "CLCE", "CYC", "KNOTS", "FIN", "FOUT", "SI"};
  return names;
}

inline std::vector<long long> metric_values(const CodeMetrics& m) {
  return {m.cl, m.clc, m.clcd, m.clce, m.cyc, m.knots, m.fin, m.fout, m.si};
}

inline std::string to_csv(const std::vector<CodeMetrics>& table) {
  std::string out = "unit,CL,CLC,CLCD,CLCE,CYC,KNOTS,FIN,FOUT,SI\n";
  for (const auto& m : table) {
    std::vector<std::string> row{m.unit};
    for (long long v : metric_values(m)) row.push_back(std::to_string(v));
    out += csv::join_row(row);
  }
  return out;
}

inline nlohmann::json to_json(const std::vector<CodeMetrics>& table) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& m : table) {
    nlohmann::json row;
    row["unit"] = m.unit;
    const auto& names = column_names();
    auto values = metric_values(m);
    for (std::size_t i = 0; i < names.size(); ++i) row[names[i]] = values[i];
    arr.push_back(std::move(row));
  }
  return arr;
}

}  // namespace zedmet::codemetrics
