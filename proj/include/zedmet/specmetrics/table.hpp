// table.hpp - CSV/JSON export of the specification metric table.
#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "zedmet/common/csv.hpp"
#include "zedmet/common/text.hpp"
#include "zedmet/specmetrics/metrics.hpp"

namespace zedmet::specmetrics {

inline const std::vector<std::string>& column_names() {
  static const std::vector<std::string> names = {
      "CC", "VL", "VU", "DU", "USE", "DEF", "AND", "OR", "COV", "OVL", "CHI"};
  return names;
}

inline std::vector<double> metric_values(const SpecMetrics& m) {
  return {static_cast<double>(m.cc),        static_cast<double>(m.v_l),
          static_cast<double>(m.v_u),       static_cast<double>(m.du),
          static_cast<double>(m.use_count), static_cast<double>(m.def_count),
          static_cast<double>(m.and_count), static_cast<double>(m.or_count),
          m.coverage,                       m.overlap,
          m.coupling};
}

inline std::string to_csv(const std::vector<SpecMetrics>& table) {
  std::string out = "schema,CC,VL,VU,DU,USE,DEF,AND,OR,COV,OVL,CHI\n";
  for (const auto& m : table) {
    std::vector<std::string> row{m.schema};
    for (double v : metric_values(m)) row.push_back(text::format_double(v));
    out += csv::join_row(row);
  }
  return out;
}

inline nlohmann::json to_json(const std::vector<SpecMetrics>& table) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& m : table) {
    nlohmann::json row;
    row["schema"] = m.schema;
    const auto& names = column_names();
    auto values = metric_values(m);
    for (std::size_t i = 0; i < names.size(); ++i) row[names[i]] = values[i];
    arr.push_back(std::move(row));
  }
  return arr;
}

}  // namespace zedmet::specmetrics
