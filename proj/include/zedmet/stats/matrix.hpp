// matrix.hpp - the full spec-metric x code-metric x test correlation table.
#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "zedmet/common/csv.hpp"
#include "zedmet/common/text.hpp"
#include "zedmet/stats/correlation.hpp"

namespace zedmet::stats {

struct MatrixCell {
  std::string spec_metric;
  std::string code_metric;
  TestKind test = TestKind::pearson;
  double r = 0.0;
  double p = 1.0;
  AssociationClass association = AssociationClass::weak;
  int n = 0;
};

struct NamedColumns {
  std::vector<std::string> names;
  std::vector<std::vector<double>> columns;  // one vector per name
};

inline bool is_constant(const std::vector<double>& v) {
  for (double a : v)
    if (a != v.front()) return false;
  return true;
}

// One cell per (spec metric, code metric, test), tests innermost. Cells are
// independent; the computation is pure and safe to run concurrently.
inline std::vector<MatrixCell> correlation_matrix(const NamedColumns& spec,
                                                  const NamedColumns& code) {
  static constexpr TestKind kTests[] = {TestKind::pearson, TestKind::spearman,
                                        TestKind::kendall};
  std::vector<MatrixCell> cells;
  cells.reserve(spec.names.size() * code.names.size() * 3);
  for (std::size_t si = 0; si < spec.names.size(); ++si) {
    for (std::size_t ci = 0; ci < code.names.size(); ++ci) {
      for (TestKind test : kTests) {
        CorrelationResult res;
        try {
          res = correlate(test, spec.columns[si], code.columns[ci]);
        } catch (const Error& e) {
          if (e.kind() == ErrorKind::constant_input)
            throw Error(ErrorKind::constant_input,
                        "column '" +
                            (is_constant(spec.columns[si]) ? spec.names[si]
                                                           : code.names[ci]) +
                            "' is constant; correlation is undefined");
          throw;
        }
        MatrixCell cell;
        cell.spec_metric = spec.names[si];
        cell.code_metric = code.names[ci];
        cell.test = test;
        cell.r = res.r;
        cell.p = res.p;
        cell.association = classify_association(res.r);
        cell.n = res.n;
        cells.push_back(std::move(cell));
      }
    }
  }
  return cells;
}

inline nlohmann::json matrix_to_json(const std::vector<MatrixCell>& cells) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : cells)
    arr.push_back({{"spec_metric", c.spec_metric},
                   {"code_metric", c.code_metric},
                   {"test", test_name(c.test)},
                   {"r", c.r},
                   {"p", c.p},
                   {"association", association_name(c.association)},
                   {"n", c.n}});
  return arr;
}

inline std::string matrix_to_csv(const std::vector<MatrixCell>& cells) {
  std::string out = "spec_metric,code_metric,test,r,p,association,n\n";
  for (const auto& c : cells) {
    out += csv::join_row({c.spec_metric, c.code_metric, test_name(c.test),
                          text::format_double(c.r), text::format_double(c.p),
                          association_name(c.association),
                          std::to_string(c.n)});
  }
  return out;
}

}  // namespace zedmet::stats
