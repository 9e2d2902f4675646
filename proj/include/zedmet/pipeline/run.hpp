// run.hpp - measure -> pair -> correlate -> fit orchestration shared by the
// CLI and the tests. Each stage failure is re-thrown with a stage label.
#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "zedmet/codemetrics/metrics.hpp"
#include "zedmet/codemetrics/table.hpp"
#include "zedmet/common/atomic_file.hpp"
#include "zedmet/common/error.hpp"
#include "zedmet/mil/callgraph.hpp"
#include "zedmet/mil/parser.hpp"
#include "zedmet/pairing/pairing.hpp"
#include "zedmet/regress/eliminate.hpp"
#include "zedmet/regress/formula.hpp"
#include "zedmet/specmetrics/metrics.hpp"
#include "zedmet/specmetrics/table.hpp"
#include "zedmet/srn/srn.hpp"
#include "zedmet/stats/matrix.hpp"
#include "zedmet/zspec/expand.hpp"
#include "zedmet/zspec/parser.hpp"

namespace zedmet::pipeline {

struct RunOptions {
  double threshold = 0.4;
  int edit_distance = 2;
  pairing::AggregatePolicy policy = pairing::AggregatePolicy::strict;
  bool one_at_a_time = false;
  std::vector<std::string> targets = {"CL", "CLCE", "CYC", "KNOTS", "FOUT"};
};

struct SpecMeasurement {
  zspec::Specification spec;  // expanded
  srn::Srn net;
  std::vector<specmetrics::SpecMetrics> metrics;
};

struct CodeMeasurement {
  std::vector<mil::ParsedFile> files;
  std::vector<mil::CodeUnit> units;  // all files, in order
  mil::CallGraph graph;
  std::vector<codemetrics::CodeMetrics> metrics;
};

struct RunSummary {
  std::size_t schemas = 0;
  std::size_t units = 0;
  std::size_t observations = 0;
  std::size_t correlation_rows = 0;
  std::vector<std::string> models;
  std::vector<std::string> warnings;
  std::vector<std::string> artifacts;  // files written
};

template <typename Fn>
auto stage(const std::string& name, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    throw Error(e.kind(), name + ": " + e.what(), e.line());
  }
}

inline SpecMeasurement measure_spec_file(const std::string& path) {
  SpecMeasurement out;
  auto source = io::read_file(path);
  out.spec = zspec::resolve_inclusions(
      zspec::parse_specification(source, std::filesystem::path(path)
                                             .filename()
                                             .string()));
  out.net = srn::build_srn(out.spec);
  out.metrics = specmetrics::compute_all(out.spec, out.net);
  return out;
}

inline CodeMeasurement measure_code_files(
    const std::vector<std::string>& paths) {
  CodeMeasurement out;
  for (const auto& path : paths) {
    auto source = io::read_file(path);
    auto label = std::filesystem::path(path).filename().string();
    out.files.push_back(mil::parse_mil_file(source, label));
    out.files.back().file = label;
  }
  for (const auto& f : out.files)
    out.units.insert(out.units.end(), f.units.begin(), f.units.end());
  out.graph = mil::build_call_graph(out.units);
  out.metrics = codemetrics::compute_all(out.units, out.graph);
  return out;
}

// Trace refs across all parsed files; needs the original sources again.
inline std::vector<pairing::TraceRef> collect_traces(
    const std::vector<std::string>& paths, const CodeMeasurement& code) {
  std::vector<pairing::TraceRef> traces;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    auto source = io::read_file(paths[i]);
    auto refs = pairing::extract_trace_units(code.units, source,
                                             code.files[i].file);
    traces.insert(traces.end(), refs.begin(), refs.end());
  }
  return traces;
}

inline stats::NamedColumns spec_columns(
    const pairing::ObservationTable& table) {
  stats::NamedColumns out;
  out.names = specmetrics::column_names();
  for (const auto& name : out.names) out.columns.push_back(table.column(name));
  return out;
}

inline stats::NamedColumns code_columns(
    const pairing::ObservationTable& table) {
  stats::NamedColumns out;
  out.names = codemetrics::column_names();
  for (const auto& name : out.names) out.columns.push_back(table.column(name));
  return out;
}

// Fits one target from a pairs table. Without an explicit predictor list
// the maximum model is all eleven specification metrics; when that exceeds
// the one-fifth budget the predictor set is screened down to the floor(n/5)
// metrics with the largest absolute linear correlation to the target.
inline regress::RegressionModel fit_target(
    const pairing::ObservationTable& table, const std::string& target,
    double threshold, bool one_at_a_time,
    std::optional<std::vector<std::string>> predictors,
    std::vector<std::string>* warnings = nullptr) {
  const auto& response = table.column(target);
  long long n = static_cast<long long>(response.size());

  std::vector<std::string> chosen;
  if (predictors) {
    chosen = *predictors;
    auto budget = regress::check_variable_budget(
        n, static_cast<long long>(chosen.size()));
    if (!budget.ok && warnings) warnings->push_back(budget.message);
  } else {
    chosen = specmetrics::column_names();
    auto budget = regress::check_variable_budget(
        n, static_cast<long long>(chosen.size()));
    if (!budget.ok) {
      long long limit = n / 5;
      if (warnings)
        warnings->push_back(budget.message + "; keeping the " +
                            std::to_string(limit) +
                            " most correlated predictors for " + target);
      std::vector<std::pair<double, std::string>> ranked;
      for (const auto& name : chosen) {
        double score = 0.0;
        try {
          score = std::fabs(stats::pearson(table.column(name), response).r);
        } catch (const Error&) {
          score = 0.0;  // constant or degenerate column ranks last
        }
        ranked.emplace_back(score, name);
      }
      std::stable_sort(ranked.begin(), ranked.end(),
                       [](const auto& a, const auto& b) {
                         return a.first > b.first;
                       });
      chosen.clear();
      for (long long i = 0; i < limit && i < (long long)ranked.size(); ++i)
        chosen.push_back(ranked[static_cast<std::size_t>(i)].second);
    }
  }

  regress::ObservationMatrix m;
  m.predictor_names = chosen;
  m.response_name = target;
  m.response = response;
  m.rows.resize(response.size());
  for (const auto& name : chosen) {
    const auto& col = table.column(name);
    for (std::size_t i = 0; i < col.size(); ++i) m.rows[i].push_back(col[i]);
  }
  return regress::backward_eliminate(m, threshold, one_at_a_time);
}

// Full pipeline; writes every artifact under outdir and returns the summary.
inline RunSummary end_to_end(const std::string& spec_path,
                             const std::vector<std::string>& code_paths,
                             const std::string& outdir,
                             const RunOptions& options = {}) {
  namespace fs = std::filesystem;
  RunSummary summary;
  auto emit = [&](const std::string& name, const std::string& content) {
    auto path = (fs::path(outdir) / name).string();
    io::write_file_atomic(path, content);
    summary.artifacts.push_back(path);
  };

  auto spec = stage("measure-spec",
                    [&] { return measure_spec_file(spec_path); });
  summary.schemas = spec.spec.schemas.size();
  emit("spec_metrics.csv", specmetrics::to_csv(spec.metrics));
  emit("spec_metrics.json", specmetrics::to_json(spec.metrics).dump(2) + "\n");

  auto code = stage("measure-code",
                    [&] { return measure_code_files(code_paths); });
  summary.units = code.units.size();
  emit("code_metrics.csv", codemetrics::to_csv(code.metrics));
  emit("code_metrics.json", codemetrics::to_json(code.metrics).dump(2) + "\n");

  auto observations = stage("pair", [&] {
    auto traces = collect_traces(code_paths, code);
    auto report = pairing::match_pairs(spec.spec, traces,
                                       options.edit_distance, options.policy);
    auto obs =
        pairing::assemble_observations(report, spec.metrics, code.metrics);
    emit("pairing_report.json", pairing::report_to_json(report).dump(2) + "\n");
    emit("pairs.csv", pairing::observations_to_csv(obs));
    if (obs.empty())
      throw Error(ErrorKind::missing_metrics,
                  "no schema/unit pairs; nothing to analyse");
    return obs;
  });
  summary.observations = observations.size();

  auto table = pairing::load_pairs_csv(
      pairing::observations_to_csv(observations));

  auto cells = stage("correlate", [&] {
    return stats::correlation_matrix(spec_columns(table), code_columns(table));
  });
  summary.correlation_rows = cells.size();
  emit("correlations.csv", stats::matrix_to_csv(cells));

  stage("fit", [&] {
    std::string formulas;
    for (const auto& target : options.targets) {
      auto model = fit_target(table, target, options.threshold,
                              options.one_at_a_time, std::nullopt,
                              &summary.warnings);
      emit("model_" + target + ".json",
           regress::model_to_json(model).dump(2) + "\n");
      formulas += regress::emit_formula(model) + "\n";
      summary.models.push_back(target);
    }
    emit("formulas.txt", formulas);
    return 0;
  });

  return summary;
}

}  // namespace zedmet::pipeline
