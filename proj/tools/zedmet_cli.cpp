// zedmet - batch workbench for specification and code metrics.
//
// Subcommands: measure spec/code, pair, correlate, fit, predict, run-all,
// selftest. Files are written atomically; exit codes: 1 usage, 2 parse
// error, 3 data error, 4 numeric failure.
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "zedmet/codemetrics/table.hpp"
#include "zedmet/common/atomic_file.hpp"
#include "zedmet/common/error.hpp"
#include "zedmet/pipeline/run.hpp"
#include "zedmet/pipeline/synth.hpp"
#include "zedmet/regress/eliminate.hpp"
#include "zedmet/regress/formula.hpp"
#include "zedmet/specmetrics/table.hpp"
#include "zedmet/srn/dump.hpp"
#include "zedmet/stats/matrix.hpp"

namespace {

using namespace zedmet;

int exit_code_for(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::usage: return 1;
    case ErrorCategory::parse: return 2;
    case ErrorCategory::data: return 3;
    case ErrorCategory::numeric: return 4;
  }
  return 3;
}

// Content goes to --out when given (summary to stdout), otherwise content
// itself is the stdout payload and the summary moves to stderr.
void deliver(const std::string& content, const std::string& out_path,
             const std::string& summary) {
  if (!out_path.empty()) {
    io::write_file_atomic(out_path, content);
    std::cout << summary << " -> " << out_path << "\n";
  } else {
    std::cout << content;
    std::cerr << summary << "\n";
  }
}

std::vector<std::string> split_list(const std::string& csv_list) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : csv_list) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

pairing::AggregatePolicy parse_policy(const std::string& name) {
  if (name == "strict") return pairing::AggregatePolicy::strict;
  if (name == "sum") return pairing::AggregatePolicy::sum;
  throw Error(ErrorKind::usage, "unknown aggregation policy '" + name + "'");
}

struct CommonFlags {
  std::string format = "csv";
  std::string out;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--format", flags.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", flags.out, "write output to this file");
}

int run_measure_spec(const std::string& path, const CommonFlags& flags,
                     const std::string& srn_dump_path) {
  auto m = pipeline::measure_spec_file(path);
  if (!srn_dump_path.empty())
    io::write_file_atomic(srn_dump_path, srn::dump_dot(m.net));
  std::string content = flags.format == "json"
                            ? specmetrics::to_json(m.metrics).dump(2) + "\n"
                            : specmetrics::to_csv(m.metrics);
  deliver(content, flags.out,
          "measured " + std::to_string(m.metrics.size()) + " schemas");
  return 0;
}

int run_measure_code(const std::vector<std::string>& paths,
                     const CommonFlags& flags) {
  auto m = pipeline::measure_code_files(paths);
  std::string content = flags.format == "json"
                            ? codemetrics::to_json(m.metrics).dump(2) + "\n"
                            : codemetrics::to_csv(m.metrics);
  deliver(content, flags.out,
          "measured " + std::to_string(m.units.size()) + " units from " +
              std::to_string(paths.size()) + " files");
  return 0;
}

int run_pair(const std::string& spec_path,
             const std::vector<std::string>& code_paths, int edit_distance,
             const std::string& policy_name, const CommonFlags& flags,
             const std::string& report_path) {
  auto spec = pipeline::measure_spec_file(spec_path);
  auto code = pipeline::measure_code_files(code_paths);
  auto traces = pipeline::collect_traces(code_paths, code);
  auto report = pairing::match_pairs(spec.spec, traces, edit_distance,
                                     parse_policy(policy_name));
  auto observations =
      pairing::assemble_observations(report, spec.metrics, code.metrics);
  if (!report_path.empty())
    io::write_file_atomic(report_path,
                          pairing::report_to_json(report).dump(2) + "\n");
  std::string content =
      flags.format == "json"
          ? pairing::observations_to_json(observations).dump(2) + "\n"
          : pairing::observations_to_csv(observations);
  deliver(content, flags.out,
          "paired " + std::to_string(report.pairs.size()) + " of " +
              std::to_string(spec.metrics.size()) + " schemas (" +
              std::to_string(report.dangling.size()) + " dangling, " +
              std::to_string(report.suggestions.size()) + " suggestions, " +
              std::to_string(report.conflicts.size()) + " conflicts, " +
              std::to_string(report.unreferenced.size()) + " unreferenced)");
  return 0;
}

int run_correlate(const std::string& pairs_path, const CommonFlags& flags) {
  auto table = pairing::load_pairs_csv(io::read_file(pairs_path));
  auto cells = stats::correlation_matrix(pipeline::spec_columns(table),
                                         pipeline::code_columns(table));
  std::string content = flags.format == "json"
                            ? stats::matrix_to_json(cells).dump(2) + "\n"
                            : stats::matrix_to_csv(cells);
  deliver(content, flags.out,
          "correlated " + std::to_string(cells.size()) + " cells over " +
              std::to_string(table.size()) + " observations");
  return 0;
}

int run_fit(const std::string& pairs_path, const std::string& target,
            double threshold, const std::string& predictors_list,
            bool one_at_a_time, const CommonFlags& flags) {
  auto table = pairing::load_pairs_csv(io::read_file(pairs_path));
  std::optional<std::vector<std::string>> predictors;
  if (!predictors_list.empty()) predictors = split_list(predictors_list);
  std::vector<std::string> warnings;
  auto model = pipeline::fit_target(table, target, threshold, one_at_a_time,
                                    predictors, &warnings);
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
  deliver(regress::model_to_json(model).dump(2) + "\n", flags.out,
          regress::emit_formula(model));
  return 0;
}

int run_predict(const std::string& model_path, const std::string& spec_path,
                const CommonFlags& flags) {
  auto model = regress::model_from_json(
      nlohmann::json::parse(io::read_file(model_path)));
  auto m = pipeline::measure_spec_file(spec_path);
  std::string content = "schema,target,prediction\n";
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& sm : m.metrics) {
    std::map<std::string, double> record;
    const auto& names = specmetrics::column_names();
    auto values = specmetrics::metric_values(sm);
    for (std::size_t i = 0; i < names.size(); ++i) record[names[i]] = values[i];
    double value = regress::predict(model, record);
    content += csv::join_row({sm.schema, model.target,
                              text::format_double(value)});
    rows.push_back({{"schema", sm.schema},
                    {"target", model.target},
                    {"prediction", value}});
  }
  deliver(flags.format == "json" ? rows.dump(2) + "\n" : content, flags.out,
          "predicted " + model.target + " for " +
              std::to_string(m.metrics.size()) + " schemas");
  return 0;
}

int run_all(const std::string& spec_path, const std::string& code_dir,
            const std::string& outdir, double threshold, int edit_distance,
            const std::string& policy_name, const std::string& targets_list) {
  namespace fs = std::filesystem;
  std::vector<std::string> code_paths;
  if (fs::exists(code_dir))
    for (const auto& entry : fs::directory_iterator(code_dir))
      if (entry.is_regular_file() && entry.path().extension() == ".mil")
        code_paths.push_back(entry.path().string());
  std::sort(code_paths.begin(), code_paths.end());

  pipeline::RunOptions options;
  options.threshold = threshold;
  options.edit_distance = edit_distance;
  options.policy = parse_policy(policy_name);
  if (!targets_list.empty()) options.targets = split_list(targets_list);

  auto summary = pipeline::end_to_end(spec_path, code_paths, outdir, options);
  for (const auto& w : summary.warnings) std::cerr << "warning: " << w << "\n";
  std::cout << "wrote " << summary.artifacts.size() << " artifacts to "
            << outdir << " (schemas=" << summary.schemas
            << ", units=" << summary.units
            << ", observations=" << summary.observations
            << ", correlation_rows=" << summary.correlation_rows
            << ", models=" << summary.models.size() << ")\n";
  return 0;
}

int run_selftest(unsigned seed) {
  bool ok = true;
  auto check = [&](const std::string& name, bool pass) {
    std::cout << (pass ? "PASS " : "FAIL ") << name << "\n";
    ok = ok && pass;
  };

  check("student_t_sf(0, 10) == 0.5", stats::student_t_sf(0.0, 10) == 0.5);

  auto recovery = regress::ols_fit(pipeline::synth_recovery_observations(
      70, seed));
  pipeline::ReferenceFormula formula;
  bool coeffs_ok =
      std::fabs(recovery.terms[0].coeff - formula.cc) < 1e-6 &&
      std::fabs(recovery.terms[1].coeff - formula.use) < 1e-6 &&
      std::fabs(recovery.terms[2].coeff - formula.and_c) < 1e-6 &&
      std::fabs(recovery.terms[3].coeff - formula.or_c) < 1e-6 &&
      std::fabs(recovery.intercept.coeff - formula.intercept) < 1e-6;
  check("noiseless coefficient recovery within 1e-6",
        coeffs_ok && std::fabs(recovery.r2 - 1.0) < 1e-9);

  int retained = 0;
  const int runs = 20;
  for (int i = 0; i < runs; ++i) {
    auto data = pipeline::synth_observations(70, seed + 1 + i, 1.0);
    auto model = regress::backward_eliminate(data, 0.4);
    std::set<std::string> kept;
    for (const auto& t : model.terms) kept.insert(t.name);
    if (kept.count("CC") && kept.count("USE") && kept.count("AND") &&
        kept.count("OR"))
      ++retained;
  }
  check("true predictors retained in " + std::to_string(retained) + "/" +
            std::to_string(runs) + " noisy runs (need >= 19)",
        retained >= 19);

  return ok ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"specification and code metric workbench"};
  app.require_subcommand(1);

  // measure
  auto* measure = app.add_subcommand("measure", "compute metric tables");
  measure->require_subcommand(1);
  auto* mspec = measure->add_subcommand("spec", "specification metrics");
  std::string mspec_file, mspec_dump;
  CommonFlags mspec_flags;
  mspec->add_option("file", mspec_file, "specification file")->required();
  mspec->add_option("--dump-srn", mspec_dump,
                    "write the dependence net as a DOT graph");
  add_common(mspec, mspec_flags);
  auto* mcode = measure->add_subcommand("code", "code metrics");
  std::vector<std::string> mcode_files;
  CommonFlags mcode_flags;
  mcode->add_option("files", mcode_files, "code files")->required();
  add_common(mcode, mcode_flags);

  // pair
  auto* pair_cmd = app.add_subcommand("pair", "match schemas to code units");
  std::string pair_spec, pair_report, pair_policy = "strict";
  std::vector<std::string> pair_code;
  int pair_edit = 2;
  CommonFlags pair_flags;
  pair_cmd->add_option("spec", pair_spec, "specification file")->required();
  pair_cmd->add_option("code", pair_code, "code files")->required();
  pair_cmd->add_option("--edit-distance", pair_edit,
                       "suggestion edit distance bound");
  pair_cmd->add_option("--aggregate", pair_policy,
                       "many-to-one policy: strict or sum")
      ->check(CLI::IsMember({"strict", "sum"}));
  pair_cmd->add_option("--report", pair_report,
                       "write the pairing report JSON here");
  add_common(pair_cmd, pair_flags);

  // correlate
  auto* corr_cmd = app.add_subcommand("correlate",
                                      "correlation matrix from pairs.csv");
  std::string corr_pairs;
  CommonFlags corr_flags;
  corr_cmd->add_option("pairs", corr_pairs, "pairs.csv")->required();
  add_common(corr_cmd, corr_flags);

  // fit
  auto* fit_cmd = app.add_subcommand("fit", "backward-elimination regression");
  std::string fit_pairs, fit_target_name, fit_predictors;
  double fit_threshold = 0.4;
  bool fit_one_at_a_time = false;
  CommonFlags fit_flags;
  fit_cmd->add_option("pairs", fit_pairs, "pairs.csv")->required();
  fit_cmd->add_option("--target", fit_target_name, "code metric to predict")
      ->required();
  fit_cmd->add_option("--threshold", fit_threshold,
                      "p-value elimination threshold");
  fit_cmd->add_option("--predictors", fit_predictors,
                      "comma-separated predictor list (default: all)");
  fit_cmd->add_flag("--one-at-a-time", fit_one_at_a_time,
                    "drop only the worst predictor per round");
  add_common(fit_cmd, fit_flags);

  // predict
  auto* pred_cmd = app.add_subcommand("predict",
                                      "apply a fitted model to a spec");
  std::string pred_model, pred_spec;
  CommonFlags pred_flags;
  pred_cmd->add_option("--model", pred_model, "model JSON")->required();
  pred_cmd->add_option("spec", pred_spec, "specification file")->required();
  add_common(pred_cmd, pred_flags);

  // run-all
  auto* all_cmd = app.add_subcommand("run-all", "full pipeline into a bundle");
  std::string all_spec, all_dir, all_out = "zedmet-out",
              all_policy = "strict", all_targets;
  double all_threshold = 0.4;
  int all_edit = 2;
  all_cmd->add_option("spec", all_spec, "specification file")->required();
  all_cmd->add_option("codedir", all_dir, "directory of .mil files")
      ->required();
  all_cmd->add_option("--out", all_out, "output directory");
  all_cmd->add_option("--threshold", all_threshold,
                      "p-value elimination threshold");
  all_cmd->add_option("--edit-distance", all_edit,
                      "suggestion edit distance bound");
  all_cmd->add_option("--aggregate", all_policy,
                      "many-to-one policy: strict or sum")
      ->check(CLI::IsMember({"strict", "sum"}));
  all_cmd->add_option("--targets", all_targets,
                      "comma-separated fit targets");

  // selftest
  auto* self_cmd = app.add_subcommand("selftest",
                                      "seeded simulation self checks");
  unsigned self_seed = 42;
  self_cmd->add_option("--seed", self_seed, "random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (mspec->parsed()) return run_measure_spec(mspec_file, mspec_flags, mspec_dump);
    if (mcode->parsed()) return run_measure_code(mcode_files, mcode_flags);
    if (pair_cmd->parsed())
      return run_pair(pair_spec, pair_code, pair_edit, pair_policy,
                      pair_flags, pair_report);
    if (corr_cmd->parsed()) return run_correlate(corr_pairs, corr_flags);
    if (fit_cmd->parsed())
      return run_fit(fit_pairs, fit_target_name, fit_threshold,
                     fit_predictors, fit_one_at_a_time, fit_flags);
    if (pred_cmd->parsed()) return run_predict(pred_model, pred_spec, pred_flags);
    if (all_cmd->parsed())
      return run_all(all_spec, all_dir, all_out, all_threshold, all_edit,
                     all_policy, all_targets);
    if (self_cmd->parsed()) return run_selftest(self_seed);
    std::cerr << "usage error: no subcommand\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.category());
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
