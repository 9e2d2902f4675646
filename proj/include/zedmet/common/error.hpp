// error.hpp - single error type shared by all zedmet components.
#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace zedmet {

// Broad failure categories; the CLI maps them onto exit codes.
enum class ErrorCategory { usage, parse, data, numeric };

enum class ErrorKind {
  usage,
  io,
  // specification / code parsing
  syntax,
  duplicate_schema,
  duplicate_declaration,
  unknown_inclusion,
  cyclic_inclusion,
  unresolved_label,
  unresolved_exit,
  orphan_trace_comment,
  // data preparation / statistics input
  missing_metrics,
  missing_predictor,
  constant_input,
  length_mismatch,
  too_few_samples,
  too_few_observations,
  out_of_range,
  criterion_outside_schema,
  // numeric kernels
  non_convergence,
  rank_deficient,
};

inline ErrorCategory category_of(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::usage:
      return ErrorCategory::usage;
    case ErrorKind::syntax:
    case ErrorKind::duplicate_schema:
    case ErrorKind::duplicate_declaration:
    case ErrorKind::unknown_inclusion:
    case ErrorKind::cyclic_inclusion:
    case ErrorKind::unresolved_label:
    case ErrorKind::unresolved_exit:
    case ErrorKind::orphan_trace_comment:
      return ErrorCategory::parse;
    case ErrorKind::non_convergence:
    case ErrorKind::rank_deficient:
      return ErrorCategory::numeric;
    default:
      return ErrorCategory::data;
  }
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message, int line = 0)
      : std::runtime_error(std::move(message)), kind_(kind), line_(line) {}

  ErrorKind kind() const noexcept { return kind_; }
  ErrorCategory category() const noexcept { return category_of(kind_); }
  // 1-based source line for parse errors, 0 when not applicable.
  int line() const noexcept { return line_; }

 private:
  ErrorKind kind_;
  int line_;
};

}  // namespace zedmet
