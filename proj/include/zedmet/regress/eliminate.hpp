// eliminate.hpp - backward elimination over the p-value threshold, and the
// predictors-per-observation budget check.
#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "zedmet/regress/ols.hpp"

namespace zedmet::regress {

struct BudgetCheck {
  bool ok = true;
  std::string message;
};

// The rule of thumb: no more than one fifth of the sample size.
inline BudgetCheck check_variable_budget(long long n, long long k) {
  BudgetCheck b;
  if (5 * k <= n) {
    b.ok = true;
    b.message = std::to_string(k) + " predictors are within one fifth of " +
                std::to_string(n) + " observations";
  } else {
    b.ok = false;
    b.message = std::to_string(k) + " predictors exceed one fifth of " +
                std::to_string(n) +
                " observations; the appropriate number of independent "
                "variables is not more than one fifth of the sample size";
  }
  return b;
}

namespace detail {

inline ObservationMatrix select_predictors(
    const ObservationMatrix& data, const std::vector<std::size_t>& keep) {
  ObservationMatrix out;
  out.response = data.response;
  out.response_name = data.response_name;
  for (std::size_t j : keep) out.predictor_names.push_back(data.predictor_names[j]);
  out.rows.reserve(data.rows.size());
  for (const auto& row : data.rows) {
    std::vector<double> r;
    r.reserve(keep.size());
    for (std::size_t j : keep) r.push_back(row[j]);
    out.rows.push_back(std::move(r));
  }
  return out;
}

}  // namespace detail

// Fit, drop every predictor whose p exceeds the threshold, refit; stop when
// all survive or none remain. With one_at_a_time only the worst predictor
// is dropped per round. The intercept is never dropped.
inline RegressionModel backward_eliminate(const ObservationMatrix& data,
                                          double threshold = 0.4,
                                          bool one_at_a_time = false) {
  std::vector<std::size_t> keep(data.predictor_names.size());
  for (std::size_t j = 0; j < keep.size(); ++j) keep[j] = j;

  std::vector<EliminationRound> trace;
  RegressionModel model;
  int round = 0;
  for (;;) {
    ++round;
    model = ols_fit(detail::select_predictors(data, keep));
    std::vector<std::size_t> exceed;  // indices into keep
    for (std::size_t i = 0; i < model.terms.size(); ++i)
      if (model.terms[i].p > threshold) exceed.push_back(i);
    if (exceed.empty() || keep.empty()) break;

    if (one_at_a_time && exceed.size() > 1) {
      std::size_t worst = exceed.front();
      for (std::size_t i : exceed)
        if (model.terms[i].p > model.terms[worst].p) worst = i;
      exceed = {worst};
    }

    EliminationRound r;
    r.round = round;
    for (std::size_t i : exceed)
      r.dropped.emplace_back(model.terms[i].name, model.terms[i].p);
    trace.push_back(std::move(r));

    std::vector<std::size_t> next;
    for (std::size_t i = 0; i < keep.size(); ++i)
      if (std::find(exceed.begin(), exceed.end(), i) == exceed.end())
        next.push_back(keep[i]);
    keep = std::move(next);
    if (keep.empty()) {
      model = ols_fit(detail::select_predictors(data, keep));
      break;
    }
  }
  model.threshold = threshold;
  model.trace = std::move(trace);
  return model;
}

}  // namespace zedmet::regress
