// synth.hpp - seeded synthetic observation generator for the self tests.
//
// Draws plausible specification metric vectors and builds the response from
// a fixed reference formula over CC, USE, AND and OR, optionally with
// Gaussian noise. Used by `zedmet selftest` and the acceptance suite.
#pragma once

#include <random>
#include <string>
#include <vector>

#include "zedmet/regress/ols.hpp"
#include "zedmet/specmetrics/table.hpp"

namespace zedmet::pipeline {

struct ReferenceFormula {
  double cc = 3.099;
  double use = -1.237;
  double and_c = 2.557;
  double or_c = -41.735;
  double intercept = -9.873;

  double operator()(double cc_v, double use_v, double and_v,
                    double or_v) const {
    return cc * cc_v + use * use_v + and_c * and_v + or_c * or_v + intercept;
  }
};

// n observations over all eleven specification metrics; the response is the
// reference formula plus noise_sd * N(0,1).
inline regress::ObservationMatrix synth_observations(int n, unsigned seed,
                                                     double noise_sd,
                                                     std::string target =
                                                         "CL") {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> cc(1, 40), use(0, 15), and_c(0, 10),
      or_c(0, 5), vl(1, 10), vu(1, 20), du(0, 30), def(0, 8);
  std::uniform_real_distribution<double> ratio(0.0, 1.0);
  std::normal_distribution<double> noise(0.0, 1.0);
  ReferenceFormula formula;

  regress::ObservationMatrix m;
  m.predictor_names = specmetrics::column_names();
  m.response_name = std::move(target);
  for (int i = 0; i < n; ++i) {
    double CC = cc(rng), VL = vl(rng), VU = vu(rng), DU = du(rng),
           USE = use(rng), DEF = def(rng), AND = and_c(rng), OR = or_c(rng),
           COV = ratio(rng), OVL = ratio(rng), CHI = 0.5 * ratio(rng);
    m.rows.push_back({CC, VL, VU, DU, USE, DEF, AND, OR, COV, OVL, CHI});
    double y = formula(CC, USE, AND, OR);
    if (noise_sd > 0.0) y += noise_sd * noise(rng);
    m.response.push_back(y);
  }
  return m;
}

// The four-predictor noiseless variant used for exact coefficient recovery.
inline regress::ObservationMatrix synth_recovery_observations(int n,
                                                              unsigned seed) {
  auto full = synth_observations(n, seed, 0.0);
  regress::ObservationMatrix m;
  m.predictor_names = {"CC", "USE", "AND", "OR"};
  m.response_name = full.response_name;
  m.response = full.response;
  for (const auto& row : full.rows)
    m.rows.push_back({row[0], row[4], row[6], row[7]});
  return m;
}

}  // namespace zedmet::pipeline
