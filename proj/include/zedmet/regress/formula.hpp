// formula.hpp - prediction and formula/JSON rendering of fitted models.
#pragma once

#include <cmath>
#include <map>
#include <string>

#include <json.hpp>

#include "zedmet/common/error.hpp"
#include "zedmet/common/text.hpp"
#include "zedmet/regress/ols.hpp"

namespace zedmet::regress {

inline double predict(const RegressionModel& model,
                      const std::map<std::string, double>& record) {
  double value = model.intercept.coeff;
  for (const auto& term : model.terms) {
    auto it = record.find(term.name);
    if (it == record.end())
      throw Error(ErrorKind::missing_predictor,
                  "record is missing predictor '" + term.name + "'");
    value += term.coeff * it->second;
  }
  return value;
}

// `TARGET(M) = c1*P1 + c2*P2 ... + c0`, coefficients to 3 decimals and
// negative terms rendered with a leading minus.
inline std::string emit_formula(const RegressionModel& model) {
  std::string out = model.target + "(M) = ";
  bool first = true;
  auto append = [&](double coeff, const std::string& factor) {
    std::string magnitude = text::format_fixed(std::fabs(coeff), 3);
    bool negative = coeff < 0.0 && magnitude != "0.000";
    if (first) {
      if (negative) out += '-';
      first = false;
    } else {
      out += negative ? " - " : " + ";
    }
    out += magnitude;
    if (!factor.empty()) out += "*" + factor;
  };
  for (const auto& term : model.terms) append(term.coeff, term.name);
  append(model.intercept.coeff, "");
  return out;
}

namespace detail {

inline nlohmann::json coef_to_json(const CoefStat& c) {
  return nlohmann::json{
      {"coeff", c.coeff}, {"se", c.se}, {"t", c.t}, {"p", c.p}};
}

inline CoefStat coef_from_json(const nlohmann::json& j, std::string name) {
  CoefStat c;
  c.name = std::move(name);
  c.coeff = j.at("coeff").get<double>();
  c.se = j.at("se").get<double>();
  c.t = j.at("t").get<double>();
  c.p = j.at("p").get<double>();
  return c;
}

}  // namespace detail

inline nlohmann::json model_to_json(const RegressionModel& model) {
  nlohmann::json j;
  j["target"] = model.target;
  j["n"] = model.n;
  if (std::isnan(model.threshold))
    j["threshold"] = nullptr;
  else
    j["threshold"] = model.threshold;
  j["intercept"] = detail::coef_to_json(model.intercept);
  j["terms"] = nlohmann::json::array();
  for (const auto& term : model.terms) {
    auto t = detail::coef_to_json(term);
    t["name"] = term.name;
    j["terms"].push_back(std::move(t));
  }
  j["r2"] = model.r2;
  j["adj_r2"] = model.adj_r2;
  j["f"] = model.f;
  j["sig_f"] = model.sig_f;
  j["trace"] = nlohmann::json::array();
  for (const auto& round : model.trace) {
    nlohmann::json r;
    r["round"] = round.round;
    r["dropped"] = nlohmann::json::array();
    for (const auto& [name, p] : round.dropped)
      r["dropped"].push_back(nlohmann::json{{"name", name}, {"p", p}});
    j["trace"].push_back(std::move(r));
  }
  return j;
}

inline RegressionModel model_from_json(const nlohmann::json& j) {
  RegressionModel model;
  model.target = j.at("target").get<std::string>();
  model.n = j.at("n").get<int>();
  model.threshold = j.at("threshold").is_null()
                        ? std::nan("")
                        : j.at("threshold").get<double>();
  model.intercept = detail::coef_from_json(j.at("intercept"), "intercept");
  for (const auto& t : j.at("terms"))
    model.terms.push_back(
        detail::coef_from_json(t, t.at("name").get<std::string>()));
  model.r2 = j.at("r2").get<double>();
  model.adj_r2 = j.at("adj_r2").get<double>();
  model.f = j.at("f").get<double>();
  model.sig_f = j.at("sig_f").get<double>();
  for (const auto& r : j.value("trace", nlohmann::json::array())) {
    EliminationRound round;
    round.round = r.at("round").get<int>();
    for (const auto& d : r.at("dropped"))
      round.dropped.emplace_back(d.at("name").get<std::string>(),
                                 d.at("p").get<double>());
    model.trace.push_back(std::move(round));
  }
  return model;
}

}  // namespace zedmet::regress
