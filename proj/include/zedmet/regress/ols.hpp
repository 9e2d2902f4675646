// ols.hpp - ordinary least squares with full inference.
//
// Coefficients come from a column-pivoted Householder QR of the design
// matrix (intercept column first). Standard errors use the RSS-based
// variance estimate and the (X'X)^-1 diagonal recovered from R.
#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "zedmet/common/error.hpp"
#include "zedmet/stats/special.hpp"

namespace zedmet::regress {

struct ObservationMatrix {
  std::vector<std::string> predictor_names;
  std::vector<std::vector<double>> rows;  // one row per observation
  std::vector<double> response;
  std::string response_name;
};

struct CoefStat {
  std::string name;
  double coeff = 0.0;
  double se = 0.0;
  double t = 0.0;
  double p = 1.0;
};

struct EliminationRound {
  int round = 0;
  std::vector<std::pair<std::string, double>> dropped;  // (predictor, p)
};

struct RegressionModel {
  std::string target;
  int n = 0;
  double threshold = 0.0;  // backward elimination threshold; NaN for plain fits
  CoefStat intercept;
  std::vector<CoefStat> terms;
  double r2 = 0.0;
  double adj_r2 = 0.0;
  double f = 0.0;
  double sig_f = 1.0;
  int residual_df = 0;
  std::vector<EliminationRound> trace;
};

inline RegressionModel ols_fit(const ObservationMatrix& data) {
  const std::size_t n = data.rows.size();
  const std::size_t k = data.predictor_names.size();
  if (data.response.size() != n)
    throw Error(ErrorKind::length_mismatch,
                "response has " + std::to_string(data.response.size()) +
                    " values for " + std::to_string(n) + " rows");
  for (const auto& row : data.rows)
    if (row.size() != k)
      throw Error(ErrorKind::length_mismatch,
                  "ragged observation matrix");
  if (n < k + 2)
    throw Error(ErrorKind::too_few_observations,
                "need at least " + std::to_string(k + 2) +
                    " observations for " + std::to_string(k) +
                    " predictors, got " + std::to_string(n));

  Eigen::MatrixXd X(n, k + 1);
  Eigen::VectorXd y(n);
  for (std::size_t i = 0; i < n; ++i) {
    X(static_cast<Eigen::Index>(i), 0) = 1.0;
    for (std::size_t j = 0; j < k; ++j)
      X(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j) + 1) =
          data.rows[i][j];
    y(static_cast<Eigen::Index>(i)) = data.response[i];
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
  if (qr.rank() < static_cast<Eigen::Index>(k + 1)) {
    Eigen::Index dependent = qr.colsPermutation().indices()(qr.rank());
    std::string column =
        dependent == 0 ? "intercept"
                       : data.predictor_names[static_cast<std::size_t>(
                             dependent - 1)];
    throw Error(ErrorKind::rank_deficient,
                "design matrix is rank deficient at column '" + column + "'");
  }

  Eigen::VectorXd beta = qr.solve(y);
  Eigen::VectorXd residuals = y - X * beta;
  double rss = residuals.squaredNorm();
  double mean_y = y.mean();
  double tss = (y.array() - mean_y).square().sum();

  int df = static_cast<int>(n) - static_cast<int>(k) - 1;
  double sigma2 = rss / df;

  // (X'X)^-1 = P R^-1 R^-T P' from the pivoted QR
  Eigen::Index cols = static_cast<Eigen::Index>(k + 1);
  Eigen::MatrixXd r_upper =
      qr.matrixR().topLeftCorner(cols, cols).triangularView<Eigen::Upper>();
  Eigen::MatrixXd r_inv = r_upper.triangularView<Eigen::Upper>().solve(
      Eigen::MatrixXd::Identity(cols, cols));
  Eigen::MatrixXd xtx_inv = r_inv * r_inv.transpose();
  Eigen::MatrixXd perm = qr.colsPermutation();
  xtx_inv = perm * xtx_inv * perm.transpose();

  auto coef_stat = [&](Eigen::Index j, std::string name) {
    CoefStat c;
    c.name = std::move(name);
    c.coeff = beta(j);
    c.se = std::sqrt(sigma2 * xtx_inv(j, j));
    c.t = c.se > 0.0 ? c.coeff / c.se : 0.0;
    c.p = c.se > 0.0 ? 2.0 * stats::student_t_sf(std::fabs(c.t), df) : 0.0;
    return c;
  };

  RegressionModel model;
  model.target = data.response_name;
  model.n = static_cast<int>(n);
  model.threshold = std::nan("");
  model.residual_df = df;
  model.intercept = coef_stat(0, "intercept");
  for (std::size_t j = 0; j < k; ++j)
    model.terms.push_back(coef_stat(static_cast<Eigen::Index>(j) + 1,
                                    data.predictor_names[j]));

  if (tss > 0.0) {
    model.r2 = 1.0 - rss / tss;
    model.adj_r2 =
        1.0 - (1.0 - model.r2) * (static_cast<double>(n) - 1.0) / df;
  } else {
    model.r2 = rss <= 1e-12 ? 1.0 : 0.0;
    model.adj_r2 = model.r2;
  }
  if (k > 0 && rss > 0.0 && tss > rss) {
    model.f = ((tss - rss) / static_cast<double>(k)) / (rss / df);
    model.sig_f = stats::f_sf(model.f, static_cast<int>(k), df);
  } else if (k > 0 && rss == 0.0) {
    model.f = std::numeric_limits<double>::infinity();
    model.sig_f = 0.0;
  } else {
    model.f = 0.0;
    model.sig_f = 1.0;
  }
  return model;
}

}  // namespace zedmet::regress
