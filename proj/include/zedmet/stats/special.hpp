// special.hpp - numeric kernels for the p-values: regularized incomplete
// beta (continued fraction), Student-t / F / normal survival functions.
#pragma once

#include <cmath>
#include <string>

#include "zedmet/common/error.hpp"

namespace zedmet::stats {

namespace detail {

// Modified Lentz evaluation of the continued fraction for I_x(a, b).
inline double beta_cont_fraction(double a, double b, double x) {
  constexpr double eps = 1e-12;
  constexpr double fpmin = 1e-300;
  constexpr int max_iter = 300;

  double qab = a + b;
  double qap = a + 1.0;
  double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < fpmin) d = fpmin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= max_iter; ++m) {
    double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < fpmin) d = fpmin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < fpmin) d = fpmin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < eps) return h;
  }
  throw Error(ErrorKind::non_convergence,
              "incomplete beta continued fraction did not converge in " +
                  std::to_string(max_iter) + " iterations");
}

}  // namespace detail

// Regularized incomplete beta I_x(a, b).
inline double reg_inc_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0))
    throw Error(ErrorKind::out_of_range, "reg_inc_beta requires a, b > 0");
  if (x < 0.0 || x > 1.0)
    throw Error(ErrorKind::out_of_range, "reg_inc_beta requires x in [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  if (a == b && x == 0.5) return 0.5;  // exact by symmetry
  double log_bt = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                  a * std::log(x) + b * std::log1p(-x);
  double bt = std::exp(log_bt);
  if (x < (a + 1.0) / (a + b + 2.0))
    return bt * detail::beta_cont_fraction(a, b, x) / a;
  return 1.0 - bt * detail::beta_cont_fraction(b, a, 1.0 - x) / b;
}

// P(T > t) for Student-t with df degrees of freedom.
inline double student_t_sf(double t, int df) {
  if (df < 1)
    throw Error(ErrorKind::out_of_range, "student_t_sf requires df >= 1");
  double d = static_cast<double>(df);
  double x = d / (d + t * t);
  double tail = 0.5 * reg_inc_beta(d / 2.0, 0.5, x);
  return t >= 0.0 ? tail : 1.0 - tail;
}

// P(X > f) for an F distribution with (d1, d2) degrees of freedom.
inline double f_sf(double f, int d1, int d2) {
  if (d1 < 1 || d2 < 1)
    throw Error(ErrorKind::out_of_range, "f_sf requires d1, d2 >= 1");
  if (f <= 0.0) return 1.0;
  double n1 = static_cast<double>(d1);
  double n2 = static_cast<double>(d2);
  double x = n2 / (n2 + n1 * f);
  return reg_inc_beta(n2 / 2.0, n1 / 2.0, x);
}

// P(Z > z) for the standard normal.
inline double normal_sf(double z) {
  return 0.5 * std::erfc(z / std::sqrt(2.0));
}

}  // namespace zedmet::stats
