// correlation.hpp - Pearson, Spearman and Kendall tau-b with two-tailed
// p-values, and the association bins.
#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "zedmet/common/error.hpp"
#include "zedmet/stats/special.hpp"

namespace zedmet::stats {

enum class TestKind { pearson, spearman, kendall };

inline const char* test_name(TestKind t) {
  switch (t) {
    case TestKind::pearson: return "pearson";
    case TestKind::spearman: return "spearman";
    default: return "kendall";
  }
}

struct CorrelationResult {
  double r = 0.0;
  double p = 1.0;
  int n = 0;
  TestKind test = TestKind::pearson;
};

enum class AssociationClass { strong, moderate, weak };

inline const char* association_name(AssociationClass a) {
  switch (a) {
    case AssociationClass::strong: return "strong";
    case AssociationClass::moderate: return "moderate";
    default: return "weak";
  }
}

// |r| in [0.8, 1.0] strong, [0.5, 0.8) moderate, [0.0, 0.5) weak.
inline AssociationClass classify_association(double r) {
  double a = std::fabs(r);
  if (a > 1.0)
    throw Error(ErrorKind::out_of_range,
                "correlation coefficient out of [-1, 1]");
  if (a >= 0.8) return AssociationClass::strong;
  if (a >= 0.5) return AssociationClass::moderate;
  return AssociationClass::weak;
}

namespace detail {

inline void check_input(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size())
    throw Error(ErrorKind::length_mismatch,
                "sample length mismatch: " + std::to_string(x.size()) +
                    " vs " + std::to_string(y.size()));
  if (x.size() < 3)
    throw Error(ErrorKind::too_few_samples,
                "need at least 3 samples, got " + std::to_string(x.size()));
  auto constant = [](std::span<const double> v) {
    for (double a : v)
      if (a != v[0]) return false;
    return true;
  };
  if (constant(x) || constant(y))
    throw Error(ErrorKind::constant_input, "constant sample has no variance");
}

inline double pearson_r(std::span<const double> x, std::span<const double> y) {
  std::size_t n = x.size();
  double mx = std::accumulate(x.begin(), x.end(), 0.0) / double(n);
  double my = std::accumulate(y.begin(), y.end(), 0.0) / double(n);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double dx = x[i] - mx;
    double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  double r = sxy / std::sqrt(sxx * syy);
  return std::clamp(r, -1.0, 1.0);
}

// Two-tailed p for r under the t transform with n-2 degrees of freedom.
inline double p_from_r(double r, std::size_t n) {
  double denom = 1.0 - r * r;
  if (denom <= 0.0) return 0.0;
  double t = r * std::sqrt((double(n) - 2.0) / denom);
  double p = 2.0 * student_t_sf(std::fabs(t), static_cast<int>(n) - 2);
  return std::clamp(p, 0.0, 1.0);
}

// Midranks: ties share the average of the ranks they occupy.
inline std::vector<double> midranks(std::span<const double> v) {
  std::size_t n = v.size();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && v[idx[j + 1]] == v[idx[i]]) ++j;
    double rank = (double(i) + double(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[idx[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

// Counts pairs i < j with v[i] > v[j] by merge sort.
inline long long inversion_count(std::vector<double>& v) {
  std::size_t n = v.size();
  if (n < 2) return 0;
  std::vector<double> buf(n);
  long long count = 0;
  for (std::size_t width = 1; width < n; width *= 2) {
    for (std::size_t lo = 0; lo < n; lo += 2 * width) {
      std::size_t mid = std::min(lo + width, n);
      std::size_t hi = std::min(lo + 2 * width, n);
      std::size_t i = lo, j = mid, k = lo;
      while (i < mid && j < hi) {
        if (v[j] < v[i]) {
          count += static_cast<long long>(mid - i);
          buf[k++] = v[j++];
        } else {
          buf[k++] = v[i++];
        }
      }
      while (i < mid) buf[k++] = v[i++];
      while (j < hi) buf[k++] = v[j++];
      std::copy(buf.begin() + long(lo), buf.begin() + long(hi),
                v.begin() + long(lo));
    }
  }
  return count;
}

struct TieSums {
  long long pairs = 0;    // sum t(t-1)/2
  double weighted = 0.0;  // sum t(t-1)(2t+5)
  double triples = 0.0;   // sum t(t-1)(t-2)
  double doubles = 0.0;   // sum t(t-1)
};

inline TieSums tie_sums(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  TieSums s;
  std::size_t i = 0;
  while (i < v.size()) {
    std::size_t j = i;
    while (j + 1 < v.size() && v[j + 1] == v[i]) ++j;
    double t = double(j - i + 1);
    s.pairs += static_cast<long long>(t * (t - 1) / 2.0);
    s.weighted += t * (t - 1) * (2 * t + 5);
    s.triples += t * (t - 1) * (t - 2);
    s.doubles += t * (t - 1);
    i = j + 1;
  }
  return s;
}

}  // namespace detail

// Sample linear correlation; p from t = r sqrt((n-2)/(1-r^2)).
inline CorrelationResult pearson(std::span<const double> x,
                                 std::span<const double> y) {
  detail::check_input(x, y);
  CorrelationResult res;
  res.test = TestKind::pearson;
  res.n = static_cast<int>(x.size());
  res.r = detail::pearson_r(x, y);
  res.p = detail::p_from_r(res.r, x.size());
  return res;
}

// Pearson on midranks; same p transform.
inline CorrelationResult spearman(std::span<const double> x,
                                  std::span<const double> y) {
  detail::check_input(x, y);
  auto rx = detail::midranks(x);
  auto ry = detail::midranks(y);
  CorrelationResult res;
  res.test = TestKind::spearman;
  res.n = static_cast<int>(x.size());
  res.r = detail::pearson_r(rx, ry);
  res.p = detail::p_from_r(res.r, x.size());
  return res;
}

// Tau-b: (C - D) / sqrt((n0 - n1)(n0 - n2)) with the usual tie terms;
// C - D is computed with a merge-sort inversion count. The p-value uses the
// tie-adjusted normal approximation without continuity correction.
inline CorrelationResult kendall(std::span<const double> x,
                                 std::span<const double> y) {
  detail::check_input(x, y);
  std::size_t n = x.size();

  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (x[a] != x[b]) return x[a] < x[b];
    return y[a] < y[b];
  });

  // joint ties (same x and y) and x ties, scanned in sorted order
  long long n3 = 0;
  {
    std::size_t i = 0;
    while (i < n) {
      std::size_t j = i;
      while (j + 1 < n && x[idx[j + 1]] == x[idx[i]] &&
             y[idx[j + 1]] == y[idx[i]])
        ++j;
      long long t = static_cast<long long>(j - i + 1);
      n3 += t * (t - 1) / 2;
      i = j + 1;
    }
  }
  detail::TieSums tx = detail::tie_sums({x.begin(), x.end()});
  detail::TieSums ty = detail::tie_sums({y.begin(), y.end()});

  std::vector<double> y_sorted(n);
  for (std::size_t i = 0; i < n; ++i) y_sorted[i] = y[idx[i]];
  long long swaps = detail::inversion_count(y_sorted);

  long long n0 = static_cast<long long>(n) * (static_cast<long long>(n) - 1) / 2;
  long long n1 = tx.pairs;
  long long n2 = ty.pairs;
  long long con_minus_dis = n0 - n1 - n2 + n3 - 2 * swaps;

  if (n0 == n1 || n0 == n2)
    throw Error(ErrorKind::constant_input, "constant sample has no variance");

  CorrelationResult res;
  res.test = TestKind::kendall;
  res.n = static_cast<int>(n);
  res.r = static_cast<double>(con_minus_dis) /
          std::sqrt(static_cast<double>(n0 - n1) *
                    static_cast<double>(n0 - n2));
  res.r = std::clamp(res.r, -1.0, 1.0);

  double dn = static_cast<double>(n);
  double v0 = dn * (dn - 1.0) * (2.0 * dn + 5.0);
  double v1 = tx.doubles * ty.doubles;
  double v2 = tx.triples * ty.triples;
  double var = (v0 - tx.weighted - ty.weighted) / 18.0 +
               v1 / (2.0 * dn * (dn - 1.0)) +
               v2 / (9.0 * dn * (dn - 1.0) * (dn - 2.0));
  if (var <= 0.0) {
    res.p = 1.0;
    return res;
  }
  double z = static_cast<double>(con_minus_dis) / std::sqrt(var);
  res.p = std::clamp(2.0 * normal_sf(std::fabs(z)), 0.0, 1.0);
  return res;
}

inline CorrelationResult correlate(TestKind test, std::span<const double> x,
                                   std::span<const double> y) {
  switch (test) {
    case TestKind::pearson: return pearson(x, y);
    case TestKind::spearman: return spearman(x, y);
    default: return kendall(x, y);
  }
}

}  // namespace zedmet::stats
