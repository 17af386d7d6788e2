#pragma once

// Sampling subroutines: mean estimation (Hoeffding budget), the pairwise
// inner-product estimator for centers of mass with median boosting, empirical
// quantile thresholds, and the halfspace-norm estimator.
//
// The m^2 pairing sum_{i,j} f(x_i) g(y_j) <x_i, y_j> collapses to
// <sum_i f(x_i) x_i, sum_j g(y_j) y_j>, an O(mn) accumulation; the naive
// double loop is kept in the test suite as the checking oracle.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "htester/linalg.hpp"
#include "htester/oracle.hpp"
#include "htester/projection.hpp"
#include "htester/ri_distribution.hpp"
#include "htester/special.hpp"

namespace htester {

struct EstimateParams {
  double eps = 0.1;
  double delta = 0.1;
  std::uint64_t m = 0;  // explicit budget; 0 means "derive from formulas"
  double L = 8.0;       // universal constant in the inner-product budgets
  int M = 0;            // boosting repetitions; 0 means "derive from delta"
};

struct Estimate {
  double value = 0.0;
  std::uint64_t samples_used = 0;
  bool boosted = false;
};

namespace budget {

// Estimate-Mean: m = ceil((2/eps^2) ln(2/delta)).
inline std::uint64_t mean_samples(double eps, double delta) {
  return std::uint64_t(
      std::ceil(2.0 / (eps * eps) * std::log(2.0 / delta)));
}

// Quantile estimation: m = ceil((1/(2 eps^2)) ln(2/delta)).
inline std::uint64_t threshold_samples(double eps, double delta) {
  return std::uint64_t(
      std::ceil(0.5 / (eps * eps) * std::log(2.0 / delta)));
}

// Additive inner-product budget m = ceil(L sqrt(n)/eps^2 * ln(1/delta)).
inline std::uint64_t ip_additive(int n, double eps, double delta, double L = 8.0) {
  const double lg = std::max(1.0, std::log(1.0 / delta));
  return std::uint64_t(std::ceil(L * std::sqrt(double(n)) / (eps * eps) * lg));
}

// Multiplicative regime (p >= eta): m = ceil(L sqrt(n)/(eps^2 eta^2) ln(1/delta)).
inline std::uint64_t ip_multiplicative(int n, double eps, double eta,
                                       double delta, double L = 8.0) {
  const double lg = std::max(1.0, std::log(1.0 / delta));
  return std::uint64_t(std::ceil(L * std::sqrt(double(n)) /
                                 (eps * eps * eta * eta) * lg));
}

// Boosting repetitions: ceil(8 ln(1/delta)) rounded up to odd, at least 1.
inline int boost_rounds(double delta) {
  const double raw = 8.0 * std::log(1.0 / delta);
  int M = raw <= 1.0 ? 1 : int(std::ceil(raw));
  if (M % 2 == 0) ++M;
  return M;
}

// Smallest m with a/m + b*n/m^2 <= gap^2 / (2 ln(2/delta)): the variance-
// accurate budget used by the testers (the simplified 2n/m^2 bound only
// covers the m < n regime).
inline std::uint64_t gaussian_gap(double gap, double delta, int n,
                                  double a = 2.0, double b = 1.0) {
  const double V = gap * gap / (2.0 * std::log(2.0 / delta));
  const double m = (a + std::sqrt(a * a + 4.0 * V * b * double(n))) / (2.0 * V);
  return std::uint64_t(std::ceil(m));
}

}  // namespace budget

// |value - E f| < eps with probability >= 1 - delta; exactly
// ceil((2/eps^2) ln(2/delta)) draws.
inline Estimate estimate_mean(const FunctionOracle& f, const RIDistribution& dist,
                              double eps, double delta, RngStream& rng) {
  if (!(eps > 0.0 && eps < 1.0) || !(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("estimate_mean: eps, delta in (0,1)");
  }
  const std::uint64_t m = budget::mean_samples(eps, delta);
  Vec x;
  double sum = 0.0;
  for (std::uint64_t i = 0; i < m; ++i) {
    sample_ri(dist, rng, x);
    sum += f(x);
  }
  return {sum / double(m), m, false};
}

// Unbiased estimate of p = <E[x f(x)], E[y g(y)]> from m samples of each
// distribution. Draw order: all x's, then all y's.
inline Estimate estimate_ip(const RIDistribution& dist1,
                            const RIDistribution& dist2,
                            const FunctionOracle& f, const FunctionOracle& g,
                            std::uint64_t m, RngStream& rng) {
  if (m < 1) throw std::invalid_argument("estimate_ip: m >= 1");
  if (dist1.dim != dist2.dim) {
    throw std::invalid_argument("estimate_ip: dimension mismatch");
  }
  const auto n = std::size_t(dist1.dim);
  Vec sx(n, 0.0), sy(n, 0.0), x;
  for (std::uint64_t i = 0; i < m; ++i) {
    sample_ri(dist1, rng, x);
    axpy(sx, double(f(x)), x);
  }
  for (std::uint64_t j = 0; j < m; ++j) {
    sample_ri(dist2, rng, x);
    axpy(sy, double(g(x)), x);
  }
  return {dot(sx, sy) / (double(m) * double(m)), 2 * m, false};
}

// Median of M independent rounds splitting the total budget m; matches a
// single estimate_ip run when delta is large enough that M = 1.
inline Estimate estimate_ip_boosted(const RIDistribution& dist1,
                                    const RIDistribution& dist2,
                                    const FunctionOracle& f,
                                    const FunctionOracle& g, std::uint64_t m,
                                    double delta, RngStream& rng) {
  const int M = budget::boost_rounds(delta);
  const std::uint64_t per_round =
      std::max<std::uint64_t>(1, (m + std::uint64_t(M) - 1) / std::uint64_t(M));
  std::vector<double> values;
  values.reserve(std::size_t(M));
  std::uint64_t used = 0;
  for (int r = 0; r < M; ++r) {
    const Estimate e = estimate_ip(dist1, dist2, f, g, per_round, rng);
    values.push_back(e.value);
    used += e.samples_used;
  }
  std::nth_element(values.begin(), values.begin() + values.size() / 2,
                   values.end());
  return {values[values.size() / 2], used, M > 1};
}

// Squared center-norm estimate: Estimate-IP of the function against itself
// with two independent sample sets. May be negative for small m; callers
// compare differences rather than taking square roots of raw values.
inline Estimate estimate_norm(const RIDistribution& dist, const FunctionOracle& f,
                              std::uint64_t m, RngStream& rng) {
  return estimate_ip(dist, dist, f, f, m, rng);
}

// max{z : #{x in X : x >= z} >= m*v} over sample values; +inf when every z
// qualifies (v <= 0), -inf when none does (v > 1).
inline double estimate_threshold(const std::vector<double>& sorted_samples,
                                 double v) {
  if (sorted_samples.empty()) {
    throw std::invalid_argument("estimate_threshold: empty sample set");
  }
  const std::uint64_t m = sorted_samples.size();
  const double need = double(m) * v;
  if (need <= 0.0) return kInf;
  const std::uint64_t k = std::uint64_t(std::ceil(need));  // required count
  if (k > m) return -kInf;
  return sorted_samples[std::size_t(m - k)];  // ascending order
}

struct HalfspaceNormEstimate {
  Estimate estimate;         // squared center-norm
  double threshold = 0.0;    // the empirical quantile t~
  std::uint64_t threshold_samples = 0;
  std::uint64_t norm_samples = 0;  // per set; two sets are drawn
};

// Estimates ||E[x h(x)]||^2 for the halfspace h with mean v_tilde over an
// isotropic distribution: empirical quantile for the threshold, then the 1-D
// inner-product estimator on the projection.
inline HalfspaceNormEstimate estimate_halfspace_norm(const RIDistribution& dist,
                                                     double v_tilde, double eps,
                                                     double delta,
                                                     RngStream& rng,
                                                     double L = 8.0,
                                                     std::uint64_t m_override = 0,
                                                     std::uint64_t q_override = 0) {
  if (std::fabs(v_tilde) > 1.0) {
    throw std::invalid_argument("estimate_halfspace_norm: |v_tilde| <= 1");
  }
  // m = ceil(1/(2 (eps/2)^2) ln(4/delta)) = ceil(2/eps^2 ln(4/delta))
  const std::uint64_t m =
      m_override ? m_override
                 : std::uint64_t(std::ceil(2.0 / (eps * eps) *
                                           std::log(4.0 / delta)));
  const std::uint64_t q =
      q_override ? q_override
                 : std::uint64_t(std::ceil(L * std::sqrt(double(dist.dim)) /
                                           (eps * eps / 4.0) *
                                           std::log(2.0 / delta)));
  const Projection1D proj = Projection1D::analytic(dist);
  std::vector<double> zs(m);
  for (auto& z : zs) z = proj.sample(rng);
  std::sort(zs.begin(), zs.end());
  const double t = estimate_threshold(zs, 0.5 * (1.0 - v_tilde));

  double s1 = 0.0, s2 = 0.0;
  for (std::uint64_t i = 0; i < q; ++i) {
    const double z = proj.sample(rng);
    s1 += z * double(sign_pm1(z - t));
  }
  for (std::uint64_t i = 0; i < q; ++i) {
    const double z = proj.sample(rng);
    s2 += z * double(sign_pm1(z - t));
  }
  HalfspaceNormEstimate out;
  out.threshold = t;
  out.threshold_samples = m;
  out.norm_samples = q;
  out.estimate.value = (s1 / double(q)) * (s2 / double(q));
  out.estimate.samples_used = m + 2 * q;
  return out;
}

}  // namespace htester
