#pragma once

// Check-Threshold: do two 1-D laws admit a common threshold consistent with
// the given upper-tail masses? Builds one confidence interval per side from
// empirical quantiles and accepts when the intervals intersect.

#include <algorithm>
#include <cmath>
#include <vector>

#include "htester/budgets.hpp"
#include "htester/estimate.hpp"
#include "htester/projection.hpp"
#include "htester/verdict.hpp"

namespace htester {

struct ThresholdInterval {
  double lo = -kInf;  // max{z : #{x >= z} >= m (v + 2 eps/3)}
  double hi = kInf;   // min{z : #{x >= z} <= m (v - 2 eps/3)}
};

inline ThresholdInterval threshold_interval(std::vector<double> samples,
                                            double v, double eps) {
  std::sort(samples.begin(), samples.end());
  ThresholdInterval iv;
  // v + 2 eps/3 > 0 for v in [0,1], so the only sentinel here is -inf
  // (requirement above the whole sample).
  iv.lo = estimate_threshold(samples, v + 2.0 * eps / 3.0);
  // Smallest sample z with #{x >= z} <= m (v - 2 eps/3); +inf when none.
  const double c = double(samples.size()) * (v - 2.0 * eps / 3.0);
  iv.hi = kInf;
  const auto m = std::int64_t(samples.size());
  // count(z_j) = m - j in ascending 0-based order; need m - j <= c.
  const double j_min_real = double(m) - c;
  std::int64_t j = std::int64_t(std::ceil(j_min_real - 1e-12));
  if (j < 0) j = 0;
  if (j <= m - 1) iv.hi = samples[std::size_t(j)];
  return iv;
}

struct ThresholdCheck {
  bool accept = false;
  ThresholdInterval iv1, iv2;
  double common = 0.0;  // a point of the intersection when accepting
};

inline ThresholdCheck check_threshold_on(std::vector<double> z1,
                                         std::vector<double> z2, double v1,
                                         double v2, double eps) {
  ThresholdCheck out;
  out.iv1 = threshold_interval(std::move(z1), v1, eps);
  out.iv2 = threshold_interval(std::move(z2), v2, eps);
  const double lo = std::max(out.iv1.lo, out.iv2.lo);
  const double hi = std::min(out.iv1.hi, out.iv2.hi);
  out.accept = lo <= hi;
  if (out.accept) {
    if (std::isinf(lo) && std::isinf(hi)) {
      out.common = 0.0;
    } else if (std::isinf(lo)) {
      out.common = hi;
    } else if (std::isinf(hi)) {
      out.common = lo;
    } else {
      out.common = 0.5 * (lo + hi);
    }
  }
  return out;
}

// Standalone operation: draws ceil((9/(2 eps^2)) ln(8/delta)) samples from
// each projection.
inline TesterVerdict check_threshold(const Projection1D& d1,
                                     const Projection1D& d2, double v1,
                                     double v2, double eps, double delta,
                                     RngStream& rng) {
  const std::uint64_t m = budgets::check_threshold_samples(eps, delta);
  std::vector<double> z1(m), z2(m);
  for (auto& z : z1) z = d1.sample(rng);
  for (auto& z : z2) z = d2.sample(rng);
  const ThresholdCheck c = check_threshold_on(std::move(z1), std::move(z2),
                                              v1, v2, eps);
  nlohmann::json diag{{"a1", c.iv1.lo}, {"b1", c.iv1.hi},
                      {"a2", c.iv2.lo}, {"b2", c.iv2.hi},
                      {"common", c.common}, {"m", m}};
  if (c.accept) return make_accept(2 * m, std::move(diag));
  return make_reject("check-threshold", 2 * m, std::move(diag));
}

}  // namespace htester
