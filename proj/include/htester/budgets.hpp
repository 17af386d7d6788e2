#pragma once

// Every sample budget used by the testers, in one place. The unit tests
// assert that reported sample counts equal these formulas exactly.
//
// Estimator budgets follow the stated formulas (Hoeffding for means and
// quantiles). The inner-product budgets invert the variance bound
// Var <= a/m + n/m^2 directly (the simplified 2n/m^2 form only covers the
// m < n regime, which bench-scale runs are far outside of).

#include <cmath>
#include <cstdint>

#include "htester/estimate.hpp"
#include "htester/tester_config.hpp"

namespace htester::budgets {

// Find-Pivot at accuracy eps_fp: m = ceil((1/eps_fp) ln(2/delta)).
inline std::uint64_t find_pivot_samples(double eps_fp, double delta) {
  return std::uint64_t(std::ceil(std::log(2.0 / delta) / eps_fp));
}

// Check-Threshold draws per distribution: four quantile estimations at
// accuracy eps/3 and confidence delta/4.
inline std::uint64_t check_threshold_samples(double eps, double delta) {
  return std::uint64_t(
      std::ceil(4.5 / (eps * eps) * std::log(8.0 / delta)));
}

struct SimpleTesterBudgets {
  double eps1_cubed = 0.0;  // per-estimate accuracy
  double eps3_cubed = 0.0;  // accept gate
  std::uint64_t m_mean = 0;  // mean prefix
  std::uint64_t m_t = 0;     // quantile prefix
  std::uint64_t q = 0;       // 1-D norm set size (two sets)
  std::uint64_t m_norm = 0;  // n-dim norm set size (two sets)
  std::uint64_t ehn_offset = 0;  // the 1-D sets start past mean/quantile data
  std::uint64_t total = 0;   // prefix length required of a region
};

inline SimpleTesterBudgets simple_tester_budgets(int n, double eps,
                                                 double delta, double C,
                                                 const TesterConfig& cfg) {
  SimpleTesterBudgets b;
  const double e3 = eps * eps * eps;
  b.eps1_cubed = cfg.K1 * C * C * e3;
  b.eps3_cubed = cfg.K3 * C * C * e3;
  b.m_mean = budget::mean_samples(b.eps1_cubed, delta / 3.0);
  b.m_t = budget::threshold_samples(0.5 * b.eps1_cubed, delta / 3.0);
  b.q = budget::gaussian_gap(b.eps1_cubed, delta / 6.0, n, 2.0);
  b.m_norm = budget::gaussian_gap(b.eps1_cubed, delta / 3.0, n, 2.0);
  b.ehn_offset = std::max(b.m_mean, b.m_t);
  b.total = std::max(2 * b.m_norm, b.ehn_offset + 2 * b.q);
  return b;
}

struct ConsistencyBudgets {
  double eps1 = 0.0;    // alignment accuracy scale: (C/sqrt(12)) eps
  double gate_p = 0.0;  // coarse inner-product gate
  std::uint64_t m_mean = 0;
  std::uint64_t m_cc = 0;  // norm/IP set size (two sets per region)
  std::uint64_t m_ct = 0;  // threshold-check draws per region
  std::uint64_t total = 0;
};

inline ConsistencyBudgets consistency_budgets(int n, double eps, double delta,
                                              double C,
                                              const TesterConfig& cfg) {
  ConsistencyBudgets b;
  b.eps1 = C / std::sqrt(12.0) * eps;
  b.gate_p = cfg.cc_gate_scale * (C * C / 6.0) * eps * eps;
  b.m_mean = budget::mean_samples(eps / 3.0, delta / 6.0);
  b.m_cc = budget::gaussian_gap(0.5 * b.gate_p, cfg.cc_gate_delta, n, 2.0);
  b.m_ct = check_threshold_samples(eps, delta / 6.0);
  b.total = std::max({2 * b.m_cc, b.m_mean, b.m_ct});
  return b;
}

struct RiBudgets {
  int k = 0;         // ring count
  int K = 0;         // union-bound divisor: C(k,2) + k + 5
  double delta_sub = 0.0;
  std::uint64_t m_fp = 0;       // pivot samples
  std::uint64_t m_req = 0;      // per-region prefix requirement
  std::uint64_t M = 0;          // bulk draw
  std::uint64_t m_v0 = 0;       // central/tail mean prefix
  std::uint64_t m_ct0 = 0;      // central/tail threshold-check prefix
  std::uint64_t m_central = 0;  // the m_0 gate for the central section
  std::uint64_t m_bal = 0;      // balance-check mean prefix
  SimpleTesterBudgets st;
  ConsistencyBudgets cc;
};

inline int ring_count(int n, double eps) {
  return int(std::ceil(std::log2(2.0 * double(n) / (std::sqrt(2.0 * kPi) * eps))));
}

inline RiBudgets ri_budgets(int n, double eps, double delta,
                            const TesterConfig& cfg) {
  RiBudgets b;
  b.k = cfg.ring_count_override > 0 ? cfg.ring_count_override
                                    : ring_count(n, eps);
  b.K = b.k * (b.k - 1) / 2 + b.k + 5;
  b.delta_sub = delta / double(b.K);
  b.m_fp = find_pivot_samples(eps * eps, b.delta_sub);
  b.st = simple_tester_budgets(n, eps, b.delta_sub, cfg.C, cfg);
  b.cc = consistency_budgets(n, eps, b.delta_sub, cfg.C, cfg);
  b.m_bal = budget::mean_samples(eps / 2.0, b.delta_sub);
  b.m_req = std::max({b.st.total, b.cc.total, b.m_bal});
  b.M = std::uint64_t(std::ceil(2.0 * double(b.k) / eps)) * b.m_req;
  b.m_v0 = budget::mean_samples(2.0 * eps / 3.0, b.delta_sub);
  b.m_ct0 = check_threshold_samples(eps, b.delta_sub);
  b.m_central = std::max(b.m_v0, b.m_ct0);
  return b;
}

// Total labeled samples an RI-Tester run consumes (pivot + bulk draw).
inline std::uint64_t ri_total_samples(int n, double eps, double delta,
                                      const TesterConfig& cfg) {
  const RiBudgets b = ri_budgets(n, eps, delta, cfg);
  return b.m_fp + b.M;
}

}  // namespace htester::budgets
