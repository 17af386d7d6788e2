#pragma once

// Check-Consistency: are two near-halfspaces on two bounded RI distributions
// the same halfspace? Gates on the cross inner product of the centers of
// mass (coarse positivity, then the normalized alignment ratio), followed by
// Check-Threshold on the projections. Both distributions are brought to
// geometric-mean scale first, matching the tau1 * tau2 = 1 hypothesis.

#include <cmath>
#include <map>

#include "htester/budgets.hpp"
#include "htester/check_threshold.hpp"
#include "htester/rings.hpp"
#include "htester/simple_tester.hpp"

namespace htester {

struct ConsistencyOutcome {
  bool accept = false;
  std::string reason;
  double v1 = 0.0, v2 = 0.0;
  double c1sq = 0.0, c2sq = 0.0, p = 0.0;
  double ratio = 0.0, ratio_slack = 0.0;
  double gate_p = 0.0;
  bool norm_gates_ran = false;
  double common_threshold = 0.0;  // in the callers' raw units
  nlohmann::json to_json() const {
    return nlohmann::json{{"accept", accept}, {"reason", reason},
                          {"v1", v1},         {"v2", v2},
                          {"c1sq", c1sq},     {"c2sq", c2sq},
                          {"p", p},           {"ratio", ratio},
                          {"ratio_slack", ratio_slack},
                          {"gate_p", gate_p},
                          {"norm_gates_ran", norm_gates_ran},
                          {"common_threshold", common_threshold}};
  }
};

inline ConsistencyOutcome check_consistency_core(
    const RegionStore& s1, const RegionStore& s2, double eps,
    const budgets::ConsistencyBudgets& b, const TesterConfig& cfg) {
  ConsistencyOutcome out;
  out.gate_p = b.gate_p;

  // Joint rescale to geometric-mean scale: tau1' * tau2' = 1.
  const double tau1 = s1.mean_x1_squared(b.m_cc);
  const double tau2 = s2.mean_x1_squared(b.m_cc);
  const double gamma =
      (tau1 > 0.0 && tau2 > 0.0) ? std::pow(tau1 * tau2, -0.25) : 1.0;
  const double g2 = gamma * gamma;
  const int n = s1.dim();

  out.v1 = s1.mean_label(b.m_mean);
  out.v2 = s2.mean_label(b.m_mean);

  if (std::fabs(out.v1) < 1.0 - eps && std::fabs(out.v2) < 1.0 - eps) {
    out.norm_gates_ran = true;
    out.c1sq = g2 * s1.split_norm_product(b.m_cc);
    out.c2sq = g2 * s2.split_norm_product(b.m_cc);
    out.p = g2 * cross_ip(s1, s2, b.m_cc);

    if (out.p < b.gate_p) {
      out.reason = "consistency-ip";
      return out;
    }
    const double denom = out.c1sq * out.c2sq;
    if (denom <= 0.0) {
      out.reason = "consistency-negative-radicand";
      return out;
    }
    out.ratio = out.p / std::sqrt(denom);

    // Plug-in standard error of the ratio; the accept slack is the paper's
    // 2 eps1^2 widened to z_ratio standard errors when the noise dominates.
    const double m = double(b.m_cc);
    const double t1s = g2 * tau1, t2s = g2 * tau2;
    const double c1 = std::max(out.c1sq, 1e-12), c2 = std::max(out.c2sq, 1e-12);
    const double var_p =
        (t2s * c1 + t1s * c2) / m + double(n) * t1s * t2s / (m * m);
    const double var_c1 =
        2.0 * t1s * c1 / m + double(n) * t1s * t1s / (m * m);
    const double var_c2 =
        2.0 * t2s * c2 / m + double(n) * t2s * t2s / (m * m);
    const double rel2 = var_p / (c1 * c2) +
                        0.25 * var_c1 / (c1 * c1) +
                        0.25 * var_c2 / (c2 * c2);
    out.ratio_slack =
        std::max(2.0 * b.eps1 * b.eps1, cfg.z_ratio * std::sqrt(rel2));
    if (out.ratio < 1.0 - out.ratio_slack) {
      out.reason = "consistency-alignment";
      return out;
    }
  }

  const ThresholdCheck ct = check_threshold_on(
      s1.x1_prefix(b.m_ct, gamma), s2.x1_prefix(b.m_ct, gamma),
      0.5 * (out.v1 + 1.0), 0.5 * (out.v2 + 1.0), eps);
  if (!ct.accept) {
    out.reason = "consistency-threshold";
    return out;
  }
  out.accept = true;
  out.reason = "accept";
  out.common_threshold = std::isfinite(ct.common) ? ct.common / gamma : 0.0;
  return out;
}

// Standalone operation: draws its own prefixes from the two distributions.
inline TesterVerdict check_consistency(const RIDistribution& d1,
                                       const RIDistribution& d2,
                                       const FunctionOracle& f1,
                                       const FunctionOracle& f2, double eps,
                                       double delta, const TesterConfig& cfg,
                                       RngStream& rng) {
  cfg.validate();
  if (d1.dim != d2.dim) {
    throw std::invalid_argument("check_consistency: dimension mismatch");
  }
  const double C = std::min(bounded_params(d1).C, bounded_params(d2).C);
  const auto b = budgets::consistency_budgets(d1.dim, eps, delta, C, cfg);

  const auto fill = [&](const RIDistribution& d, const FunctionOracle& f) {
    RegionStore s(d.dim, b.total, {b.m_cc, 2 * b.m_cc});
    Vec x;
    for (std::uint64_t i = 0; i < b.total; ++i) {
      sample_ri(d, rng, x);
      s.add(x, norm(x), f(x));
    }
    return s;
  };
  const RegionStore s1 = fill(d1, f1);
  const RegionStore s2 = fill(d2, f2);
  const ConsistencyOutcome o = check_consistency_core(s1, s2, eps, b, cfg);
  nlohmann::json diag = o.to_json();
  diag["samples_per_dist"] = b.total;
  if (o.accept) return make_accept(2 * b.total, std::move(diag));
  return make_reject(o.reason, 2 * b.total, std::move(diag));
}

// The consistency-group interval argument: each region i gets the interval
// spanned by its recorded pairwise thresholds; the intervals pairwise
// intersect by construction, so on the line they share a common point.
struct GroupThreshold {
  int i = 0, j = 0;
  double t = 0.0;
};

struct GroupCheck {
  bool nonempty = false;
  double lo = 0.0, hi = 0.0;
  double common = 0.0;
};

inline GroupCheck consistency_group(const std::vector<GroupThreshold>& data) {
  GroupCheck out;
  if (data.empty()) {  // a single region is trivially consistent
    out.nonempty = true;
    return out;
  }
  std::map<int, std::pair<double, double>> intervals;
  for (const auto& e : data) {
    for (int id : {e.i, e.j}) {
      auto it = intervals.find(id);
      if (it == intervals.end()) {
        intervals[id] = {e.t, e.t};
      } else {
        it->second.first = std::min(it->second.first, e.t);
        it->second.second = std::max(it->second.second, e.t);
      }
    }
  }
  double lo = -kInf, hi = kInf;
  for (const auto& [id, iv] : intervals) {
    lo = std::max(lo, iv.first);
    hi = std::min(hi, iv.second);
  }
  out.lo = lo;
  out.hi = hi;
  out.nonempty = lo <= hi;
  out.common = out.nonempty ? 0.5 * (lo + hi) : 0.0;
  return out;
}

}  // namespace htester
