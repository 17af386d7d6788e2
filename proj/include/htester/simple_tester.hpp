#pragma once

// Simple-Tester: the center-of-mass tester for bounded RI distributions.
// Compares the squared center-norm of the function against the squared
// center-norm of a halfspace with the same mean; accepts when the gap falls
// below eps3^3 = K3 C^2 eps^3 or when the function is nearly constant.
//
// The core runs on a recorded sample prefix so that RI-Tester can simulate
// it on ring data; the standalone operation materializes its own prefix.

#include <cmath>

#include "htester/budgets.hpp"
#include "htester/estimate.hpp"
#include "htester/rings.hpp"
#include "htester/tester_config.hpp"
#include "htester/verdict.hpp"

namespace htester {

struct SimpleTesterOutcome {
  bool accept = false;
  std::string reason;
  double v_tilde = 0.0;   // mean estimate
  double c2 = 0.0;        // squared center-norm of f
  double p2 = 0.0;        // squared center-norm of the matched halfspace
  double threshold = 0.0; // the empirical quantile inside the norm estimate
  double gate = 0.0;      // eps3^3
  nlohmann::json to_json() const {
    return nlohmann::json{{"accept", accept}, {"reason", reason},
                          {"v_tilde", v_tilde}, {"c2", c2},
                          {"p2", p2},         {"threshold", threshold},
                          {"gate", gate}};
  }
};

// `lambda` rescales the recorded samples to the R = sqrt(n) convention.
inline SimpleTesterOutcome simple_tester_core(
    const RegionStore& s, double lambda, double eps,
    const budgets::SimpleTesterBudgets& b) {
  SimpleTesterOutcome out;
  out.gate = b.eps3_cubed;

  out.v_tilde = s.mean_label(b.m_mean);

  // Estimate-Halfspace-Norm on the 1-D projection: empirical quantile from
  // one segment, two independent 1-D inner-product sets past it.
  std::vector<double> zq = s.x1_prefix(b.m_t, lambda);
  std::sort(zq.begin(), zq.end());
  const double t = estimate_threshold(zq, 0.5 * (1.0 - out.v_tilde));
  out.threshold = t;
  double s1 = 0.0, s2 = 0.0;
  for (std::uint64_t i = 0; i < b.q; ++i) {
    const double z1 = lambda * s.x1(b.ehn_offset + i);
    const double z2 = lambda * s.x1(b.ehn_offset + b.q + i);
    s1 += z1 * double(sign_pm1(z1 - t));
    s2 += z2 * double(sign_pm1(z2 - t));
  }
  out.p2 = (s1 / double(b.q)) * (s2 / double(b.q));

  out.c2 = lambda * lambda * s.split_norm_product(b.m_norm);

  if (out.p2 - out.c2 < b.eps3_cubed) {
    out.accept = true;
    out.reason = "norm-gap";
  } else if (std::fabs(out.v_tilde) >= 1.0 - eps) {
    out.accept = true;
    out.reason = "near-constant";
  } else {
    out.accept = false;
    out.reason = "simple-tester";
  }
  return out;
}

// Standalone operation on a bounded RI distribution; rescales to R = sqrt(n)
// internally and draws exactly the layout prefix.
inline TesterVerdict simple_tester(const RIDistribution& dist,
                                   const FunctionOracle& f, double eps,
                                   double delta, const TesterConfig& cfg,
                                   RngStream& rng) {
  cfg.validate();
  const BoundedParams bp = bounded_params(dist);
  const auto b =
      budgets::simple_tester_budgets(dist.dim, eps, delta, bp.C, cfg);
  const double lambda = std::sqrt(double(dist.dim)) / bp.R;

  RegionStore store(dist.dim, b.total, {b.m_norm, 2 * b.m_norm});
  Vec x;
  for (std::uint64_t i = 0; i < b.total; ++i) {
    sample_ri(dist, rng, x);
    const int label = f(x);
    store.add(x, norm(x), label);
  }
  const SimpleTesterOutcome o = simple_tester_core(store, lambda, eps, b);
  nlohmann::json diag = o.to_json();
  diag["C"] = bp.C;
  diag["R"] = bp.R;
  diag["samples"] = b.total;
  if (o.accept) return make_accept(b.total, std::move(diag));
  return make_reject("simple-tester", b.total, std::move(diag));
}

inline TesterVerdict simple_tester(const RIDistribution& dist,
                                   const FunctionOracle& f,
                                   const TesterConfig& cfg, RngStream& rng) {
  return simple_tester(dist, f, cfg.eps, cfg.delta, cfg, rng);
}

}  // namespace htester
