#pragma once

#include <stdexcept>

namespace htester {

// Calibration constants for the testers. The gate constants follow the
// analysis (K1 <= K3/4 is the explicit proof constraint); their values are
// fixed by the calibration sweep documented in the repo so that the
// statistical acceptance runs are reproducible at bench scale.
struct TesterConfig {
  double eps = 0.25;
  double delta = 0.2;

  double K1 = 6.0;   // estimate-accuracy constant: eps1^3 = K1 C^2 eps^3
  double K2 = 1.0;   // tolerance constant: eps2 = K2 eps^(3+eta)
  double K3 = 24.0;  // accept-gate constant: eps3^3 = K3 C^2 eps^3
  double C = 0.5;    // bounded inner fraction of the dyadic rings
  double L = 8.0;    // universal constant in inner-product budgets
  double eta = 1.0;  // tolerance exponent

  // Consistency-check calibration: the coarse inner-product gate is
  // cc_gate_scale * (C^2/6) eps^2, sized against the estimator noise at
  // detection level cc_gate_delta; the alignment-ratio slack widens to
  // z_ratio standard errors when the plug-in noise exceeds 2 eps1^2.
  double cc_gate_scale = 9.0;
  double cc_gate_delta = 0.05;
  double z_ratio = 3.5;

  int ring_count_override = 0;  // 0: k from the formula

  // Outer-region start: the ring construction ends at 2^k * pivot while the
  // soundness argument wants 2 n pivot / eps^2; MaxRule takes the larger.
  enum class TRule { MaxRule, RingRule };
  TRule t_rule = TRule::MaxRule;

  void validate() const {
    if (!(eps > 0.0 && eps < 0.5) || !(delta > 0.0 && delta < 0.5)) {
      throw std::invalid_argument("TesterConfig: eps, delta in (0, 1/2)");
    }
    if (!(K1 > 0.0 && K3 > 0.0 && K1 <= K3 / 4.0)) {
      throw std::invalid_argument("TesterConfig: need 0 < K1 <= K3/4");
    }
    if (!(C > 0.0 && C <= 1.0)) {
      throw std::invalid_argument("TesterConfig: C in (0, 1]");
    }
    if (!(K2 > 0.0) || !(L > 0.0) || !(eta > 0.0)) {
      throw std::invalid_argument("TesterConfig: positive K2, L, eta");
    }
  }
};

}  // namespace htester
