#pragma once

#include <cmath>
#include <stdexcept>

#include "htester/linalg.hpp"

namespace htester {

// h(x) = sign(<w, x> - t) with ||w|| = 1 and sign(0) := +1.
struct HalfspaceSpec {
  Vec normal;
  double threshold = 0.0;

  HalfspaceSpec(Vec w, double t) : normal(std::move(w)), threshold(t) {
    if (std::fabs(norm(normal) - 1.0) > 1e-12) {
      throw std::invalid_argument("HalfspaceSpec: normal must be unit");
    }
  }

  static HalfspaceSpec from_direction(Vec w, double t) {
    return HalfspaceSpec(normalized(std::move(w)), t);
  }

  int dim() const { return int(normal.size()); }

  int eval(std::span<const double> x) const {
    return sign_pm1(dot(normal, x) - threshold);
  }
};

inline double halfspace_angle(const HalfspaceSpec& a, const HalfspaceSpec& b) {
  return angle_between(a.normal, b.normal);
}

}  // namespace htester
