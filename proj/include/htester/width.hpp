#pragma once

// The width W(eps) of a 1-D law: the smallest half-length r such that some
// interval [theta - r, theta + r] captures probability at least eps (the
// Levy anticoncentration function, inverted). Computed by a theta grid over
// the support and bisection over r.

#include <algorithm>
#include <cmath>
#include <vector>

#include "htester/projection.hpp"

namespace htester {

struct WidthOptions {
  int theta_grid = 4096;
  double rel_tol = 1e-6;
};

inline double width(const Projection1D& proj, double eps,
                    const WidthOptions& opt = {}) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw std::invalid_argument("width: eps in (0,1)");
  }
  if (proj.largest_atom() >= eps) return 0.0;

  const double S = proj.support_radius();
  std::vector<double> thetas;
  thetas.reserve(std::size_t(opt.theta_grid) + 1);
  for (int i = 0; i <= opt.theta_grid; ++i) {
    thetas.push_back(-S + 2.0 * S * double(i) / double(opt.theta_grid));
  }

  const auto covered = [&](double r) {
    for (double th : thetas) {
      if (proj.mass_closed(th - r, th + r) >= eps) return true;
    }
    return false;
  };

  double lo = 0.0, hi = S;
  if (!covered(hi)) hi = 2.0 * S;  // off-grid asymmetries; [−S,S] always works
  while (hi - lo > opt.rel_tol * std::max(1.0, hi)) {
    const double mid = 0.5 * (lo + hi);
    if (covered(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

// Exact width of a finite discrete 1-D law (used by the verification
// oracles): two-pointer sweep over sorted atoms.
inline double width_discrete(std::vector<double> z, std::vector<double> p,
                             double eps) {
  if (z.size() != p.size() || z.empty()) {
    throw std::invalid_argument("width_discrete: bad profile");
  }
  std::vector<std::size_t> idx(z.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return z[a] < z[b]; });
  std::vector<double> zs(z.size()), ps(z.size());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    zs[i] = z[idx[i]];
    ps[i] = p[idx[i]];
  }
  // Merge duplicate atoms.
  std::vector<double> zu, pu;
  for (std::size_t i = 0; i < zs.size(); ++i) {
    if (!zu.empty() && zs[i] == zu.back()) {
      pu.back() += ps[i];
    } else {
      zu.push_back(zs[i]);
      pu.push_back(ps[i]);
    }
  }
  for (double w : pu) {
    if (w >= eps) return 0.0;
  }
  double best = kInf;
  double mass = 0.0;
  std::size_t i = 0;
  for (std::size_t j = 0; j < zu.size(); ++j) {
    mass += pu[j];
    while (mass - pu[i] >= eps && i < j) {
      mass -= pu[i];
      ++i;
    }
    if (mass >= eps) best = std::min(best, 0.5 * (zu[j] - zu[i]));
  }
  return best;
}

}  // namespace htester
