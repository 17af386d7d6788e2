#pragma once

// Ground-truth (quadrature-grade) quantities for halfspaces over RI
// distributions: threshold distance, exact disagreement probability between
// two halfspaces, centers of mass and the xi curve (center-norm of the
// halfspace with a given mean).

#include <cmath>
#include <optional>
#include <stdexcept>

#include "htester/halfspace.hpp"
#include "htester/projection.hpp"

namespace htester {

struct CenterOfMass {
  Vec vector;
  double norm_value = 0.0;
};

// hdist(a, b): disagreement of the two aligned halfspaces with thresholds a
// and b, i.e. the projection mass between them. +-infinity sentinels behave
// as full-mass endpoints.
inline double hdist(const RIDistribution& dist, double a, double b) {
  if (a == b) return 0.0;
  const double lo = std::min(a, b), hi = std::max(a, b);
  const Projection1D proj = Projection1D::analytic(dist);
  const double t_lo = std::isinf(lo) ? 1.0 : proj.tail(lo);
  const double t_hi = std::isinf(hi) ? 0.0 : proj.tail(hi);
  return std::max(0.0, t_lo - t_hi);
}

// E[<w,x> h(x)] for h = sign(<w,x> - t); closed form per sphere.
inline double center_norm_numeric(const RIDistribution& dist, double t) {
  const auto rs = dist.radial.radii();
  const auto ws = dist.radial.weights();
  double s = 0.0;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    s += ws[i] * sphere_proj_xi(dist.dim, dist.scale * rs[i], t);
  }
  return s;
}

inline CenterOfMass center_of_mass_numeric(const HalfspaceSpec& h,
                                           const RIDistribution& dist) {
  if (h.dim() != dist.dim) {
    throw std::invalid_argument("center_of_mass_numeric: dimension mismatch");
  }
  const double s = center_norm_numeric(dist, h.threshold);
  CenterOfMass com;
  com.vector = h.normal;
  scale(com.vector, s);
  com.norm_value = std::fabs(s);
  return com;
}

// E[h] for h = sign(z - t) over the projection.
inline double halfspace_mean_numeric(const RIDistribution& dist, double t) {
  return 2.0 * Projection1D::analytic(dist).tail(t) - 1.0;
}

// Threshold with E[h] = v (monotone bisection on the projection tail).
inline double threshold_for_mean(const RIDistribution& dist, double v) {
  return Projection1D::analytic(dist).quantile_tail(0.5 * (1.0 + v));
}

// xi(v): center-norm of the halfspace whose mean is v.
inline double xi_of_mean(const RIDistribution& dist, double v) {
  if (std::fabs(v) >= 1.0) return 0.0;
  return center_norm_numeric(dist, threshold_for_mean(dist, v));
}

namespace detail {

// Disagreement of h1, h2 on the circle of radius r (exact arc arithmetic).
inline double halfspace_distance_circle(double alpha, double t1, double t2,
                                        double r) {
  // Positive set of sign(cos(phi - c) * r - t): an arc of half-width
  // acos(t/r) centered at c; empty for t > r, everything for t <= -r.
  struct Arc {
    double center, half;  // half < 0 -> empty, half >= pi -> full
  };
  const auto make_arc = [&](double c, double t) -> Arc {
    if (t > r) return {c, -1.0};
    if (t <= -r) return {c, kPi};
    return {c, std::acos(t / r)};
  };
  const Arc a1 = make_arc(0.0, t1), a2 = make_arc(alpha, t2);
  // Symmetric difference measure via overlap of two arcs on the circle.
  const auto len = [](const Arc& a) {
    return a.half < 0.0 ? 0.0 : std::min(2.0 * a.half, 2.0 * kPi);
  };
  const auto overlap = [&](const Arc& a, const Arc& b) {
    if (a.half < 0.0 || b.half < 0.0) return 0.0;
    if (a.half >= kPi) return len(b);
    if (b.half >= kPi) return len(a);
    double d = std::fabs(a.center - b.center);
    d = std::fmod(d, 2.0 * kPi);
    if (d > kPi) d = 2.0 * kPi - d;
    const double lo = std::max(-a.half, d - b.half);
    const double hi = std::min(a.half, d + b.half);
    double ov = std::max(0.0, hi - lo);
    // Wrap-around on the other side of the circle.
    const double lo2 = std::max(-a.half, (2.0 * kPi - d) - b.half);
    const double hi2 = std::min(a.half, (2.0 * kPi - d) + b.half);
    ov += std::max(0.0, hi2 - lo2);
    return std::min(ov, std::min(len(a), len(b)));
  };
  const double sym = len(a1) + len(a2) - 2.0 * overlap(a1, a2);
  return sym / (2.0 * kPi);
}

// Disagreement of h1, h2 on the sphere of radius r in R^n (n >= 3): integrate
// over a = <w1, x>; conditionally b = <w_perp, x> projects a sphere of
// dimension n-1 and radius sqrt(r^2 - a^2).
inline double halfspace_distance_sphere(int n, double alpha, double t1,
                                        double t2, double r,
                                        std::uint64_t budget) {
  const double sa = std::sin(alpha), ca = std::cos(alpha);
  const auto disagree_given_a = [&](double a) {
    const double rho2 = r * r - a * a;
    const double rho = rho2 > 0.0 ? std::sqrt(rho2) : 0.0;
    const double bstar = (t2 - a * ca) / sa;
    // Pr[<w2,x> >= t2 | a] = Pr[b >= bstar], b ~ projection of S^{n-2}(rho).
    double p2;
    if (n - 1 >= 2) {
      p2 = sphere_proj_tail(n - 1, rho, bstar);
    } else {  // n-1 == 1: b = +-rho equally
      p2 = bstar <= -rho ? 1.0 : (bstar <= rho ? 0.5 : 0.0);
    }
    const bool h1_pos = a >= t1;
    return h1_pos ? 1.0 - p2 : p2;
  };
  AdaptiveSimpson quad(1e-10, budget);
  double total = 0.0;
  // Split at the h1 threshold where the integrand jumps.
  const double cut = std::clamp(t1, -r, r);
  const auto integrand = [&](double a) {
    return sphere_proj_density(n, r, a) * disagree_given_a(a);
  };
  if (cut > -r) total += quad.integrate(integrand, -r, cut);
  if (cut < r) total += quad.integrate(integrand, cut, r);
  return total;
}

}  // namespace detail

// Exact disagreement probability Pr[h1(x) != h2(x)] under an RI mixture.
inline double halfspace_distance_numeric(const HalfspaceSpec& h1,
                                         const HalfspaceSpec& h2,
                                         const RIDistribution& dist,
                                         std::uint64_t budget = 2'000'000) {
  if (dist.dim < 2) {
    throw std::invalid_argument("halfspace_distance_numeric: dim >= 2");
  }
  const double alpha = halfspace_angle(h1, h2);
  if (std::sin(alpha) < 1e-12) {
    // Parallel normals: pure threshold distance (anti-parallel: complement).
    if (alpha < 0.5 * kPi) return hdist(dist, h1.threshold, h2.threshold);
    const Projection1D proj = Projection1D::analytic(dist);
    // h2 = sign(-<w1,x> - t2): disagreement with h1 everywhere except the
    // band where both are negative/positive; compute directly per sphere.
    const double agree =
        std::max(0.0, proj.tail(h1.threshold) - proj.tail(-h2.threshold));
    return 1.0 - agree -
           std::max(0.0, proj.tail(-h2.threshold) - proj.tail(h1.threshold));
  }
  const auto rs = dist.radial.radii();
  const auto ws = dist.radial.weights();
  double s = 0.0;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    const double r = dist.scale * rs[i];
    if (ws[i] <= 0.0) continue;
    double d;
    if (r == 0.0) {
      d = (sign_pm1(-h1.threshold) != sign_pm1(-h2.threshold)) ? 1.0 : 0.0;
    } else if (dist.dim == 2) {
      d = detail::halfspace_distance_circle(alpha, h1.threshold, h2.threshold,
                                            r);
    } else {
      d = detail::halfspace_distance_sphere(dist.dim, alpha, h1.threshold,
                                            h2.threshold, r, budget);
    }
    s += ws[i] * d;
  }
  return s;
}

}  // namespace htester
