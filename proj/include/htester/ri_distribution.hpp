#pragma once

// Rotation-invariant distributions: an independent radius times a uniform
// direction on the sphere.

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "htester/linalg.hpp"
#include "htester/radial.hpp"
#include "htester/rng.hpp"

namespace htester {

struct RIDistribution {
  int dim = 0;
  RadialDistribution radial;
  double scale = 1.0;

  RIDistribution(int n, RadialDistribution r, double s = 1.0)
      : dim(n), radial(std::move(r)), scale(s) {
    if (dim < 1) throw std::invalid_argument("RIDistribution: dim >= 1");
    if (!(scale > 0.0)) throw std::invalid_argument("RIDistribution: scale > 0");
  }

  double second_moment() const {  // E||x||^2
    return scale * scale * radial.moment2();
  }

  double max_radius() const { return scale * radial.max_radius(); }
  double min_radius() const { return scale * radial.min_radius(); }
};

// Uniform direction on the sphere of radius r in R^n. r = 0 gives the zero
// vector.
inline void sample_sphere(int n, double r, RngStream& rng, Vec& out) {
  out.resize(std::size_t(n));
  if (r == 0.0) {
    std::fill(out.begin(), out.end(), 0.0);
    return;
  }
  double n2 = 0.0;
  for (auto& c : out) {
    c = rng.normal();
    n2 += c * c;
  }
  // Rejection guard: resample in the (practically impossible) all-zero case.
  while (n2 == 0.0) {
    for (auto& c : out) {
      c = rng.normal();
      n2 += c * c;
    }
  }
  const double f = r / std::sqrt(n2);
  for (auto& c : out) c *= f;
}

inline Vec sample_sphere(int n, double r, RngStream& rng) {
  Vec x;
  sample_sphere(n, r, rng, x);
  return x;
}

inline void sample_ri(const RIDistribution& dist, RngStream& rng, Vec& out) {
  const double r = dist.scale * dist.radial.sample(rng);
  sample_sphere(dist.dim, r, rng, out);
}

inline Vec sample_ri(const RIDistribution& dist, RngStream& rng) {
  Vec x;
  sample_ri(dist, rng, x);
  return x;
}

// Rescales so that E||x||^2 = n exactly.
inline RIDistribution isotropic_rescale(const RIDistribution& dist) {
  const double m2 = dist.second_moment();
  if (!(m2 > 0.0)) {
    throw std::invalid_argument("isotropic_rescale: zero second moment");
  }
  RIDistribution out = dist;
  out.scale = dist.scale * std::sqrt(double(dist.dim) / m2);
  return out;
}

inline bool is_isotropic(const RIDistribution& dist, double tol = 1e-9) {
  return std::fabs(dist.second_moment() - double(dist.dim)) <= tol * dist.dim;
}

struct RingRestriction {
  std::optional<RIDistribution> dist;  // empty when the ring carries no mass
  double mass = 0.0;
};

// Conditional distribution on lo <= ||x|| < hi (radii in final, scaled units).
inline RingRestriction restrict_to_ring(const RIDistribution& dist, double lo,
                                        double hi) {
  if (!(0.0 <= lo && lo < hi)) {
    throw std::invalid_argument("restrict_to_ring: need 0 <= lo < hi");
  }
  std::vector<double> radii, weights;
  double mass = 0.0;
  const auto rs = dist.radial.radii();
  const auto ws = dist.radial.weights();
  for (std::size_t i = 0; i < rs.size(); ++i) {
    const double r_eff = dist.scale * rs[i];
    if (r_eff >= lo && r_eff < hi && ws[i] > 0.0) {
      radii.push_back(rs[i]);
      weights.push_back(ws[i]);
      mass += ws[i];
    }
  }
  if (radii.empty() || mass <= 0.0) return {std::nullopt, 0.0};
  for (auto& w : weights) w /= mass;
  return {RIDistribution(dist.dim, RadialDistribution::atoms(radii, weights),
                         dist.scale),
          mass};
}

// (R, C) of a bounded RI distribution: all mass on [C*R, R].
struct BoundedParams {
  double R = 0.0;
  double C = 1.0;
};

inline BoundedParams bounded_params(const RIDistribution& dist) {
  BoundedParams p;
  p.R = dist.max_radius();
  if (!(p.R > 0.0)) throw std::invalid_argument("bounded_params: R > 0");
  p.C = dist.min_radius() / p.R;
  return p;
}

}  // namespace htester
