#pragma once

// 1-D projections of rotation-invariant distributions. For a sphere of
// radius r in R^n the projection <x, u> has density
//
//   p(z) = ratio_n / r * (1 - (z/r)^2)^((n-3)/2),   ratio_n = S_{n-2}/S_{n-1}
//
// and mixtures follow atom by atom. Tails have closed forms for n = 2, 3, a
// regularized-incomplete-beta form for general n, and an adaptive-quadrature
// route kept as an independent cross-check.

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "htester/ri_distribution.hpp"
#include "htester/special.hpp"

namespace htester {

constexpr double kInf = std::numeric_limits<double>::infinity();

inline double sphere_proj_density(int n, double r, double z) {
  if (n < 2) throw std::invalid_argument("sphere_proj_density: dim >= 2");
  if (!(r > 0.0)) throw std::invalid_argument("sphere_proj_density: r > 0");
  const double u = z / r;
  const double s = 1.0 - u * u;
  if (s <= 0.0) return 0.0;
  return sphere_surface_ratio(n) / r * std::pow(s, 0.5 * (n - 3));
}

// Pr[z >= t] for the projection of the sphere of radius r in R^n.
inline double sphere_proj_tail(int n, double r, double t) {
  if (n < 2) throw std::invalid_argument("sphere_proj_tail: dim >= 2");
  if (r == 0.0) return t <= 0.0 ? 1.0 : 0.0;  // point mass at the origin
  if (t <= -r) return 1.0;
  if (t > r) return 0.0;
  if (t < 0.0) return 1.0 - sphere_proj_tail(n, r, -t);
  const double u = t / r;
  if (n == 2) return std::acos(std::min(1.0, u)) / kPi;
  if (n == 3) return 0.5 * (1.0 - u);
  return 0.5 * reg_inc_beta(0.5 * (n - 1), 0.5, 1.0 - u * u);
}

// Same tail by adaptive quadrature of the density (independent route).
inline double sphere_proj_tail_quad(int n, double r, double t,
                                    double tol = 1e-11,
                                    std::uint64_t budget = 200'000) {
  if (r == 0.0) return t <= 0.0 ? 1.0 : 0.0;
  if (t <= -r) return 1.0;
  if (t >= r) return 0.0;
  if (t < 0.0) return 1.0 - sphere_proj_tail_quad(n, r, -t, tol, budget);
  if (n == 2) {
    // Integrable endpoint singularity: substitute z = r sin(s), which turns
    // the arcsine density into the constant 1/pi.
    AdaptiveSimpson q(tol, budget);
    const double s0 = std::asin(std::min(1.0, t / r));
    return q.integrate([](double) { return 1.0 / kPi; }, s0, 0.5 * kPi);
  }
  AdaptiveSimpson q(tol, budget);
  return q.integrate([&](double z) { return sphere_proj_density(n, r, z); }, t,
                     r);
}

// xi for a single sphere: E[z * sign(z - t)] = 2 * r * ratio_n / (n-1) *
// (1 - (t/r)^2)^((n-1)/2); even in t, zero for |t| >= r.
inline double sphere_proj_xi(int n, double r, double t) {
  if (n < 2) throw std::invalid_argument("sphere_proj_xi: dim >= 2");
  if (r == 0.0) return 0.0;
  const double u = std::fabs(t) / r;
  if (u >= 1.0) return 0.0;
  return 2.0 * r * sphere_surface_ratio(n) / double(n - 1) *
         std::pow(1.0 - u * u, 0.5 * (n - 1));
}

// The 1-D projection of an RI distribution (or a synthetic 1-D law for the
// threshold-check machinery): analytic sphere mixtures, an exact uniform
// interval, or an empirical sorted sample grid.
class Projection1D {
 public:
  static Projection1D analytic(const RIDistribution& dist) {
    Projection1D p;
    p.rep_ = Rep::Analytic;
    p.dim_ = dist.dim;
    const auto rs = dist.radial.radii();
    const auto ws = dist.radial.weights();
    for (std::size_t i = 0; i < rs.size(); ++i) {
      const double r = dist.scale * rs[i];
      if (ws[i] <= 0.0) continue;
      if (r == 0.0) {
        p.atom_at_zero_ += ws[i];
      } else {
        p.radii_.push_back(r);
        p.weights_.push_back(ws[i]);
      }
    }
    p.support_ = dist.max_radius();
    return p;
  }

  static Projection1D uniform(double lo, double hi) {
    if (!(lo < hi)) throw std::invalid_argument("Projection1D::uniform");
    Projection1D p;
    p.rep_ = Rep::Uniform;
    p.lo_ = lo;
    p.hi_ = hi;
    p.support_ = std::max(std::fabs(lo), std::fabs(hi));
    return p;
  }

  static Projection1D empirical(std::vector<double> samples) {
    if (samples.empty()) throw std::invalid_argument("Projection1D::empirical");
    Projection1D p;
    p.rep_ = Rep::Empirical;
    std::sort(samples.begin(), samples.end());
    p.samples_ = std::move(samples);
    p.support_ = std::max(std::fabs(p.samples_.front()),
                          std::fabs(p.samples_.back()));
    return p;
  }

  // Pr[z >= t].
  double tail(double t) const {
    switch (rep_) {
      case Rep::Analytic: {
        double s = atom_at_zero_ * (t <= 0.0 ? 1.0 : 0.0);
        for (std::size_t i = 0; i < radii_.size(); ++i) {
          s += weights_[i] * sphere_proj_tail(dim_, radii_[i], t);
        }
        return s;
      }
      case Rep::Uniform:
        if (t <= lo_) return 1.0;
        if (t >= hi_) return 0.0;
        return (hi_ - t) / (hi_ - lo_);
      case Rep::Empirical: {
        const auto it =
            std::lower_bound(samples_.begin(), samples_.end(), t);
        return double(samples_.end() - it) / double(samples_.size());
      }
    }
    return 0.0;
  }

  // Tail via the quadrature route (analytic representation only).
  double tail_quad(double t, double tol = 1e-11,
                   std::uint64_t budget = 400'000) const {
    if (rep_ != Rep::Analytic) return tail(t);
    double s = atom_at_zero_ * (t <= 0.0 ? 1.0 : 0.0);
    for (std::size_t i = 0; i < radii_.size(); ++i) {
      s += weights_[i] * sphere_proj_tail_quad(dim_, radii_[i], t, tol, budget);
    }
    return s;
  }

  double density(double z) const {
    switch (rep_) {
      case Rep::Analytic: {
        double s = 0.0;
        for (std::size_t i = 0; i < radii_.size(); ++i) {
          s += weights_[i] * sphere_proj_density(dim_, radii_[i], z);
        }
        return s;
      }
      case Rep::Uniform:
        return (z >= lo_ && z <= hi_) ? 1.0 / (hi_ - lo_) : 0.0;
      case Rep::Empirical:
        throw std::logic_error("density undefined for empirical projection");
    }
    return 0.0;
  }

  // Mass of [a, b), the disagreement region of thresholds a <= b.
  double mass_co(double a, double b) const {
    if (!(a < b)) return 0.0;
    return std::max(0.0, tail(a) - tail(b));
  }

  // Mass of the closed interval [a, b] (atoms at the endpoints included).
  double mass_closed(double a, double b) const {
    if (a > b) return 0.0;
    double s = tail(a) - tail(b);
    if (rep_ == Rep::Analytic && atom_at_zero_ > 0.0 && b == 0.0 && a <= 0.0) {
      s += atom_at_zero_;  // tail(b) counted the origin atom
    }
    if (rep_ == Rep::Empirical) {
      s += double(std::count(samples_.begin(), samples_.end(), b)) /
           double(samples_.size());
    }
    return std::min(1.0, std::max(0.0, s));
  }

  double largest_atom() const {
    if (rep_ == Rep::Analytic) return atom_at_zero_;
    if (rep_ == Rep::Empirical) {
      std::size_t best = 1, run = 1;
      for (std::size_t i = 1; i < samples_.size(); ++i) {
        run = (samples_[i] == samples_[i - 1]) ? run + 1 : 1;
        best = std::max(best, run);
      }
      return double(best) / double(samples_.size());
    }
    return 0.0;
  }

  // Smallest t with tail(t) <= v (bisection; tail is nonincreasing).
  double quantile_tail(double v) const {
    if (v <= 0.0) return support_ + 1.0;
    if (v >= 1.0) return -support_ - 1.0;
    double lo = -support_ - 1.0, hi = support_ + 1.0;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (tail(mid) <= v) {
        hi = mid;
      } else {
        lo = mid;
      }
      if (hi - lo <= 1e-14 * std::max(1.0, std::fabs(hi))) break;
    }
    return hi;
  }

  double second_moment() const {
    switch (rep_) {
      case Rep::Analytic: {
        double s = 0.0;
        for (std::size_t i = 0; i < radii_.size(); ++i) {
          s += weights_[i] * radii_[i] * radii_[i] / double(dim_);
        }
        return s;
      }
      case Rep::Uniform:
        return (hi_ * hi_ + hi_ * lo_ + lo_ * lo_) / 3.0;
      case Rep::Empirical: {
        double s = 0.0;
        for (double z : samples_) s += z * z;
        return s / double(samples_.size());
      }
    }
    return 0.0;
  }

  double support_radius() const { return support_; }

  // One draw from the projection law.
  double sample(RngStream& rng) const {
    switch (rep_) {
      case Rep::Uniform:
        return lo_ + (hi_ - lo_) * rng.uniform();
      case Rep::Empirical:
        return samples_[rng.below(samples_.size())];
      case Rep::Analytic: {
        const double u = rng.uniform();
        double acc = atom_at_zero_;
        if (u < acc) return 0.0;
        std::size_t pick = radii_.size() - 1;
        for (std::size_t i = 0; i < radii_.size(); ++i) {
          acc += weights_[i];
          if (u < acc) {
            pick = i;
            break;
          }
        }
        // z = r * (first coordinate of a uniform direction in R^dim).
        double g1 = rng.normal();
        double n2 = g1 * g1;
        for (int i = 1; i < dim_; ++i) {
          const double g = rng.normal();
          n2 += g * g;
        }
        return n2 == 0.0 ? 0.0 : radii_[pick] * g1 / std::sqrt(n2);
      }
    }
    return 0.0;
  }

 private:
  enum class Rep { Analytic, Uniform, Empirical };
  Projection1D() = default;

  Rep rep_ = Rep::Analytic;
  int dim_ = 2;
  std::vector<double> radii_, weights_;  // analytic mixture (scaled radii)
  double atom_at_zero_ = 0.0;
  double lo_ = 0.0, hi_ = 0.0;     // uniform
  std::vector<double> samples_;    // empirical, sorted
  double support_ = 0.0;
};

// Pr[<x, u> >= t], the spec-level tail of an RI distribution, computed as an
// atom-by-atom quadrature over the radial mixture.
inline double projection_tail(const RIDistribution& dist, double t) {
  return Projection1D::analytic(dist).tail_quad(t);
}

}  // namespace htester
