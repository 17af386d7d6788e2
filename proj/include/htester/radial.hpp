#pragma once

// Radial laws for rotation-invariant distributions. Everything is stored as
// a finite list of radius atoms: point masses directly, uniform intervals and
// gridded densities through a fixed-resolution discretization. This keeps
// every downstream quadrature exactly reproducible.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "htester/rng.hpp"

namespace htester {

enum class RadialKind { Atoms, Interval, Grid };

constexpr int kDefaultRadialCells = 1 << 14;

class RadialDistribution {
 public:
  static RadialDistribution atoms(std::vector<double> radii,
                                  std::vector<double> weights) {
    return RadialDistribution(RadialKind::Atoms, std::move(radii),
                              std::move(weights));
  }

  // Uniform density on [lo, hi], discretized into `cells` midpoint atoms.
  static RadialDistribution uniform_interval(double lo, double hi,
                                             int cells = kDefaultRadialCells) {
    if (!(0.0 <= lo && lo < hi)) {
      throw std::invalid_argument("uniform_interval: need 0 <= lo < hi");
    }
    if (cells < 1) throw std::invalid_argument("uniform_interval: cells >= 1");
    std::vector<double> r(static_cast<std::size_t>(cells));
    std::vector<double> w(static_cast<std::size_t>(cells),
                          1.0 / static_cast<double>(cells));
    const double h = (hi - lo) / cells;
    for (int i = 0; i < cells; ++i) r[std::size_t(i)] = lo + (i + 0.5) * h;
    return RadialDistribution(RadialKind::Interval, std::move(r), std::move(w));
  }

  static RadialDistribution grid(std::vector<double> radii,
                                 std::vector<double> weights) {
    return RadialDistribution(RadialKind::Grid, std::move(radii),
                              std::move(weights));
  }

  RadialKind kind() const { return kind_; }
  std::span<const double> radii() const { return radii_; }
  std::span<const double> weights() const { return weights_; }
  std::size_t size() const { return radii_.size(); }

  double max_radius() const { return max_radius_; }
  double min_radius() const { return min_radius_; }

  // E[r^2] of the radial law.
  double moment2() const {
    double s = 0.0;
    for (std::size_t i = 0; i < radii_.size(); ++i) {
      s += weights_[i] * radii_[i] * radii_[i];
    }
    return s;
  }

  double mass_in(double lo, double hi) const {  // mass of [lo, hi)
    double s = 0.0;
    for (std::size_t i = 0; i < radii_.size(); ++i) {
      if (radii_[i] >= lo && radii_[i] < hi) s += weights_[i];
    }
    return s;
  }

  double sample(RngStream& rng) const {
    const double u = rng.uniform();
    const auto it = std::upper_bound(cum_.begin(), cum_.end(), u);
    const std::size_t i =
        std::min<std::size_t>(std::size_t(it - cum_.begin()), radii_.size() - 1);
    return radii_[i];
  }

 private:
  RadialDistribution(RadialKind kind, std::vector<double> radii,
                     std::vector<double> weights)
      : kind_(kind), radii_(std::move(radii)), weights_(std::move(weights)) {
    if (radii_.empty() || radii_.size() != weights_.size()) {
      throw std::invalid_argument("radial: radii/weights size mismatch");
    }
    double total = 0.0;
    bool positive_radius = false;
    for (std::size_t i = 0; i < radii_.size(); ++i) {
      if (radii_[i] < 0.0) throw std::invalid_argument("radial: radius < 0");
      if (weights_[i] < 0.0) throw std::invalid_argument("radial: weight < 0");
      if (radii_[i] > 0.0 && weights_[i] > 0.0) positive_radius = true;
      total += weights_[i];
    }
    if (std::fabs(total - 1.0) > 1e-12) {
      throw std::invalid_argument("radial: weights must sum to 1 (1e-12)");
    }
    if (!positive_radius) {
      throw std::invalid_argument("radial: need at least one radius > 0");
    }
    cum_.resize(weights_.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < weights_.size(); ++i) {
      acc += weights_[i];
      cum_[i] = acc;
    }
    cum_.back() = 1.0;
    min_radius_ = *std::min_element(radii_.begin(), radii_.end());
    max_radius_ = *std::max_element(radii_.begin(), radii_.end());
  }

  RadialKind kind_;
  std::vector<double> radii_, weights_, cum_;
  double min_radius_ = 0.0, max_radius_ = 0.0;
};

}  // namespace htester
