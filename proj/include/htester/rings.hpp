#pragma once

// Ring decomposition machinery: the radial projection map for the far
// region, per-region recorded sample prefixes, and the dyadic ring
// allocation.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "htester/budgets.hpp"
#include "htester/linalg.hpp"
#include "htester/samples.hpp"

namespace htester {

// pi_r(s) = r (2 - e^{-s}) maps (0, inf) into (r, 2r).
inline double rescale_outer_radius(double s, double r) {
  return r * (2.0 - std::exp(-s));
}

// pi(x) = x * pi_r(||x||) / ||x||: direction preserved, radius squashed.
inline Vec rescale_outer(const Vec& x, double r) {
  const double s = norm(x);
  if (s == 0.0) throw std::invalid_argument("rescale_outer: zero vector");
  if (!(r > 0.0)) throw std::invalid_argument("rescale_outer: r > 0");
  Vec y = x;
  scale(y, rescale_outer_radius(s, r) / s);
  return y;
}

// Recorded prefix of one region's samples: 1-D projections, radii and labels
// up to `cap`, plus snapshots of the running sum of label * x at the given
// checkpoint prefix lengths (enough to reconstruct any checkpoint-aligned
// segment sum of the vector statistics).
class RegionStore {
 public:
  RegionStore() = default;

  RegionStore(int dim, std::uint64_t cap, std::vector<std::uint64_t> checkpoints)
      : dim_(dim), cap_(cap), checkpoints_(std::move(checkpoints)) {
    std::sort(checkpoints_.begin(), checkpoints_.end());
    checkpoints_.erase(
        std::unique(checkpoints_.begin(), checkpoints_.end()),
        checkpoints_.end());
    while (!checkpoints_.empty() && checkpoints_.back() > cap_) {
      checkpoints_.pop_back();
    }
    running_.assign(std::size_t(dim_), 0.0);
  }

  void add(std::span<const double> x, double radius, int label) {
    ++total_;
    if (stored() >= cap_) return;
    x1_.push_back(float(x[0]));
    r_.push_back(float(radius));
    label_.push_back(std::int8_t(label));
    axpy(running_, double(label), x);
    if (next_checkpoint_ < checkpoints_.size() &&
        stored() == checkpoints_[next_checkpoint_]) {
      snapshots_.push_back(running_);
      ++next_checkpoint_;
    }
  }

  std::uint64_t total() const { return total_; }
  std::uint64_t stored() const { return x1_.size(); }
  int dim() const { return dim_; }

  double x1(std::uint64_t i) const { return x1_[std::size_t(i)]; }
  double radius(std::uint64_t i) const { return r_[std::size_t(i)]; }
  int label(std::uint64_t i) const { return label_[std::size_t(i)]; }

  double mean_label(std::uint64_t m) const {
    require_prefix(m);
    double s = 0.0;
    for (std::uint64_t i = 0; i < m; ++i) s += label_[std::size_t(i)];
    return s / double(m);
  }

  double mean_x1_squared(std::uint64_t m) const {
    require_prefix(m);
    double s = 0.0;
    for (std::uint64_t i = 0; i < m; ++i) {
      s += double(x1_[std::size_t(i)]) * double(x1_[std::size_t(i)]);
    }
    return s / double(m);
  }

  std::vector<double> x1_prefix(std::uint64_t m, double scale = 1.0) const {
    require_prefix(m);
    std::vector<double> out(std::size_t(m), 0.0);
    for (std::uint64_t i = 0; i < m; ++i) {
      out[std::size_t(i)] = scale * double(x1_[std::size_t(i)]);
    }
    return out;
  }

  // Sum of label * x over the prefix [0, len); len must be a checkpoint.
  const Vec& sum_at(std::uint64_t len) const {
    const auto it =
        std::find(checkpoints_.begin(), checkpoints_.end(), len);
    if (it == checkpoints_.end() ||
        std::size_t(it - checkpoints_.begin()) >= snapshots_.size()) {
      throw std::logic_error("RegionStore: prefix sum not recorded");
    }
    return snapshots_[std::size_t(it - checkpoints_.begin())];
  }

  // <sum over [0, m), sum over [m, 2m)> of label * x.
  double split_norm_product(std::uint64_t m) const {
    const Vec& first = sum_at(m);
    const Vec& both = sum_at(2 * m);
    double s = 0.0;
    for (std::size_t j = 0; j < first.size(); ++j) {
      s += first[j] * (both[j] - first[j]);
    }
    return s / (double(m) * double(m));
  }

 private:
  void require_prefix(std::uint64_t m) const {
    if (m > stored()) {
      throw std::logic_error("RegionStore: prefix longer than stored data");
    }
  }

  int dim_ = 0;
  std::uint64_t cap_ = 0;
  std::uint64_t total_ = 0;
  std::vector<float> x1_, r_;
  std::vector<std::int8_t> label_;
  std::vector<std::uint64_t> checkpoints_;
  std::vector<Vec> snapshots_;
  std::size_t next_checkpoint_ = 0;
  Vec running_;
};

// Cross-region inner product of prefix sums: <sum_i[0,m), sum_j[0,m)> / m^2.
inline double cross_ip(const RegionStore& a, const RegionStore& b,
                       std::uint64_t m) {
  const Vec& sa = a.sum_at(m);
  const Vec& sb = b.sum_at(m);
  return dot(sa, sb) / (double(m) * double(m));
}

// Dyadic ring index for a radius: 0 = central (r < pivot), 1..k = rings,
// k+1 = outer region (r >= outer_start), -1 = the gap between the last ring
// and the outer start when outer_start > 2^k pivot.
inline int ring_index(double radius, double pivot, int k, double outer_start) {
  if (radius < pivot) return 0;
  if (radius >= outer_start) return k + 1;
  double hi = pivot;
  for (int i = 1; i <= k; ++i) {
    hi *= 2.0;  // exact in floating point
    if (radius < hi) return i;
  }
  return -1;
}

inline double outer_start_radius(double pivot, int k, int n, double eps,
                                 bool max_rule) {
  const double ring_end = pivot * std::ldexp(1.0, k);
  if (!max_rule) return ring_end;
  return std::max(ring_end, 2.0 * double(n) * pivot / (eps * eps));
}

struct RingDecomposition {
  double pivot = 0.0;
  int k = 0;
  double outer_start = 0.0;
  std::vector<std::pair<double, double>> bounds;        // rings 1..k
  std::vector<std::vector<std::size_t>> region_samples; // index 0..k+1
  std::vector<std::size_t> gap;                         // unassigned band
  std::vector<int> active;                              // A (1..k+1)
};

// Batch ring allocation over a materialized sample set.
inline RingDecomposition allocate_rings(const LabeledSampleSet& samples,
                                        double pivot, int n, double eps,
                                        std::uint64_t m_required,
                                        bool max_rule = true) {
  if (!(pivot > 0.0) && !std::isinf(pivot)) {
    throw std::invalid_argument("allocate_rings: pivot > 0");
  }
  RingDecomposition d;
  d.pivot = pivot;
  if (std::isinf(pivot)) return d;  // monochromatic path: nothing to split
  d.k = budgets::ring_count(n, eps);
  d.outer_start = outer_start_radius(pivot, d.k, n, eps, max_rule);
  double lo = pivot;
  for (int i = 1; i <= d.k; ++i) {
    d.bounds.emplace_back(lo, lo * 2.0);
    lo *= 2.0;
  }
  d.region_samples.assign(std::size_t(d.k) + 2, {});
  for (std::size_t s = 0; s < samples.size(); ++s) {
    const int idx =
        ring_index(norm(samples[s].x), pivot, d.k, d.outer_start);
    if (idx < 0) {
      d.gap.push_back(s);
    } else {
      d.region_samples[std::size_t(idx)].push_back(s);
    }
  }
  for (int i = 1; i <= d.k + 1; ++i) {
    if (d.region_samples[std::size_t(i)].size() >= m_required) {
      d.active.push_back(i);
    }
  }
  return d;
}

}  // namespace htester
