#pragma once

// Monte-Carlo counterparts of the exact machinery.

#include <cmath>
#include <cstdint>

#include "htester/exact.hpp"
#include "htester/oracle.hpp"
#include "htester/ri_distribution.hpp"

namespace htester {

// Empirical Pr[f(x) != g(x)] from m fresh draws.
inline double distance_mc(const FunctionOracle& f, const FunctionOracle& g,
                          const RIDistribution& dist, std::uint64_t m,
                          RngStream& rng) {
  Vec x;
  std::uint64_t disagree = 0;
  for (std::uint64_t i = 0; i < m; ++i) {
    sample_ri(dist, rng, x);
    if (f(x) != g(x)) ++disagree;
  }
  return double(disagree) / double(m);
}

struct McCenter {
  CenterOfMass com;
  Vec stderr_per_coord;
  std::uint64_t samples_used = 0;
};

// Empirical E[x f(x)] with per-coordinate standard errors.
inline McCenter center_of_mass_mc(const FunctionOracle& f,
                                  const RIDistribution& dist, std::uint64_t m,
                                  RngStream& rng) {
  const auto n = std::size_t(dist.dim);
  Vec sum(n, 0.0), sumsq(n, 0.0), x;
  for (std::uint64_t i = 0; i < m; ++i) {
    sample_ri(dist, rng, x);
    const double label = f(x);
    for (std::size_t j = 0; j < n; ++j) {
      const double v = label * x[j];
      sum[j] += v;
      sumsq[j] += v * v;
    }
  }
  McCenter out;
  out.samples_used = m;
  out.com.vector.resize(n);
  out.stderr_per_coord.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double mean = sum[j] / double(m);
    out.com.vector[j] = mean;
    const double var =
        std::max(0.0, sumsq[j] / double(m) - mean * mean);
    out.stderr_per_coord[j] = std::sqrt(var / double(m));
  }
  out.com.norm_value = norm(out.com.vector);
  return out;
}

}  // namespace htester
