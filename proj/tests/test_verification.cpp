#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "htester/verify.hpp"

using namespace htester;

TEST_CASE("gap check: identity and single-swap profiles") {
  // f = h: zero distance, zero gap, holds vacuously.
  DiscreteProfile f;
  const int m = 64;
  RngStream rng(71);
  f.z.resize(m);
  f.p.assign(m, 1.0 / m);
  for (auto& z : f.z) z = 2.0 * rng.uniform() - 1.0;
  std::sort(f.z.begin(), f.z.end());
  const double t = 0.1;
  f.label.resize(m);
  for (int i = 0; i < m; ++i) f.label[i] = sign_pm1(f.z[i] - t);
  const GapCheck same = gap_theorem_check(f, t);
  REQUIRE(same.eps == 0.0);
  REQUIRE(same.lhs == 0.0);
  REQUIRE(same.holds);

  // Swap one +/- pair: exhaustive evaluation of both sides.
  std::size_t ip = 0, in = 0;
  for (std::size_t i = 0; i < f.z.size(); ++i) {
    if (f.label[i] == 1) ip = i;
    if (f.label[i] == -1) in = i;
  }
  f.label[ip] = -1;
  f.label[in] = 1;
  const GapCheck swapped = gap_theorem_check(f, t);
  REQUIRE(swapped.eps == Catch::Approx(2.0 / m));
  REQUIRE(swapped.holds);
  // lhs computed independently: 2 p (z_ip - z_in).
  REQUIRE(swapped.lhs ==
          Catch::Approx(2.0 / m * std::fabs(f.z[ip] - f.z[in])).margin(1e-12));
}

TEST_CASE("gap check: mean mismatch is rejected") {
  DiscreteProfile f;
  f.z = {-1.0, 0.0, 1.0};
  f.p = {0.25, 0.5, 0.25};
  f.label = {1, 1, 1};
  REQUIRE_THROWS(gap_theorem_check(f, 0.5));
}

TEST_CASE("gap check: atoms above eps/2 trivialize the width") {
  // One atom holds half the mass; at eps/2 <= 0.5 the width is zero and the
  // inequality degenerates to lhs >= 0.
  DiscreteProfile f;
  f.z = {-1.0, 0.0, 0.5, 1.0};
  f.p = {0.2, 0.5, 0.2, 0.1};
  const double t = 0.25;
  f.label = {sign_pm1(-1.0 - t), sign_pm1(0.0 - t), sign_pm1(0.5 - t),
             sign_pm1(1.0 - t)};
  // swap the two 0.2-weight atoms (one +, one -) to keep the mean
  f.label[0] = 1;
  f.label[2] = -1;
  const GapCheck g = gap_theorem_check(f, t);
  REQUIRE(g.eps == Catch::Approx(0.4));
  REQUIRE(width_discrete(f.z, f.p, 0.5 * g.eps) == 0.0);
  REQUIRE(g.rhs == 0.0);
  REQUIRE(g.holds);
}

TEST_CASE("gap inequality holds on random mean-matched profiles") {
  RngStream rng(72);
  for (int trial = 0; trial < 2000; ++trial) {
    double t = 0.0;
    const DiscreteProfile f = random_matched_profile(64, t, rng);
    const GapCheck g = gap_theorem_check(f, t);
    REQUIRE(g.holds);
  }
}

TEST_CASE("counterexample distances") {
  RngStream rng(73);
  const CounterexampleResult c =
      counterexample_verify(20, 0.1 * std::sqrt(20.0), 60, 50000, rng);
  // f = -h on the inner sphere (half the mass): the inner halfspace itself
  // disagrees on all of it.
  REQUIRE(c.dist_to_inner_halfspace == Catch::Approx(0.5).margin(0.01));
  REQUIRE(c.dist_to_constant == Catch::Approx(0.5).margin(0.01));
  REQUIRE(c.min_over_grid >= 0.24);
  // A threshold between the spheres beats both trivial candidates (it is
  // constant on the flipped inner sphere) but stays above the quarter
  // bound: 1/4 from the inner sphere plus the outer threshold mass.
  const int n = 20;
  const double R = std::sqrt(double(n));
  const RIDistribution mu(
      n, RadialDistribution::atoms({0.1 * R, R}, {0.5, 0.5}));
  const auto f = FunctionOracle::shell_flip(
      HalfspaceSpec(axis_vector(n, 0), 0.0), {0.1 * R});
  const auto g = FunctionOracle::halfspace(
      HalfspaceSpec(axis_vector(n, 0), 0.15 * R));
  const double d = distance_mc(f, g, mu, 100000, rng);
  const double outer_band =
      0.5 * (sphere_proj_tail(n, R, 0.0) - sphere_proj_tail(n, R, 0.15 * R));
  REQUIRE(d == Catch::Approx(0.25 + outer_band).margin(0.01));
  REQUIRE(d >= 0.24);
  REQUIRE(d < 0.45);
}

TEST_CASE("upper bound ratios: zero at zero, stable across n") {
  const std::vector<double> eps_grid{0.02, 0.05, 0.1, 0.2, 0.3};
  std::vector<double> maxima;
  for (int n : {16, 64, 256}) {
    const UpperBoundResult u = upper_bound_check(n, eps_grid);
    for (double r : u.ratios) REQUIRE(std::isfinite(r));
    maxima.push_back(u.max_ratio);
  }
  const double lo = *std::min_element(maxima.begin(), maxima.end());
  const double hi = *std::max_element(maxima.begin(), maxima.end());
  REQUIRE(hi <= 1.5 * lo);  // the R/sqrt(n) scaling: ratios n-stable
}

TEST_CASE("xi derivative check and its negative control") {
  const auto dist = isotropic_rescale(
      RIDistribution(24, RadialDistribution::atoms({1.0, 1.3}, {0.5, 0.5})));
  const XiDerivativeResult r = xi_derivative_check(dist);
  REQUIRE(r.max_abs_slope <= 1.001);

  // Scaling the distribution by 2 scales xi^2 by 4: the bound must break.
  auto scaled = dist;
  scaled.scale *= 2.0;
  const XiDerivativeResult bad = xi_derivative_check(scaled);
  REQUIRE(bad.max_abs_slope > 1.001);
  REQUIRE(bad.max_abs_slope == Catch::Approx(4.0 * r.max_abs_slope).epsilon(0.05));
}

TEST_CASE("center-norm lower bound across the (C, eps) grid") {
  for (double C : {0.3, 0.5, 0.8}) {
    for (double eps : {0.1, 0.2, 0.4}) {
      const int n = 16;
      const double R = std::sqrt(double(n));
      const RIDistribution dist(
          n, RadialDistribution::atoms({C * R, R}, {0.5, 0.5}));
      REQUIRE(xi_of_mean(dist, 1.0 - eps) >= C * eps / 4.0);
    }
  }
}

TEST_CASE("verification report runs clean") {
  const auto records = run_verification(2024);
  REQUIRE(records.size() == 5);
  for (const auto& r : records) {
    INFO(r.name << " " << r.details.dump());
    REQUIRE(r.pass);
  }
}
