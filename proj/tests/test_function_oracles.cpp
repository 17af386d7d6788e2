#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "htester/exact.hpp"
#include "htester/mc.hpp"
#include "htester/oracle.hpp"

using namespace htester;

namespace {

RIDistribution unit_sphere(int n) {
  return RIDistribution(n, RadialDistribution::atoms({1.0}, {1.0}));
}

RIDistribution random_mixture(int n, RngStream& rng) {
  const int atoms = 1 + int(rng.below(4));
  std::vector<double> radii, weights;
  double total = 0.0;
  for (int i = 0; i < atoms; ++i) {
    radii.push_back(0.2 + 2.8 * rng.uniform());
    const double w = 0.1 + rng.uniform();
    weights.push_back(w);
    total += w;
  }
  for (auto& w : weights) w /= total;
  double fix = 1.0;
  for (double w : weights) fix -= w;
  weights.back() += fix;  // exact unit sum
  return RIDistribution(n, RadialDistribution::atoms(radii, weights));
}

HalfspaceSpec random_halfspace(int n, double tmax, RngStream& rng) {
  Vec w(std::size_t(n), 0.0);
  for (auto& c : w) c = rng.normal();
  return HalfspaceSpec::from_direction(std::move(w),
                                       tmax * (2.0 * rng.uniform() - 1.0));
}

}  // namespace

TEST_CASE("oracle eval basics") {
  const auto h = FunctionOracle::halfspace(HalfspaceSpec(axis_vector(3, 0), 0.0));
  REQUIRE(h(Vec{1, 0, 0}) == 1);
  REQUIRE(h(Vec{0, 1, 0}) == 1);  // sign(0) = +1 tie rule
  REQUIRE(h(Vec{-1, 0, 0}) == -1);
  REQUIRE(h.calls() == 3);
  REQUIRE_THROWS(h(Vec{1, 0}));

  const auto flip = FunctionOracle::shell_flip(
      HalfspaceSpec(axis_vector(3, 0), 0.0), {2.0});
  REQUIRE(flip(Vec{2, 0, 0}) == -1);  // on the flip shell
  REQUIRE(flip(Vec{1, 0, 0}) == 1);   // off it

  const auto c = FunctionOracle::constant(3, -1);
  REQUIRE(c(Vec{5, 5, 5}) == -1);
}

TEST_CASE("noisy oracle is a well-defined function") {
  const auto base = FunctionOracle::halfspace(HalfspaceSpec(axis_vector(2, 0), 0.0));
  const auto f = FunctionOracle::noisy(base, 0.3, 99);
  RngStream rng(21);
  int flipped = 0;
  const int m = 20000;
  for (int i = 0; i < m; ++i) {
    const Vec x = sample_sphere(2, 1.0, rng);
    const int a = f(x);
    REQUIRE(a == f(x));  // repeat query agrees
    if (a != base(x)) ++flipped;
  }
  REQUIRE(std::fabs(flipped / double(m) - 0.3) < 0.02);
}

TEST_CASE("distance_mc trivial cases and the angle formula") {
  RngStream rng(22);
  const auto dist = unit_sphere(4);
  const auto f = FunctionOracle::halfspace(HalfspaceSpec(axis_vector(4, 0), 0.0));
  const auto negf = FunctionOracle::custom(4, [](std::span<const double> x) {
    return -sign_pm1(x[0]);
  });
  REQUIRE(distance_mc(f, f, dist, 2000, rng) == 0.0);
  REQUIRE(distance_mc(f, negf, dist, 2000, rng) == 1.0);

  // Balanced halfspaces at angle alpha disagree on alpha/pi of the mass;
  // at right angles that is 1/2.
  const auto g = FunctionOracle::halfspace(HalfspaceSpec(axis_vector(4, 1), 0.0));
  const int m = 100000;
  const double d = distance_mc(f, g, dist, m, rng);
  REQUIRE(std::fabs(d - 0.5) <= 3.0 * std::sqrt(0.25 / m));
}

TEST_CASE("hdist basics and pseudometric properties") {
  const auto dist = unit_sphere(3);
  REQUIRE(hdist(dist, 0.3, 0.3) == 0.0);
  REQUIRE(hdist(dist, 0.0, 0.5) == Catch::Approx(0.25).margin(1e-9));
  REQUIRE(hdist(dist, -kInf, kInf) == Catch::Approx(1.0).margin(1e-12));

  RngStream rng(23);
  const auto mix = random_mixture(5, rng);
  for (int trial = 0; trial < 1000; ++trial) {
    const double a = 4.0 * (rng.uniform() - 0.5);
    const double b = 4.0 * (rng.uniform() - 0.5);
    const double c = 4.0 * (rng.uniform() - 0.5);
    const double ab = hdist(mix, a, b);
    REQUIRE(ab >= 0.0);
    REQUIRE(ab == Catch::Approx(hdist(mix, b, a)).margin(1e-12));
    REQUIRE(ab <= hdist(mix, a, c) + hdist(mix, c, b) + 1e-12);
  }
}

TEST_CASE("halfspace_distance_numeric: aligned and balanced cases") {
  const auto dist = unit_sphere(2);
  const HalfspaceSpec h1(axis_vector(2, 0), 0.2);
  const HalfspaceSpec h2(axis_vector(2, 0), 0.6);
  REQUIRE(halfspace_distance_numeric(h1, h1, dist) == 0.0);
  REQUIRE(halfspace_distance_numeric(h1, h2, dist) ==
          Catch::Approx(hdist(dist, 0.2, 0.6)).margin(1e-10));

  // Balanced pair on a circle: distance is exactly alpha/pi.
  for (double alpha : {0.3, 1.0, 2.0, 3.0}) {
    const HalfspaceSpec a(axis_vector(2, 0), 0.0);
    const HalfspaceSpec b(Vec{std::cos(alpha), std::sin(alpha)}, 0.0);
    REQUIRE(halfspace_distance_numeric(a, b, dist) ==
            Catch::Approx(alpha / kPi).margin(1e-10));
  }
}

TEST_CASE("balanced angle formula validated by distance_mc on spheres") {
  RngStream rng(24);
  const auto dist = unit_sphere(6);
  const double alpha = 0.8;
  Vec w2(6, 0.0);
  w2[0] = std::cos(alpha);
  w2[1] = std::sin(alpha);
  const auto f = FunctionOracle::halfspace(HalfspaceSpec(axis_vector(6, 0), 0.0));
  const auto g = FunctionOracle::halfspace(HalfspaceSpec(w2, 0.0));
  const int m = 200000;
  const double mc = distance_mc(f, g, dist, m, rng);
  const double exact =
      halfspace_distance_numeric(*f.as_halfspace(), *g.as_halfspace(), dist);
  REQUIRE(exact == Catch::Approx(alpha / kPi).margin(1e-8));
  REQUIRE(std::fabs(mc - exact) <= 3.0 * std::sqrt(0.25 / m) + 1e-3);
}

TEST_CASE("distance decomposition bound on random pairs") {
  RngStream rng(25);
  for (int trial = 0; trial < 120; ++trial) {
    const int n = 2 + int(rng.below(5));
    const auto dist = random_mixture(n, rng);
    const auto h1 = random_halfspace(n, 2.0, rng);
    const auto h2 = random_halfspace(n, 2.0, rng);
    const double d = halfspace_distance_numeric(h1, h2, dist);
    const double bound = halfspace_angle(h1, h2) / kPi +
                         hdist(dist, h1.threshold, h2.threshold);
    REQUIRE(d <= bound + 1e-9);
  }
}

TEST_CASE("center_of_mass_numeric examples") {
  // Balanced halfspace over the unit sphere in R^3: norm 1/2.
  const auto dist = unit_sphere(3);
  const HalfspaceSpec h(axis_vector(3, 2), 0.0);
  const auto com = center_of_mass_numeric(h, dist);
  REQUIRE(com.norm_value == Catch::Approx(0.5).margin(1e-12));
  REQUIRE(com.vector[2] == Catch::Approx(0.5).margin(1e-12));
  REQUIRE(com.vector[0] == 0.0);

  // Threshold beyond the support: constant function, zero center.
  const HalfspaceSpec far(axis_vector(3, 0), 2.0);
  REQUIRE(center_of_mass_numeric(far, dist).norm_value == 0.0);

  // Quadrature route agrees with the closed form.
  const double quad =
      2.0 * integrate([&](double z) { return z * sphere_proj_density(3, 1.0, z); },
                      0.35, 1.0);
  REQUIRE(center_norm_numeric(dist, 0.35) == Catch::Approx(quad).margin(1e-9));

  // Isotropic distributions have center-norm at most 1.
  RngStream rng(26);
  for (int trial = 0; trial < 50; ++trial) {
    const auto mix = isotropic_rescale(random_mixture(4, rng));
    const auto hs = random_halfspace(4, 3.0, rng);
    REQUIRE(center_of_mass_numeric(hs, mix).norm_value <= 1.0 + 1e-12);
  }
}

TEST_CASE("center_of_mass_mc agrees with the numeric oracle") {
  RngStream rng(27);
  const auto dist = unit_sphere(3);

  // Constant oracle on a symmetric distribution: center near zero.
  const auto c = FunctionOracle::constant(3, 1);
  const auto mc0 = center_of_mass_mc(c, dist, 50000, rng);
  for (std::size_t j = 0; j < 3; ++j) {
    REQUIRE(std::fabs(mc0.com.vector[j]) <= 4.0 * mc0.stderr_per_coord[j] + 1e-4);
  }

  // Halfspace center matches the numeric value within noise.
  const HalfspaceSpec h(normalized(Vec{1, 2, -1}), 0.3);
  const auto f = FunctionOracle::halfspace(h);
  const auto mc = center_of_mass_mc(f, dist, 200000, rng);
  const auto exact = center_of_mass_numeric(h, dist);
  for (std::size_t j = 0; j < 3; ++j) {
    REQUIRE(std::fabs(mc.com.vector[j] - exact.vector[j]) <=
            3.5 * mc.stderr_per_coord[j] + 1e-4);
  }

  // Shell-flip counterexample: centers differ by at most the inner radius.
  const int n = 8;
  const double inner = 0.25;
  const RIDistribution two(
      n, RadialDistribution::atoms({inner, std::sqrt(double(n))}, {0.5, 0.5}));
  const HalfspaceSpec hb(axis_vector(n, 0), 0.0);
  const auto fb = FunctionOracle::halfspace(hb);
  const auto flip = FunctionOracle::shell_flip(hb, {inner});
  const auto cf = center_of_mass_mc(flip, two, 200000, rng);
  const auto ch = center_of_mass_mc(fb, two, 200000, rng);
  Vec diff = cf.com.vector;
  axpy(diff, -1.0, ch.com.vector);
  REQUIRE(norm(diff) <= inner + 0.02);
}

TEST_CASE("halfspace mean identity") {
  RngStream rng(28);
  for (int trial = 0; trial < 30; ++trial) {
    const auto mix = random_mixture(5, rng);
    const double t = 2.0 * (rng.uniform() - 0.5);
    const double mean = halfspace_mean_numeric(mix, t);
    const Projection1D proj = Projection1D::analytic(mix);
    const double band = proj.tail(-std::fabs(t)) - proj.tail(std::fabs(t));
    REQUIRE(std::fabs(mean) == Catch::Approx(band).margin(1e-9));
  }
}

TEST_CASE("distance from mean bound") {
  const int n = 5;
  const auto dist = unit_sphere(n);
  const Projection1D proj = Projection1D::analytic(dist);
  for (double eps : {0.05, 0.15, 0.3}) {
    // f: halfspace with |E f| = 1 - eps; g: a nearby threshold.
    const double tf = proj.quantile_tail(0.5 * eps);
    const HalfspaceSpec hf(axis_vector(n, 0), tf);
    for (double delta : {0.02, 0.1}) {
      const double tg = proj.quantile_tail(0.5 * eps + 0.5 * delta);
      const HalfspaceSpec hg(axis_vector(n, 0), tg);
      const double measured = halfspace_distance_numeric(hf, hg, dist);
      REQUIRE(measured <= eps + 0.5 * delta + 1e-6);
    }
  }
}
