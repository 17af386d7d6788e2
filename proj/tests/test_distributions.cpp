#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "htester/projection.hpp"
#include "htester/ri_distribution.hpp"
#include "htester/special.hpp"
#include "htester/width.hpp"

using namespace htester;

namespace {

RIDistribution unit_sphere(int n) {
  return RIDistribution(n, RadialDistribution::atoms({1.0}, {1.0}));
}

RIDistribution sphere_sqrt_n(int n) {
  return RIDistribution(n, RadialDistribution::atoms({std::sqrt(double(n))}, {1.0}));
}

}  // namespace

TEST_CASE("sample_sphere norm and symmetry") {
  RngStream rng(11);
  for (int i = 0; i < 100; ++i) {
    const Vec x = sample_sphere(3, 1.0, rng);
    REQUIRE(std::fabs(norm(x) - 1.0) <= 1e-9);
  }
  // n=2, r=2: empirical mean of x1 within 3 sigma of 0.
  const int m = 100000;
  double s = 0.0;
  for (int i = 0; i < m; ++i) s += sample_sphere(2, 2.0, rng)[0];
  const double sigma = std::sqrt(2.0) / std::sqrt(double(m));  // E[x1^2] = 2
  REQUIRE(std::fabs(s / m) <= 3.0 * sigma);

  const Vec z = sample_sphere(4, 0.0, rng);
  REQUIRE(norm(z) == 0.0);
}

TEST_CASE("sample_sphere matches the projection quadrature oracle") {
  // n=3, r=1: E|x1| by quadrature of the projection density, then MC.
  const double expected =
      2.0 * integrate([](double z) { return z * sphere_proj_density(3, 1.0, z); },
                      0.0, 1.0);
  REQUIRE(expected == Catch::Approx(0.5).margin(1e-9));
  RngStream rng(12);
  const int m = 100000;
  double s = 0.0;
  for (int i = 0; i < m; ++i) s += std::fabs(sample_sphere(3, 1.0, rng)[0]);
  REQUIRE(std::fabs(s / m - expected) <= 0.01);
}

TEST_CASE("sample_ri supports") {
  RngStream rng(13);
  const RIDistribution two(3, RadialDistribution::atoms({1.0, 2.0}, {0.5, 0.5}));
  for (int i = 0; i < 200; ++i) {
    const double r = norm(sample_ri(two, rng));
    const bool ok = std::fabs(r - 1.0) <= 1e-9 || std::fabs(r - 2.0) <= 2e-9;
    REQUIRE(ok);
  }
  const int n = 7;
  const RIDistribution point(
      n, RadialDistribution::atoms({std::sqrt(double(n))}, {1.0}));
  REQUIRE(std::fabs(norm(sample_ri(point, rng)) - std::sqrt(double(n))) <= 1e-9);
}

TEST_CASE("isotropic rescale fixes the second moment") {
  // point-mass {2}, n=4: effective radius becomes sqrt(4) = 2.
  const RIDistribution a(4, RadialDistribution::atoms({2.0}, {1.0}));
  const RIDistribution ai = isotropic_rescale(a);
  REQUIRE(ai.max_radius() == Catch::Approx(2.0).margin(1e-12));

  // two-sphere {1,3} equal weight, n=5: direct moment oracle.
  const RIDistribution b(5, RadialDistribution::atoms({1.0, 3.0}, {0.5, 0.5}));
  const RIDistribution bi = isotropic_rescale(b);
  double m2 = 0.0;
  for (std::size_t i = 0; i < bi.radial.size(); ++i) {
    const double r = bi.scale * bi.radial.radii()[i];
    m2 += bi.radial.weights()[i] * r * r;
  }
  REQUIRE(m2 == Catch::Approx(5.0).margin(1e-12));

  // idempotence
  const RIDistribution bii = isotropic_rescale(bi);
  REQUIRE(bii.scale == Catch::Approx(bi.scale).margin(1e-12 * bi.scale));

  // empirical check of E||x||^2 = n
  RngStream rng(14);
  const int m = 100000;
  double s = 0.0, s2 = 0.0;
  for (int i = 0; i < m; ++i) {
    const double q = norm2(sample_ri(bi, rng));
    s += q;
    s2 += q * q;
  }
  const double mean = s / m;
  const double sd = std::sqrt(std::max(0.0, s2 / m - mean * mean) / m);
  REQUIRE(std::fabs(mean - 5.0) <= 3.0 * sd);

  const RIDistribution zero_ok(3, RadialDistribution::atoms({0.0, 1.0}, {0.5, 0.5}));
  REQUIRE_NOTHROW(isotropic_rescale(zero_ok));
}

TEST_CASE("restrict_to_ring") {
  const RIDistribution two(3, RadialDistribution::atoms({1.0, 2.0}, {0.5, 0.5}));
  const auto ring = restrict_to_ring(two, 1.5, 3.0);
  REQUIRE(ring.mass == Catch::Approx(0.5).margin(1e-12));
  REQUIRE(ring.dist.has_value());
  REQUIRE(ring.dist->radial.size() == 1);
  REQUIRE(ring.dist->max_radius() == Catch::Approx(2.0).margin(1e-12));

  const auto empty = restrict_to_ring(two, 2.5, 3.0);
  REQUIRE(empty.mass == 0.0);
  REQUIRE_FALSE(empty.dist.has_value());

  // gridded radial on [0,4], ring [1,2): mass equals the direct atom sum.
  const RIDistribution grid(4, RadialDistribution::uniform_interval(0.0, 4.0, 256));
  const auto mid = restrict_to_ring(grid, 1.0, 2.0);
  REQUIRE(mid.mass == Catch::Approx(grid.radial.mass_in(1.0, 2.0)).margin(1e-15));

  // masses over a full partition sum to 1
  double total = 0.0;
  for (double lo = 0.0; lo < 8.0; lo += 0.5) {
    total += restrict_to_ring(grid, lo, lo + 0.5).mass;
  }
  REQUIRE(total == Catch::Approx(1.0).margin(1e-9));
}

TEST_CASE("projection_tail examples") {
  const RIDistribution mix(
      6, RadialDistribution::atoms({0.7, 1.3, 2.0}, {0.25, 0.5, 0.25}));
  REQUIRE(projection_tail(mix, 0.0) == Catch::Approx(0.5).margin(1e-9));

  // unit sphere n=3: projection uniform on [-1,1], so tail(0.5) = 0.25.
  REQUIRE(projection_tail(unit_sphere(3), 0.5) ==
          Catch::Approx(0.25).margin(1e-9));

  const int n = 100;
  const double t = 2.0, r = std::sqrt(double(n));
  const double bound = std::sqrt(2.0) * std::exp(-t * t * (n - 2) / (2.0 * r * r));
  REQUIRE(projection_tail(sphere_sqrt_n(n), t) <= bound);
}

TEST_CASE("beta and quadrature tails agree") {
  RngStream rng(15);
  for (int n : {2, 3, 4, 7, 16, 51, 100}) {
    for (double t : {-0.9, -0.3, 0.0, 0.2, 0.5, 0.8, 0.99}) {
      const double a = sphere_proj_tail(n, 1.0, t);
      const double b = sphere_proj_tail_quad(n, 1.0, t);
      REQUIRE(a == Catch::Approx(b).margin(1e-8));
    }
  }
}

TEST_CASE("sphere tail bound (paper constant)") {
  for (int n : {4, 16, 100}) {
    const double r = std::sqrt(double(n));
    for (double t : {0.5, 1.0, 2.0}) {
      const double tail = sphere_proj_tail(n, r, t);
      REQUIRE(tail <= std::sqrt(2.0) * std::exp(-t * t * n / (4.0 * r * r)));
    }
  }
}

TEST_CASE("sphere density bound at r = sqrt(n)") {
  for (int n : {4, 5, 16, 100}) {
    const double r = std::sqrt(double(n));
    for (int i = 0; i <= 1000; ++i) {
      const double x = -r + 2.0 * r * i / 1000.0;
      const double d = sphere_proj_density(n, r, x);
      REQUIRE(d <= (1.0 / std::sqrt(2.0 * kPi)) * std::exp(-x * x / 4.0) + 1e-12);
    }
  }
}

TEST_CASE("rotation invariance via two-sample KS") {
  RngStream rng(16);
  const RIDistribution dist = isotropic_rescale(
      RIDistribution(8, RadialDistribution::atoms({0.5, 1.0, 1.7}, {0.3, 0.4, 0.3})));
  const Vec u = normalized(Vec{1, 1, 1, 1, 1, 1, 1, 1});
  const Vec v = normalized(Vec{1, -1, 0.5, 0, 2, -0.3, 0, 1});
  const int m = 100000;
  std::vector<double> pu(m), pv(m);
  Vec x;
  for (int i = 0; i < m; ++i) {
    sample_ri(dist, rng, x);
    pu[std::size_t(i)] = dot(u, x);
    pv[std::size_t(i)] = dot(v, x);
  }
  REQUIRE(ks_two_sample_pass(pu, pv, 0.001));
}

TEST_CASE("width of the uniform projection") {
  // Unit sphere in R^3 projects to uniform on [-1,1]; interval mass = r.
  const Projection1D proj = Projection1D::analytic(unit_sphere(3));
  const double w = width(proj, 0.3);
  REQUIRE(w == Catch::Approx(0.3).margin(2e-3));
}

TEST_CASE("width with a dominating atom is zero") {
  const RIDistribution dist(
      3, RadialDistribution::atoms({0.0, 1.0}, {0.5, 0.5}));
  const Projection1D proj = Projection1D::analytic(dist);
  REQUIRE(width(proj, 0.3) == 0.0);
}

TEST_CASE("bounded RI width lower bound") {
  for (int n : {4, 9, 25}) {
    const double R = std::sqrt(double(n));
    for (double C : {0.3, 0.5, 0.8}) {
      const RIDistribution dist(
          n, RadialDistribution::atoms({C * R, R}, {0.5, 0.5}));
      const Projection1D proj = Projection1D::analytic(dist);
      for (double eps : {0.1, 0.3}) {
        const double w = width(proj, eps);
        REQUIRE(w >= C * eps * std::sqrt(kPi / 2.0) - 2e-3);
      }
    }
  }
}

TEST_CASE("width is monotone in eps and positive below the atom mass") {
  // Log-uniform radii, isotropic.
  std::vector<double> radii;
  std::vector<double> weights;
  const int cells = 64;
  for (int i = 0; i < cells; ++i) {
    radii.push_back(std::exp(-1.0 + 2.0 * i / double(cells - 1)));
    weights.push_back(1.0 / cells);
  }
  const RIDistribution dist = isotropic_rescale(
      RIDistribution(6, RadialDistribution::grid(radii, weights)));
  const Projection1D proj = Projection1D::analytic(dist);
  double prev = 0.0;
  for (double eps : {0.05, 0.1, 0.2, 0.4, 0.6}) {
    const double w = width(proj, eps);
    REQUIRE(w >= prev - 1e-9);
    REQUIRE(w > 0.0);
    prev = w;
  }
}

TEST_CASE("radial invariant violations throw") {
  REQUIRE_THROWS(RadialDistribution::atoms({1.0}, {0.9}));
  REQUIRE_THROWS(RadialDistribution::atoms({-1.0}, {1.0}));
  // all mass at radius zero: degenerate, rejected at construction
  REQUIRE_THROWS(RadialDistribution::atoms({0.0}, {1.0}));
  REQUIRE_THROWS(RadialDistribution::atoms({0.0, 1.0}, {1.0, 0.0}));
}
