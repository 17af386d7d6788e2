#include <catch2/catch_amalgamated.hpp>

#include "htester/rng.hpp"

using namespace htester;

TEST_CASE("streams are deterministic and reproducible") {
  RngStream a = RngStream::derive(42, 7);
  RngStream b = RngStream::derive(42, 7);
  for (int i = 0; i < 100; ++i) {
    REQUIRE(a.next_u64() == b.next_u64());
  }
}

TEST_CASE("distinct stream indices decorrelate") {
  RngStream a = RngStream::derive(42, 0);
  RngStream b = RngStream::derive(42, 1);
  int equal = 0;
  for (int i = 0; i < 1000; ++i) {
    if (a.next_u64() == b.next_u64()) ++equal;
  }
  REQUIRE(equal == 0);
}

TEST_CASE("uniform lies in [0,1)") {
  RngStream r(1);
  for (int i = 0; i < 10000; ++i) {
    const double u = r.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
  }
}

TEST_CASE("normal moments") {
  RngStream r(3);
  const int n = 200000;
  double s = 0.0, s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double g = r.normal();
    s += g;
    s2 += g * g;
  }
  const double mean = s / n;
  const double var = s2 / n - mean * mean;
  REQUIRE(std::fabs(mean) < 0.01);
  REQUIRE(std::fabs(var - 1.0) < 0.02);
}

TEST_CASE("hash_u64 is order sensitive") {
  REQUIRE(hash_u64(1, 2) != hash_u64(2, 1));
  REQUIRE(hash_u64(0, 0) != hash_u64(0, 1));
}

TEST_CASE("below is within range") {
  RngStream r(9);
  for (int i = 0; i < 1000; ++i) {
    REQUIRE(r.below(13) < 13);
  }
}
