#include "doctest.h"

#include <cmath>
#include <random>
#include <stdexcept>

#include "helio/wealth.hpp"

using namespace helio;

TEST_CASE("magnitudes: pythagorean examples") {
  Magnitudes m1 = magnitudes({3, 4, 0, 0});
  CHECK(m1.m == doctest::Approx(5.0));
  CHECK(m1.t == doctest::Approx(0.0));

  Magnitudes m2 = magnitudes({0, 0, 6, 8});
  CHECK(m2.m == doctest::Approx(0.0));
  CHECK(m2.t == doctest::Approx(10.0));

  Magnitudes m3 = magnitudes({1, 1, 1, 1});
  CHECK(m3.m == doctest::Approx(std::sqrt(2.0)));
  CHECK(m3.t == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("magnitudes are absolutely homogeneous") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> comp(-10.0, 10.0);
  for (int i = 0; i < 200; ++i) {
    WealthVector v{comp(rng), comp(rng), comp(rng), comp(rng)};
    double c = comp(rng);
    Magnitudes base = magnitudes(v);
    Magnitudes scaled = magnitudes(v * c);
    CHECK(scaled.m == doctest::Approx(std::abs(c) * base.m));
    CHECK(scaled.t == doctest::Approx(std::abs(c) * base.t));
  }
}

TEST_CASE("rescale: identity and axis scaling") {
  WealthVector v{1, 0, 0, 0};
  CHECK(rescale(v, {1, 1, 1}) == v);
  WealthVector r = rescale(v, {2, 1, 1});
  CHECK(r.kr == doctest::Approx(2.0));
  CHECK(r.lr == 0.0);

  WealthVector t = rescale({0, 0, 3, 4}, {1, 1, 1.1});
  CHECK(t.time_magnitude() == doctest::Approx(5.5));
}

TEST_CASE("rescale rejects non-positive scales") {
  CHECK_THROWS_AS(rescale({1, 1, 1, 1}, {0, 1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(rescale({1, 1, 1, 1}, {1, -2, 1}), std::invalid_argument);
  CHECK_THROWS_AS(rescale({1, 1, 1, 1}, {1, 1, 0}), std::invalid_argument);
}

TEST_CASE("rescale composes multiplicatively and preserves signs") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> comp(-5.0, 5.0);
  std::uniform_real_distribution<double> scale(0.1, 3.0);
  for (int i = 0; i < 200; ++i) {
    WealthVector v{comp(rng), comp(rng), comp(rng), comp(rng)};
    BasisScale s1{scale(rng), scale(rng), scale(rng)};
    BasisScale s2{scale(rng), scale(rng), scale(rng)};
    WealthVector twice = rescale(rescale(v, s1), s2);
    WealthVector once = rescale(v, s1.composed(s2));
    CHECK(twice.kr == doctest::Approx(once.kr));
    CHECK(twice.lr == doctest::Approx(once.lr));
    CHECK(twice.ks == doctest::Approx(once.ks));
    CHECK(twice.ls == doctest::Approx(once.ls));
    CHECK(std::signbit(twice.kr) == std::signbit(v.kr));
    CHECK(std::signbit(twice.lr) == std::signbit(v.lr));
    CHECK(std::signbit(twice.ks) == std::signbit(v.ks));
    CHECK(std::signbit(twice.ls) == std::signbit(v.ls));
  }
}
