#include <cmath>
#include <numbers>

#include "catch_amalgamated.hpp"
#include "limitlbm/errors.hpp"
#include "limitlbm/scaling.hpp"

using Catch::Matchers::WithinRel;
using namespace limitlbm;

TEST_CASE("make_scaling derives the relaxation parameters", "[scaling]") {
  const ScalingParams s = make_scaling(1.0 / 6.0, 0.1);
  CHECK(s.omega() == 1.0);
  CHECK_THAT(s.tau(), WithinRel(0.005, 1e-15));
  CHECK_THAT(s.sound_speed(), WithinRel(10.0, 1e-15));
  CHECK(s.mass() == 1.0);

  const ScalingParams t = make_scaling(0.02, 0.05);
  CHECK_THAT(t.rt(), WithinRel(400.0 / 3.0, 1e-15));
  // c_s = sqrt(3 RT)
  CHECK_THAT(t.sound_speed(), WithinRel(std::sqrt(3.0 * t.rt()), 1e-15));
}

TEST_CASE("make_scaling rejects non-positive input", "[scaling]") {
  CHECK_THROWS_AS(make_scaling(0.0, 0.1), DomainError);
  CHECK_THROWS_AS(make_scaling(-1.0, 0.1), DomainError);
  CHECK_THROWS_AS(make_scaling(0.1, 0.0), DomainError);
  CHECK_THROWS_AS(make_scaling(0.1, -0.5), DomainError);
  CHECK_THROWS_AS(make_scaling(std::nan(""), 0.1), DomainError);
}

TEST_CASE("omega is monotone in nu and stays inside (0, 2)", "[scaling]") {
  double prev = 2.0;
  for (int k = -12; k <= 12; ++k) {
    const double nu = std::pow(10.0, k / 2.0);
    const double omega = make_scaling(nu, 0.1).omega();
    CHECK(omega > 0.0);
    CHECK(omega < 2.0);
    CHECK(omega < prev);
    prev = omega;
  }
  CHECK_THAT(make_scaling(1e-12, 0.1).omega(), WithinRel(2.0, 1e-10));
  CHECK(make_scaling(1e12, 0.1).omega() < 1e-11);
}

TEST_CASE("tau / h^2 = 3 nu for every h", "[scaling]") {
  const double nu = 0.037;
  for (int k = 0; k < 10; ++k) {
    const double h = 0.5 / (1 << k) * (1.0 + 0.1 * k);
    const ScalingParams s = make_scaling(nu, h);
    CHECK_THAT(s.tau() / (h * h), WithinRel(3.0 * nu, 1e-14));
  }
}

TEST_CASE("nondimensional numbers", "[scaling]") {
  const double root = std::sqrt(24.0 / std::numbers::pi);
  SECTION("Re Kn / Ma is a pure number") {
    for (double nu : {1e-3, 0.02, 0.5, 3.0}) {
      for (double h : {0.3, 0.01, 1e-4}) {
        const auto c = nondimensional_numbers(1.0, 1.0, nu, h);
        CHECK_THAT(c.reynolds * c.knudsen / c.mach, WithinRel(root, 1e-12));
      }
    }
    CHECK_THAT(root, WithinRel(2.763953, 1e-6));
  }
  SECTION("Re = UL / nu") {
    const auto c = nondimensional_numbers(1.0, 1.0, 0.1, 0.01);
    CHECK_THAT(c.reynolds, WithinRel(10.0, 1e-14));
  }
  SECTION("Ma is linear in h") {
    const auto a = nondimensional_numbers(0.7, 2.0, 0.05, 0.1);
    const auto b = nondimensional_numbers(0.7, 2.0, 0.05, 0.05);
    CHECK_THAT(b.mach, WithinRel(0.5 * a.mach, 1e-15));
  }
  SECTION("mean free path and thermal speed") {
    const auto c = nondimensional_numbers(2.0, 3.0, 0.1, 0.02);
    CHECK_THAT(c.mean_free_path, WithinRel(root * 0.1 * 0.02, 1e-14));
    CHECK_THAT(c.knudsen, WithinRel(c.mean_free_path / 3.0, 1e-14));
  }
  SECTION("non-positive input") {
    CHECK_THROWS_AS(nondimensional_numbers(0.0, 1.0, 0.1, 0.1), DomainError);
    CHECK_THROWS_AS(nondimensional_numbers(1.0, -1.0, 0.1, 0.1), DomainError);
    CHECK_THROWS_AS(nondimensional_numbers(1.0, 1.0, 0.0, 0.1), DomainError);
    CHECK_THROWS_AS(nondimensional_numbers(1.0, 1.0, 0.1, 0.0), DomainError);
  }
}
