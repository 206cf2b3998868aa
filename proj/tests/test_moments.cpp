#include <cmath>
#include <vector>

#include "catch_amalgamated.hpp"
#include "limitlbm/equilibrium.hpp"
#include "limitlbm/errors.hpp"
#include "limitlbm/moments.hpp"
#include "support.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using namespace limitlbm;

TEST_CASE("density and velocity moments", "[moments]") {
  const Stencil s = d3q19();
  const ScalingParams sc = make_scaling(0.1, 0.05);
  SECTION("weights alone") {
    const MacroState m = macroscopic_moments(s.t, s, sc);
    CHECK_THAT(m.n, WithinAbs(1.0, 1e-15));
    for (double c : m.u) CHECK(c == 0.0);
  }
  SECTION("equilibrium round trip") {
    testing::Rng rng(1);
    for (int k = 0; k < 200; ++k) {
      const MacroState st{rng.uniform(0.5, 2.0), rng.ball(3, 0.3 / sc.h())};
      const MacroState back =
          macroscopic_moments(lattice_equilibrium(st, s, sc), s, sc);
      CHECK_THAT(back.n, WithinRel(st.n, 1e-13));
      for (int a = 0; a < 3; ++a)
        CHECK_THAT(back.u[a], WithinAbs(st.u[a], 1e-13 / sc.h()));
    }
  }
  SECTION("single population") {
    std::vector<double> f(s.q, 0.0);
    f[1] = 1.0;
    const MacroState m = macroscopic_moments(f, s, sc);
    CHECK(m.n == 1.0);
    CHECK(m.u[0] == 1.0 / sc.h());
    CHECK(m.u[1] == 0.0);
    CHECK(m.u[2] == 0.0);
  }
  SECTION("degenerate density") {
    std::vector<double> f(s.q, 0.0);
    CHECK_THROWS_AS(macroscopic_moments(f, s, sc), DegenerateDensity);
    f[3] = -1.0;
    CHECK_THROWS_AS(macroscopic_moments(f, s, sc), DegenerateDensity);
    CHECK_THROWS_AS(stress_tensor(f, s, sc), DegenerateDensity);
  }
}

TEST_CASE("stress of the rest equilibrium is isotropic", "[moments]") {
  for (const Stencil &s : {d2q9(), d3q19()}) {
    for (double h : {0.1, 0.02}) {
      const ScalingParams sc = make_scaling(0.1, h);
      const auto eq = lattice_equilibrium(MacroState{1.0, {}}, s, sc);
      const Mat p = stress_tensor(eq, s, sc);
      for (int a = 0; a < s.d; ++a)
        for (int b = 0; b < s.d; ++b)
          CHECK_THAT(p[a][b], WithinAbs(a == b ? 1.0 / (3.0 * h * h) : 0.0,
                                        1e-12 / (h * h)));
      const MomentSet ms = moment_set(eq, s, sc);
      CHECK_THAT(ms.pressure, WithinRel(ms.n * sc.rt(), 1e-12));
    }
  }
}

TEST_CASE("moment set invariants", "[moments][property]") {
  testing::Rng rng(99);
  for (const Stencil &s : {d2q9(), d3q19()}) {
    const ScalingParams sc = make_scaling(0.1, 0.05);
    for (int k = 0; k < 300; ++k) {
      const auto f = testing::near_equilibrium(s, rng, 0.3);
      const MomentSet ms = moment_set(f, s, sc);
      // Symmetry and p = trace / d.
      for (int a = 0; a < s.d; ++a)
        for (int b = 0; b < s.d; ++b)
          CHECK_THAT(ms.stress[a][b],
                     WithinRel(ms.stress[b][a], 1e-13));
      CHECK_THAT(ms.pressure, WithinRel(Trace(ms.stress, s.d) / s.d, 1e-14));
      // Raw second moment minus n u u.
      Mat raw{};
      for (int i = 0; i < s.q; ++i)
        for (int a = 0; a < s.d; ++a)
          for (int b = 0; b < s.d; ++b)
            raw[a][b] += (s.e[i][a] / sc.h()) * (s.e[i][b] / sc.h()) * f[i];
      const double scale = ms.pressure;
      for (int a = 0; a < s.d; ++a)
        for (int b = 0; b < s.d; ++b)
          CHECK_THAT(raw[a][b] - ms.n * ms.u[a] * ms.u[b],
                     WithinAbs(ms.stress[a][b], 1e-12 * scale));
      // Reflecting every velocity leaves the centered stress unchanged.
      std::vector<double> reflected(s.q);
      for (int i = 0; i < s.q; ++i) reflected[i] = f[s.opposite[i]];
      const Mat pr = stress_tensor(reflected, s, sc);
      for (int a = 0; a < s.d; ++a)
        for (int b = 0; b < s.d; ++b)
          CHECK_THAT(pr[a][b], WithinAbs(ms.stress[a][b], 1e-12 * scale));
    }
  }
}

TEST_CASE("equilibrium pressure is positive", "[moments][property]") {
  testing::Rng rng(4);
  const Stencil s = d3q19();
  for (int k = 0; k < 200; ++k) {
    const ScalingParams sc = make_scaling(0.1, rng.uniform(0.01, 0.2));
    const MacroState st{rng.uniform(0.1, 3.0), rng.ball(3, 0.2 / sc.h())};
    CHECK(moment_set(lattice_equilibrium(st, s, sc), s, sc).pressure > 0.0);
  }
}

TEST_CASE("Newtonian stress target", "[moments]") {
  const double p = 2.5, rho = 1.2, nu = 0.03;
  SECTION("static fluid") {
    const Mat t = newtonian_target(p, rho, nu, Mat{}, 3);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) CHECK(t[a][b] == (a == b ? p : 0.0));
  }
  SECTION("traceless strain keeps trace d p") {
    Mat strain{};
    strain[0][0] = 0.4, strain[1][1] = -0.1, strain[2][2] = -0.3;
    strain[0][2] = strain[2][0] = 0.7;
    CHECK_THAT(Trace(newtonian_target(p, rho, nu, strain, 3), 3),
               WithinRel(3.0 * p, 1e-15));
  }
  SECTION("pure shear") {
    const double gamma = 0.8;
    Mat strain{};
    strain[0][1] = strain[1][0] = gamma / 2.0;
    const Mat t = newtonian_target(p, rho, nu, strain, 2);
    CHECK_THAT(t[0][1], WithinRel(-nu * rho * gamma, 1e-15));
  }
  SECTION("asymmetric strain") {
    Mat strain{};
    strain[0][1] = 1.0;
    CHECK_THROWS_AS(newtonian_target(p, rho, nu, strain, 2), DomainError);
  }
  SECTION("deviatoric part is traceless") {
    Mat m{};
    m[0][0] = 3.0, m[1][1] = 1.0, m[2][2] = -7.0, m[0][1] = m[1][0] = 2.0;
    for (int d : {2, 3}) {
      const Mat dev = deviatoric(m, d);
      CHECK_THAT(Trace(dev, d), WithinAbs(0.0, 1e-15));
      CHECK(dev[0][1] == 2.0);
    }
  }
}
