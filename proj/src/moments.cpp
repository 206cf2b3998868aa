#include "limitlbm/moments.hpp"

#include <algorithm>
#include <cmath>

#include "limitlbm/errors.hpp"

namespace limitlbm {

namespace {

// Density and lattice velocity w = h u.
double DensityAndLatticeVelocity(std::span<const double> f, const Stencil &s,
                                 Vec &w) {
  double n = 0.0;
  Vec j{};
  for (int i = 0; i < s.q; ++i) {
    n += f[i];
    for (int k = 0; k < s.d; ++k) j[k] += s.e[i][k] * f[i];
  }
  if (!(n > 0.0)) {
    throw DegenerateDensity("non-positive density " + std::to_string(n));
  }
  w = Vec{};
  for (int k = 0; k < s.d; ++k) w[k] = j[k] / n;
  return n;
}

}  // namespace

MacroState macroscopic_moments(std::span<const double> f, const Stencil &s,
                               const ScalingParams &sc) {
  Vec w;
  MacroState m;
  m.n = DensityAndLatticeVelocity(f, s, w);
  for (int k = 0; k < s.d; ++k) m.u[k] = w[k] / sc.h();
  return m;
}

Mat stress_tensor(std::span<const double> f, const Stencil &s,
                  const ScalingParams &sc) {
  Vec w;
  DensityAndLatticeVelocity(f, s, w);
  Mat p{};
  for (int i = 0; i < s.q; ++i) {
    Vec c{};
    for (int k = 0; k < s.d; ++k) c[k] = s.e[i][k] - w[k];
    for (int a = 0; a < s.d; ++a)
      for (int b = 0; b < s.d; ++b) p[a][b] += c[a] * c[b] * f[i];
  }
  const double inv_h2 = 1.0 / (sc.h() * sc.h());
  for (int a = 0; a < s.d; ++a)
    for (int b = 0; b < s.d; ++b) p[a][b] *= inv_h2;
  return p;
}

MomentSet moment_set(std::span<const double> f, const Stencil &s,
                     const ScalingParams &sc) {
  MomentSet m;
  const MacroState macro = macroscopic_moments(f, s, sc);
  m.n = macro.n;
  m.u = macro.u;
  m.stress = stress_tensor(f, s, sc);
  m.pressure = Trace(m.stress, s.d) / s.d;
  return m;
}

Mat newtonian_target(double pressure, double rho, double nu, const Mat &strain,
                     int d) {
  double scale = 0.0;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) scale = std::max(scale, std::abs(strain[a][b]));
  for (int a = 0; a < d; ++a) {
    for (int b = a + 1; b < d; ++b) {
      if (std::abs(strain[a][b] - strain[b][a]) > 1e-13 * scale) {
        throw DomainError("rate-of-strain tensor must be symmetric");
      }
    }
  }
  Mat p{};
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      p[a][b] = -2.0 * nu * rho * strain[a][b];
    }
    p[a][a] += pressure;
  }
  return p;
}

Mat deviatoric(const Mat &m, int d) {
  Mat out = m;
  const double mean = Trace(m, d) / d;
  for (int a = 0; a < d; ++a) out[a][a] -= mean;
  return out;
}

}  // namespace limitlbm
