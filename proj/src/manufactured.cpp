#include "limitlbm/manufactured.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "limitlbm/errors.hpp"

namespace limitlbm {

namespace {

void RequirePositive(double value, const char *name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw DomainError(std::string(name) + " must be positive, got " +
                      std::to_string(value));
  }
}

}  // namespace

AnalyticFlow::AnalyticFlow(Metadata meta, Evaluators eval)
    : meta_(std::move(meta)), eval_(std::move(eval)) {}

Mat AnalyticFlow::rate_of_strain(double t, const Vec &x) const {
  const Mat g = velocity_gradient(t, x);
  Mat strain{};
  for (int a = 0; a < meta_.d; ++a)
    for (int b = 0; b < meta_.d; ++b)
      strain[a][b] = 0.5 * (g[a][b] + g[b][a]);
  return strain;
}

AnalyticFlow taylor_green_2d(double velocity, double length, double nu) {
  RequirePositive(velocity, "U");
  RequirePositive(length, "L");
  RequirePositive(nu, "nu");
  const double U = velocity;
  const double k = 2.0 * std::numbers::pi / length;
  const double rate = 2.0 * nu * k * k;
  auto decay = [rate](double t) { return std::exp(-rate * t); };

  AnalyticFlow::Evaluators ev;
  ev.density = [](double, const Vec &) { return 1.0; };
  ev.density_gradient = [](double, const Vec &) { return Vec{}; };
  ev.velocity = [=](double t, const Vec &x) {
    const double f = decay(t);
    return Vec{-U * std::cos(k * x[0]) * std::sin(k * x[1]) * f,
               U * std::sin(k * x[0]) * std::cos(k * x[1]) * f, 0.0};
  };
  ev.velocity_gradient = [=](double t, const Vec &x) {
    const double f = U * k * decay(t);
    const double cx = std::cos(k * x[0]), sx = std::sin(k * x[0]);
    const double cy = std::cos(k * x[1]), sy = std::sin(k * x[1]);
    Mat g{};
    g[0][0] = sx * sy * f;
    g[0][1] = -cx * cy * f;
    g[1][0] = cx * cy * f;
    g[1][1] = -sx * sy * f;
    return g;
  };
  ev.velocity_time_derivative = [=](double t, const Vec &x) {
    Vec u = ev.velocity(t, x);
    for (double &c : u) c *= -rate;
    return u;
  };
  ev.pressure = [=](double t, const Vec &x) {
    const double f = decay(t);
    return -0.25 * U * U *
           (std::cos(2.0 * k * x[0]) + std::cos(2.0 * k * x[1])) * f * f;
  };
  ev.pressure_gradient = [=](double t, const Vec &x) {
    const double f = decay(t);
    const double s = 0.5 * U * U * k * f * f;
    return Vec{s * std::sin(2.0 * k * x[0]), s * std::sin(2.0 * k * x[1]),
               0.0};
  };
  return AnalyticFlow({"taylor_green_2d", 2, U, length, nu, k}, std::move(ev));
}

AnalyticFlow shear_wave(double amplitude, double wavenumber, double nu,
                        int d) {
  RequirePositive(amplitude, "A");
  RequirePositive(wavenumber, "k");
  RequirePositive(nu, "nu");
  if (d != 2 && d != 3) throw DomainError("shear_wave: d must be 2 or 3");
  const double A = amplitude, k = wavenumber;
  const double rate = nu * k * k;

  AnalyticFlow::Evaluators ev;
  ev.density = [](double, const Vec &) { return 1.0; };
  ev.density_gradient = [](double, const Vec &) { return Vec{}; };
  ev.velocity = [=](double t, const Vec &x) {
    return Vec{0.0, A * std::sin(k * x[0]) * std::exp(-rate * t), 0.0};
  };
  ev.velocity_gradient = [=](double t, const Vec &x) {
    Mat g{};
    g[1][0] = A * k * std::cos(k * x[0]) * std::exp(-rate * t);
    return g;
  };
  ev.velocity_time_derivative = [=](double t, const Vec &x) {
    return Vec{0.0, -rate * A * std::sin(k * x[0]) * std::exp(-rate * t), 0.0};
  };
  ev.pressure = [](double, const Vec &) { return 0.0; };
  ev.pressure_gradient = [](double, const Vec &) { return Vec{}; };
  const double length = 2.0 * std::numbers::pi / k;
  return AnalyticFlow({d == 3 ? "shear_wave_3d" : "shear_wave_2d", d, A, length,
                       nu, k},
                      std::move(ev));
}

AnalyticFlow uniform_flow(int d, double density, Vec velocity, double length) {
  if (d != 2 && d != 3) throw DomainError("uniform_flow: d must be 2 or 3");
  RequirePositive(density, "density");
  RequirePositive(length, "L");
  AnalyticFlow::Evaluators ev;
  ev.density = [=](double, const Vec &) { return density; };
  ev.density_gradient = [](double, const Vec &) { return Vec{}; };
  ev.velocity = [=](double, const Vec &) { return velocity; };
  ev.velocity_gradient = [](double, const Vec &) { return Mat{}; };
  ev.velocity_time_derivative = [](double, const Vec &) { return Vec{}; };
  ev.pressure = [](double, const Vec &) { return 0.0; };
  ev.pressure_gradient = [](double, const Vec &) { return Vec{}; };
  double speed = 0.0;
  for (int k = 0; k < d; ++k) speed = std::max(speed, std::abs(velocity[k]));
  return AnalyticFlow({"uniform", d, speed, length, 0.0, 0.0}, std::move(ev));
}

MacroState lattice_state(const AnalyticFlow &flow, double t, const Vec &x,
                         const ScalingParams &sc) {
  MacroState m;
  const double rho = flow.density(t, x);
  m.n = rho * (1.0 + flow.pressure(t, x) / sc.rt());
  m.u = flow.velocity(t, x);
  return m;
}

MaterialTerms material_derivative_terms(const AnalyticFlow &flow, double t,
                                        const Vec &x, const Vec &v,
                                        const ScalingParams &sc) {
  const int d = flow.dim();
  const double h2 = sc.h() * sc.h();
  const Vec u = flow.velocity(t, x);
  const Mat grad_u = flow.velocity_gradient(t, x);
  const Vec grad_rho = flow.density_gradient(t, x);
  const Vec dudt = flow.velocity_time_derivative(t, x);
  const Vec force = flow.force(t, x);
  const double rho = flow.density(t, x);

  Vec c{};
  for (int k = 0; k < d; ++k) c[k] = v[k] - u[k];

  double convective = 0.0;  // c . (v . grad) u
  for (int a = 0; a < d; ++a) {
    double dir = 0.0;
    for (int b = 0; b < d; ++b) dir += v[b] * grad_u[a][b];
    convective += c[a] * dir;
  }

  MaterialTerms m;
  m.a = Trace(grad_u, d);
  m.b = Dot(c, grad_rho, d) / rho;
  m.c_term = 3.0 * h2 * Dot(c, dudt, d);
  m.d_term = 3.0 * h2 * convective;
  m.e = 3.0 * h2 / sc.mass() * Dot(c, force, d);
  return m;
}

PopulationField ce_populations(const AnalyticFlow &flow, double t,
                               const Grid &grid, const Stencil &s,
                               const ScalingParams &sc) {
  if (grid.d != s.d || flow.dim() != s.d) {
    throw DimensionMismatch("ce_populations: flow, grid and stencil must share "
                            "one dimension");
  }
  PopulationField f(grid, s.q);
  const double h = sc.h();
  const double prefactor = 3.0 * sc.nu() * h * h;
  std::vector<double> eq(s.q);
  for (std::size_t node = 0; node < grid.node_count(); ++node) {
    const Vec x = grid.position(node);
    const MacroState state = lattice_state(flow, t, x, sc);
    eq = lattice_equilibrium(state, s, sc);
    for (int i = 0; i < s.q; ++i) {
      Vec v{};
      for (int k = 0; k < s.d; ++k) v[k] = s.e[i][k] / h;
      const MaterialTerms m = material_derivative_terms(flow, t, x, v, sc);
      f.at(i, node) = eq[i] * (1.0 - prefactor * m.sum());
    }
  }
  return f;
}

}  // namespace limitlbm
