#ifndef LIMITLBM_MANUFACTURED_HPP_
#define LIMITLBM_MANUFACTURED_HPP_

#include <functional>
#include <string>

#include "limitlbm/equilibrium.hpp"
#include "limitlbm/grid.hpp"
#include "limitlbm/lattice.hpp"
#include "limitlbm/scaling.hpp"
#include "limitlbm/types.hpp"

namespace limitlbm {

/// Closed-form flow with analytic derivatives.
///
/// Velocity gradients are Jacobians, grad_u[a][b] = d u_a / d x_b. The
/// pressure is the kinematic NSE pressure (density-normalized).
class AnalyticFlow {
 public:
  using Scalar = std::function<double(double, const Vec &)>;
  using Vector = std::function<Vec(double, const Vec &)>;
  using Tensor = std::function<Mat(double, const Vec &)>;

  struct Evaluators {
    Scalar density;
    Vector density_gradient;
    Vector velocity;
    Tensor velocity_gradient;
    Vector velocity_time_derivative;
    Scalar pressure;
    Vector pressure_gradient;
  };

  struct Metadata {
    std::string name;
    int d = 0;
    double velocity_scale = 0.0;  // U
    double length = 0.0;          // L, also the periodic box size
    double nu = 0.0;
    double wavenumber = 0.0;      // k
  };

  AnalyticFlow(Metadata meta, Evaluators eval);

  const Metadata &meta() const { return meta_; }
  int dim() const { return meta_.d; }
  const std::string &name() const { return meta_.name; }

  double density(double t, const Vec &x) const { return eval_.density(t, x); }
  Vec density_gradient(double t, const Vec &x) const {
    return eval_.density_gradient(t, x);
  }
  Vec velocity(double t, const Vec &x) const { return eval_.velocity(t, x); }
  Mat velocity_gradient(double t, const Vec &x) const {
    return eval_.velocity_gradient(t, x);
  }
  Vec velocity_time_derivative(double t, const Vec &x) const {
    return eval_.velocity_time_derivative(t, x);
  }
  double pressure(double t, const Vec &x) const { return eval_.pressure(t, x); }
  Vec pressure_gradient(double t, const Vec &x) const {
    return eval_.pressure_gradient(t, x);
  }
  // External body force; always zero for the shipped flows.
  Vec force(double, const Vec &) const { return Vec{}; }

  // D = (grad u + grad u^T) / 2
  Mat rate_of_strain(double t, const Vec &x) const;

 private:
  Metadata meta_;
  Evaluators eval_;
};

// u = (-U cos(kx) sin(ky), U sin(kx) cos(ky)) exp(-2 nu k^2 t), k = 2 pi / L,
// rho = 1, p = -(U^2 / 4)(cos 2kx + cos 2ky) exp(-4 nu k^2 t).
AnalyticFlow taylor_green_2d(double velocity, double length, double nu);

// u = (0, A sin(kx) exp(-nu k^2 t), 0), rho = 1, p = 0.
AnalyticFlow shear_wave(double amplitude, double wavenumber, double nu,
                        int d = 3);

// rho = n, u = constant.
AnalyticFlow uniform_flow(int d, double density = 1.0, Vec velocity = {},
                          double length = 1.0);

// Lattice macrostate of the flow at a node: velocity u and particle density
// n = rho + p / RT, the ideal-gas density that carries the NSE pressure.
MacroState lattice_state(const AnalyticFlow &flow, double t, const Vec &x,
                         const ScalingParams &sc);

struct MaterialTerms {
  double a = 0.0;       // div u
  double b = 0.0;       // (c / rho) . grad rho
  double c_term = 0.0;  // 3 h^2 c . d_t u
  double d_term = 0.0;  // 3 h^2 c . (v . grad) u
  double e = 0.0;       // (3 h^2 / m) c . F

  // -a + b + c + d + e
  double sum() const { return -a + b + c_term + d_term + e; }
};

// Terms of (D/Dt) M^eq / M^eq for the continuous velocity v, with c = v - u.
MaterialTerms material_derivative_terms(const AnalyticFlow &flow, double t,
                                        const Vec &x, const Vec &v,
                                        const ScalingParams &sc);

// f_i = Mbar_i^eq [1 - 3 nu h^2 (-a + b + c + d + e)] at every node.
PopulationField ce_populations(const AnalyticFlow &flow, double t,
                               const Grid &grid, const Stencil &s,
                               const ScalingParams &sc);

}  // namespace limitlbm

#endif  // LIMITLBM_MANUFACTURED_HPP_
