#ifndef LIMITLBM_MOMENTS_HPP_
#define LIMITLBM_MOMENTS_HPP_

#include <span>

#include "limitlbm/equilibrium.hpp"
#include "limitlbm/lattice.hpp"
#include "limitlbm/scaling.hpp"
#include "limitlbm/types.hpp"

namespace limitlbm {

struct MomentSet {
  double n = 0.0;
  Vec u{};
  Mat stress{};         // P = sum (v_i - u)(v_i - u) f_i
  double pressure = 0.0;  // trace(P) / d
};

// n = sum f_i and u = sum (e_i / h) f_i / n, summed in ascending i.
// Throws DegenerateDensity if n <= 0.
MacroState macroscopic_moments(std::span<const double> f, const Stencil &s,
                               const ScalingParams &sc);

// Centered second moment in physical units (m = 1).
Mat stress_tensor(std::span<const double> f, const Stencil &s,
                  const ScalingParams &sc);

MomentSet moment_set(std::span<const double> f, const Stencil &s,
                     const ScalingParams &sc);

// p I - 2 nu rho D. Throws DomainError if D is not symmetric.
Mat newtonian_target(double pressure, double rho, double nu, const Mat &strain,
                     int d);

// Deviatoric part P - (trace(P) / d) I.
Mat deviatoric(const Mat &m, int d);

}  // namespace limitlbm

#endif  // LIMITLBM_MOMENTS_HPP_
