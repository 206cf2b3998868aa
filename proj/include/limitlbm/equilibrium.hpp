#ifndef LIMITLBM_EQUILIBRIUM_HPP_
#define LIMITLBM_EQUILIBRIUM_HPP_

#include <span>
#include <vector>

#include "limitlbm/lattice.hpp"
#include "limitlbm/scaling.hpp"
#include "limitlbm/types.hpp"

namespace limitlbm {

// Particle density and (physical) velocity at one space-time point.
struct MacroState {
  double n = 1.0;
  Vec u{};
};

// h-parametrized Maxwellian
//   n h^d / ((2/3) pi)^(d/2) * exp(-(3/2) (v h - u h)^2)
// at the continuous velocity v.
double maxwellian_full(const MacroState &state, const Vec &v,
                       const ScalingParams &s, int d);

// Second-order truncation of maxwellian_full at v = vtil / h. The bracket
// [1 + 3h vtil.u - (3/2) h^2 u^2 + (9/2) h^2 (vtil.u)^2] multiplies the
// u-free Gaussian; the remainder is O(h^(d+3)).
double maxwellian_truncated(const MacroState &state, const Vec &vtil,
                            const ScalingParams &s, int d);

// ((2/3) pi)^(d/2) h^-d exp((3/2) vtil^2). Converts a continuous distribution
// into populations, f_i = t_i * w(vtil_i) * f(vtil_i / h).
double weight_function(const Vec &vtil, const ScalingParams &s, int d);

// Lattice Maxwellian t_i n [1 + 3 e.w - (3/2) w^2 + (9/2) (e.w)^2] with the
// lattice velocity w = h u. Writes s.q values into out.
inline void lattice_equilibrium_lu(double n, const Vec &w, const Stencil &s,
                                   std::span<double> out) {
  const double ww = Dot(w, w, s.d);
  for (int i = 0; i < s.q; ++i) {
    const double ew = s.e[i][0] * w[0] + s.e[i][1] * w[1] + s.e[i][2] * w[2];
    out[i] = s.t[i] * n * (1.0 + 3.0 * ew - 1.5 * ww + 4.5 * ew * ew);
  }
}

std::vector<double> lattice_equilibrium(const MacroState &state,
                                        const Stencil &s,
                                        const ScalingParams &sc);

struct SlopeFit {
  bool exact = false;  // every sampled error was exactly zero
  double slope = 0.0;
  std::vector<double> errors;
};

struct RemainderProbe {
  std::vector<double> hs;
  SlopeFit maxwellian;  // |M - M~| at fixed vtil, expected slope d+3
  SlopeFit density;     // |n - sum w_i M_i| / n, expected >= 3
  SlopeFit momentum;    // max_a |n u_a - sum w_i v_ia M_i| / n, expected >= 2
};

// Measures the truncation remainders of the equilibrium over a decreasing
// h-sequence. The moment sums use d2q9 for d = 2 and d3q19 for d = 3.
RemainderProbe remainder_probe(const MacroState &state, const Vec &vtil, int d,
                               std::span<const double> hs);

}  // namespace limitlbm

#endif  // LIMITLBM_EQUILIBRIUM_HPP_
