#include "limitlbm/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "limitlbm/errors.hpp"
#include "limitlbm/fit.hpp"

namespace limitlbm {

namespace {

// n h^d / ((2/3) pi)^(d/2)
double GaussianPrefactor(double n, double h, int d) {
  return n * std::pow(h, d) / std::pow(2.0 * std::numbers::pi / 3.0, 0.5 * d);
}

// maxwellian_full at v = vtil / h, evaluated without forming v so that the
// u = 0 case agrees bitwise with maxwellian_truncated.
double MaxwellianAtLatticeVelocity(const MacroState &state, const Vec &vtil,
                                   double h, int d) {
  double sq = 0.0;
  for (int k = 0; k < d; ++k) {
    const double c = vtil[k] - state.u[k] * h;
    sq += c * c;
  }
  return GaussianPrefactor(state.n, h, d) * std::exp(-1.5 * sq);
}

SlopeFit Fit(std::span<const double> hs, std::vector<double> errors) {
  SlopeFit fit;
  fit.errors = std::move(errors);
  if (std::all_of(fit.errors.begin(), fit.errors.end(),
                  [](double e) { return e == 0.0; })) {
    fit.exact = true;
    return fit;
  }
  fit.slope = loglog_slope(hs, fit.errors);
  return fit;
}

}  // namespace

double maxwellian_full(const MacroState &state, const Vec &v,
                       const ScalingParams &s, int d) {
  const double h = s.h();
  double sq = 0.0;
  for (int k = 0; k < d; ++k) {
    const double c = v[k] * h - state.u[k] * h;
    sq += c * c;
  }
  return GaussianPrefactor(state.n, h, d) * std::exp(-1.5 * sq);
}

double maxwellian_truncated(const MacroState &state, const Vec &vtil,
                            const ScalingParams &s, int d) {
  const double h = s.h();
  const double vu = Dot(vtil, state.u, d);
  const double uu = Dot(state.u, state.u, d);
  const double bracket =
      1.0 + 3.0 * h * vu - 1.5 * h * h * uu + 4.5 * h * h * vu * vu;
  return GaussianPrefactor(state.n, h, d) *
         std::exp(-1.5 * Dot(vtil, vtil, d)) * bracket;
}

double weight_function(const Vec &vtil, const ScalingParams &s, int d) {
  return std::pow(2.0 * std::numbers::pi / 3.0, 0.5 * d) *
         std::pow(s.h(), -d) * std::exp(1.5 * Dot(vtil, vtil, d));
}

std::vector<double> lattice_equilibrium(const MacroState &state,
                                        const Stencil &s,
                                        const ScalingParams &sc) {
  Vec w{};
  for (int k = 0; k < s.d; ++k) w[k] = sc.h() * state.u[k];
  std::vector<double> out(s.q);
  lattice_equilibrium_lu(state.n, w, s, out);
  return out;
}

RemainderProbe remainder_probe(const MacroState &state, const Vec &vtil, int d,
                               std::span<const double> hs) {
  if (d != 2 && d != 3) throw DomainError("remainder_probe: d must be 2 or 3");
  if (hs.size() < 3) {
    throw DomainError("remainder_probe needs at least 3 values of h");
  }
  for (std::size_t j = 0; j < hs.size(); ++j) {
    if (!(hs[j] > 0.0) || (j > 0 && !(hs[j] < hs[j - 1]))) {
      throw DomainError("remainder_probe: h must be positive and decreasing");
    }
  }
  const Stencil st = d == 2 ? d2q9() : d3q19();

  std::vector<double> maxwellian_err, density_err, momentum_err;
  for (double h : hs) {
    const ScalingParams sc = make_scaling(1.0, h);
    maxwellian_err.push_back(
        std::abs(MaxwellianAtLatticeVelocity(state, vtil, h, d) -
                 maxwellian_truncated(state, vtil, sc, d)));

    double density = 0.0;
    Vec momentum{};
    for (int i = 0; i < st.q; ++i) {
      const Vec ei = st.velocity(i);
      Vec vi{};
      for (int k = 0; k < d; ++k) vi[k] = ei[k] / h;
      const double fi = st.t[i] * weight_function(ei, sc, d) *
                        MaxwellianAtLatticeVelocity(state, ei, h, d);
      density += fi;
      for (int k = 0; k < d; ++k) momentum[k] += vi[k] * fi;
    }
    density_err.push_back(std::abs(state.n - density) / state.n);
    double worst = 0.0;
    for (int k = 0; k < d; ++k) {
      worst = std::max(worst, std::abs(state.n * state.u[k] - momentum[k]));
    }
    momentum_err.push_back(worst / state.n);
  }

  RemainderProbe probe;
  probe.hs.assign(hs.begin(), hs.end());
  probe.maxwellian = Fit(hs, std::move(maxwellian_err));
  probe.density = Fit(hs, std::move(density_err));
  probe.momentum = Fit(hs, std::move(momentum_err));
  return probe;
}

}  // namespace limitlbm
