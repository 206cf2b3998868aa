#ifndef LIMITLBM_CONSISTENCY_HPP_
#define LIMITLBM_CONSISTENCY_HPP_

#include <span>
#include <string>
#include <vector>

#include "limitlbm/grid.hpp"
#include "limitlbm/lattice.hpp"
#include "limitlbm/manufactured.hpp"
#include "limitlbm/scaling.hpp"

namespace limitlbm {

/// Residual of the lattice Boltzmann operator,
///   r_i(x) = f_next_i(x + e_i dx) - f_now_i(x)
///            + omega (f_now_i(x) - Mbar_i^eq[f_now](x)).
/// Applied to populations sampled from a smooth kinetic solution this is
/// the local truncation error; applied to the solver's own trajectory it
/// vanishes up to rounding.
PopulationField lbe_residual(const PopulationField &f_now,
                             const PopulationField &f_next, const Stencil &s,
                             const ScalingParams &sc);

double sup_norm(const PopulationField &f);

// Pairwise orders log(e_j / e_{j+1}) / log(h_j / h_{j+1}). Throws DomainError
// unless the sizes match (>= 2), hs decreases strictly and every error > 0.
std::vector<double> eoc(std::span<const double> errors,
                        std::span<const double> hs);

/// One experimental order entry as it appears in reports.
struct EocValue {
  enum class Kind { kValue, kExact, kNotAvailable, kUnstable };
  Kind kind = Kind::kNotAvailable;
  double value = 0.0;

  static EocValue Of(double v) { return {Kind::kValue, v}; }
  // "NA", "exact", "unstable" or the number with 17 significant digits.
  std::string str() const;
  bool operator==(const EocValue &) const = default;
};

// Order between two successive resolutions; both-zero errors yield "exact",
// a zero or non-finite error otherwise yields "NA".
EocValue pairwise_eoc(double e_prev, double e_next, double h_prev,
                      double h_next);

struct NormValue {
  std::string norm;
  double value = 0.0;
  bool operator==(const NormValue &) const = default;
};

struct Resolution {
  int n = 0;
  double h = 0.0;
  bool stable = true;
  std::vector<NormValue> errors;  // fixed order across resolutions
  bool operator==(const Resolution &) const = default;
};

struct ConsistencyReport {
  std::string case_name;
  std::string stencil;
  std::string init;
  double nu = 0.0;
  double velocity_scale = 0.0;
  double t_end = 0.0;
  std::string notes;
  std::vector<std::string> norms;  // column order; derived when empty
  std::vector<Resolution> resolutions;

  std::vector<std::string> norm_names() const;
  // Error sequence of one norm, one entry per resolution.
  std::vector<double> errors(const std::string &norm) const;
  // eoc_vs_prev column: "NA" for the first resolution and next to unstable
  // ones.
  std::vector<EocValue> eoc(const std::string &norm) const;
};

struct StudyOptions {
  InitMode init = InitMode::kEquilibrium;
  int workers = 1;
  // Samples of the mode amplitude for the effective-viscosity fit.
  int amplitude_samples = 64;
  // Leading fraction of the run excluded from the fit (initial layer).
  double fit_skip_fraction = 0.25;
};

// Runs the flow from t = 0 to t_end at every resolution and compares the
// velocity moment with the analytic velocity at the final time. Norms:
// "L2" (sqrt(dx^d sum |du|^2)) and "sup" (max |du|). Shear waves add
// "nu_eff_rel", the relative error of the viscosity fitted to the decay of
// the mode amplitude. A blow-up marks the resolution unstable.
ConsistencyReport convergence_study(const AnalyticFlow &flow,
                                    const Stencil &stencil,
                                    std::span<const int> resolutions,
                                    double nu, double t_end,
                                    const StudyOptions &options = {});

struct LimsupResult {
  std::string case_name;
  int order = 0;
  double slack = 0.2;
  std::vector<int> resolutions;
  std::vector<double> hs;
  std::vector<double> residual_sup;
  std::vector<double> estimates;  // residual_sup / h^k
  bool bounded = false;

  std::string verdict() const { return bounded ? "bounded" : "unbounded"; }
  double slope() const;  // log-log fit of residual_sup against h
};

// Boundedness test on a finite sequence: from the second estimate onward
// every entry is at most (1 + slack) times its predecessor.
bool is_bounded(std::span<const double> estimates, double slack);

// Evaluates sup |lbe_residual| on Chapman-Enskog populations of the flow at
// t0 and t0 + h^2 for every resolution and divides by h^k. Residuals below
// 64 eps max|f| count as zero.
LimsupResult limsup_probe(const AnalyticFlow &flow, const Stencil &stencil,
                          double nu, int order,
                          std::span<const int> resolutions, double t0 = 0.0,
                          double slack = 0.2);

struct StressResolution {
  int n = 0;
  double h = 0.0;
  bool stable = true;
  double relative_sup_error = 0.0;
  // Fraction of nodes with matching sign in the dominant strain component
  // D_ab, over nodes where |D_ab| exceeds a tenth of its maximum.
  double sign_agreement = 1.0;
  std::size_t sign_nodes = 0;
};

struct StressReport {
  std::string case_name;
  double nu = 0.0;
  double t_snapshot = 0.0;
  std::vector<StressResolution> resolutions;

  std::vector<EocValue> eoc() const;
  bool strictly_decreasing() const;
};

// Deviatoric stress of the half-step populations f - (omega / 2)(f - Mbar^eq)
// against -2 nu rho D at t_snapshot, in the sup norm relative to
// max |2 nu rho D|.
StressReport stress_study(const AnalyticFlow &flow, const Stencil &stencil,
                          std::span<const int> resolutions, double nu,
                          double t_snapshot, const StudyOptions &options = {});

}  // namespace limitlbm

#endif  // LIMITLBM_CONSISTENCY_HPP_
