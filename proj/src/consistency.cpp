#include "limitlbm/consistency.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "limitlbm/equilibrium.hpp"
#include "limitlbm/errors.hpp"
#include "limitlbm/fit.hpp"
#include "limitlbm/moments.hpp"
#include "limitlbm/solver.hpp"

namespace limitlbm {

namespace {

constexpr double kRoundingFloor =
    64.0 * std::numeric_limits<double>::epsilon();

bool IsShearWave(const AnalyticFlow &flow) {
  return flow.name().rfind("shear_wave", 0) == 0;
}

// Velocity moment at every node, component-major.
std::vector<Vec> VelocityField(const PopulationField &f, const Stencil &s,
                               const ScalingParams &sc) {
  std::vector<Vec> u(f.node_count());
  std::vector<double> buf(s.q);
  for (std::size_t node = 0; node < f.node_count(); ++node) {
    f.gather(node, buf);
    u[node] = macroscopic_moments(buf, s, sc).u;
  }
  return u;
}

// Projection (2 / N^d) sum u_y(x) sin(k x) of the shear-wave mode.
double ModeAmplitude(const PopulationField &f, const Stencil &s,
                     const ScalingParams &sc, double k) {
  const auto u = VelocityField(f, s, sc);
  double sum = 0.0;
  for (std::size_t node = 0; node < u.size(); ++node) {
    sum += u[node][1] * std::sin(k * f.grid().position(node)[0]);
  }
  return 2.0 * sum / static_cast<double>(u.size());
}

}  // namespace

PopulationField lbe_residual(const PopulationField &f_now,
                             const PopulationField &f_next, const Stencil &s,
                             const ScalingParams &sc) {
  if (!(f_now.grid() == f_next.grid()) || f_now.q() != f_next.q()) {
    throw DimensionMismatch("lbe_residual: fields live on different grids");
  }
  PopulationField post = f_now;
  collide_field(post, s, sc);
  // arrived_i(x) = f_next_i(x + e_i dx)
  PopulationField residual = stream(f_next, negated(s));
  auto &r = residual.raw();
  const auto &p = post.raw();
  for (std::size_t j = 0; j < r.size(); ++j) r[j] -= p[j];
  return residual;
}

double sup_norm(const PopulationField &f) {
  double m = 0.0;
  for (double v : f.raw()) m = std::max(m, std::abs(v));
  return m;
}

std::vector<double> eoc(std::span<const double> errors,
                        std::span<const double> hs) {
  if (errors.size() != hs.size() || errors.size() < 2) {
    throw DomainError("eoc needs two equally long sequences of length >= 2");
  }
  for (std::size_t j = 0; j < hs.size(); ++j) {
    if (!(errors[j] > 0.0)) {
      throw DomainError("eoc needs strictly positive errors");
    }
    if (!(hs[j] > 0.0) || (j > 0 && !(hs[j] < hs[j - 1]))) {
      throw DomainError("eoc needs strictly decreasing positive h");
    }
  }
  std::vector<double> orders;
  for (std::size_t j = 0; j + 1 < hs.size(); ++j) {
    orders.push_back(std::log(errors[j] / errors[j + 1]) /
                     std::log(hs[j] / hs[j + 1]));
  }
  return orders;
}

std::string EocValue::str() const {
  switch (kind) {
    case Kind::kExact:
      return "exact";
    case Kind::kNotAvailable:
      return "NA";
    case Kind::kUnstable:
      return "unstable";
    case Kind::kValue:
      break;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

EocValue pairwise_eoc(double e_prev, double e_next, double h_prev,
                      double h_next) {
  if (e_prev == 0.0 && e_next == 0.0) return {EocValue::Kind::kExact, 0.0};
  if (!(e_prev > 0.0) || !(e_next > 0.0) || !std::isfinite(e_prev) ||
      !std::isfinite(e_next)) {
    return {};
  }
  const double e[] = {e_prev, e_next};
  const double h[] = {h_prev, h_next};
  return EocValue::Of(eoc(e, h).front());
}

std::vector<std::string> ConsistencyReport::norm_names() const {
  if (!norms.empty()) return norms;
  std::vector<std::string> names;
  for (const auto &r : resolutions) {
    for (const auto &nv : r.errors) {
      if (std::find(names.begin(), names.end(), nv.norm) == names.end()) {
        names.push_back(nv.norm);
      }
    }
  }
  return names;
}

std::vector<double> ConsistencyReport::errors(const std::string &norm) const {
  std::vector<double> out;
  for (const auto &r : resolutions) {
    double v = std::numeric_limits<double>::quiet_NaN();
    for (const auto &nv : r.errors) {
      if (nv.norm == norm) v = nv.value;
    }
    out.push_back(r.stable ? v : std::numeric_limits<double>::quiet_NaN());
  }
  return out;
}

std::vector<EocValue> ConsistencyReport::eoc(const std::string &norm) const {
  const auto e = errors(norm);
  std::vector<EocValue> out;
  for (std::size_t j = 0; j < resolutions.size(); ++j) {
    if (!resolutions[j].stable) {
      out.push_back({EocValue::Kind::kUnstable, 0.0});
    } else if (j == 0 || !resolutions[j - 1].stable) {
      out.push_back({});
    } else {
      out.push_back(pairwise_eoc(e[j - 1], e[j], resolutions[j - 1].h,
                                 resolutions[j].h));
    }
  }
  return out;
}

ConsistencyReport convergence_study(const AnalyticFlow &flow,
                                    const Stencil &stencil,
                                    std::span<const int> resolutions,
                                    double nu, double t_end,
                                    const StudyOptions &options) {
  if (resolutions.empty()) throw DomainError("no resolutions given");
  if (flow.dim() != stencil.d) {
    throw DimensionMismatch("flow " + flow.name() + " does not match stencil " +
                            stencil.name);
  }
  ConsistencyReport report;
  report.case_name = flow.name();
  report.stencil = stencil.name;
  report.init = options.init == InitMode::kEquilibrium ? "equilibrium"
                                                        : "chapman_enskog";
  report.nu = nu;
  report.velocity_scale = flow.meta().velocity_scale;
  report.t_end = t_end;
  const bool shear = IsShearWave(flow);
  const double k = flow.meta().wavenumber;
  report.norms = {"L2", "sup"};
  if (shear) report.norms.push_back("nu_eff_rel");

  for (int n : resolutions) {
    const Grid grid = make_grid(stencil.d, n, flow.meta().length);
    const ScalingParams sc = make_scaling(nu, grid.dx);
    Resolution res;
    res.n = n;
    res.h = grid.dx;

    const std::int64_t steps = step_count(t_end, grid.dt);
    std::vector<Observer> observers;
    if (shear) {
      const std::int64_t stride =
          std::max<std::int64_t>(1, steps / std::max(options.amplitude_samples, 1));
      observers.push_back({"amplitude", stride,
                           [&](std::int64_t, double, const PopulationField &f) {
                             return ModeAmplitude(f, stencil, sc, k);
                           }});
    }
    RunOptions run_options;
    run_options.workers = options.workers;
    RunResult run;
    try {
      run = run_until(init_from_macro(grid, stencil, sc, flow, 0.0, options.init),
                      stencil, sc, t_end, observers, run_options);
    } catch (const BlowUp &) {
      res.stable = false;
      report.resolutions.push_back(std::move(res));
      continue;
    } catch (const DegenerateDensity &) {
      res.stable = false;
      report.resolutions.push_back(std::move(res));
      continue;
    }

    const auto u = VelocityField(run.field, stencil, sc);
    double sum_sq = 0.0, sup = 0.0;
    for (std::size_t node = 0; node < u.size(); ++node) {
      const Vec exact = flow.velocity(run.t, grid.position(node));
      double sq = 0.0;
      for (int a = 0; a < stencil.d; ++a) {
        sq += (u[node][a] - exact[a]) * (u[node][a] - exact[a]);
      }
      sum_sq += sq;
      sup = std::max(sup, std::sqrt(sq));
    }
    const double cell = std::pow(grid.dx, stencil.d);
    res.errors.push_back({"L2", std::sqrt(cell * sum_sq)});
    res.errors.push_back({"sup", sup});

    if (shear) {
      std::vector<double> ts, logs;
      for (const auto &rec : run.log) {
        if (rec.t < options.fit_skip_fraction * run.t || rec.step == 0 ||
            !(rec.value > 0.0)) {
          continue;
        }
        ts.push_back(rec.t);
        logs.push_back(std::log(rec.value));
      }
      double rel = std::numeric_limits<double>::quiet_NaN();
      if (ts.size() >= 2) {
        const double nu_eff = -least_squares(ts, logs).slope / (k * k);
        rel = std::abs(nu_eff - nu) / nu;
      }
      res.errors.push_back({"nu_eff_rel", rel});
    }
    report.resolutions.push_back(std::move(res));
  }
  return report;
}

bool is_bounded(std::span<const double> estimates, double slack) {
  for (std::size_t j = 1; j + 1 < estimates.size(); ++j) {
    if (estimates[j + 1] > (1.0 + slack) * estimates[j]) return false;
  }
  return true;
}

double LimsupResult::slope() const { return loglog_slope(hs, residual_sup); }

LimsupResult limsup_probe(const AnalyticFlow &flow, const Stencil &stencil,
                          double nu, int order,
                          std::span<const int> resolutions, double t0,
                          double slack) {
  if (resolutions.size() < 3) {
    throw DomainError("limsup_probe needs at least 3 resolutions");
  }
  for (std::size_t j = 1; j < resolutions.size(); ++j) {
    if (resolutions[j] <= resolutions[j - 1]) {
      throw DomainError("limsup_probe resolutions must increase");
    }
  }
  LimsupResult result;
  result.case_name = flow.name();
  result.order = order;
  result.slack = slack;
  for (int n : resolutions) {
    const Grid grid = make_grid(stencil.d, n, flow.meta().length);
    const ScalingParams sc = make_scaling(nu, grid.dx);
    const PopulationField now = ce_populations(flow, t0, grid, stencil, sc);
    const PopulationField next =
        ce_populations(flow, t0 + grid.dt, grid, stencil, sc);
    double sup = sup_norm(lbe_residual(now, next, stencil, sc));
    // A residual at rounding level is a zero residual; dividing the noise
    // by h^k would fake growth.
    if (sup <= kRoundingFloor * sup_norm(now)) sup = 0.0;
    result.resolutions.push_back(n);
    result.hs.push_back(grid.dx);
    result.residual_sup.push_back(sup);
    result.estimates.push_back(sup / std::pow(grid.dx, order));
  }
  result.bounded = is_bounded(result.estimates, slack);
  return result;
}

std::vector<EocValue> StressReport::eoc() const {
  std::vector<EocValue> out;
  for (std::size_t j = 0; j < resolutions.size(); ++j) {
    const auto &r = resolutions[j];
    if (!r.stable) {
      out.push_back({EocValue::Kind::kUnstable, 0.0});
    } else if (j == 0 || !resolutions[j - 1].stable) {
      out.push_back({});
    } else {
      out.push_back(pairwise_eoc(resolutions[j - 1].relative_sup_error,
                                 r.relative_sup_error, resolutions[j - 1].h,
                                 r.h));
    }
  }
  return out;
}

bool StressReport::strictly_decreasing() const {
  for (std::size_t j = 1; j < resolutions.size(); ++j) {
    if (!resolutions[j].stable || !resolutions[j - 1].stable) return false;
    if (!(resolutions[j].relative_sup_error <
          resolutions[j - 1].relative_sup_error)) {
      return false;
    }
  }
  return true;
}

StressReport stress_study(const AnalyticFlow &flow, const Stencil &stencil,
                          std::span<const int> resolutions, double nu,
                          double t_snapshot, const StudyOptions &options) {
  if (resolutions.empty()) throw DomainError("no resolutions given");
  if (flow.dim() != stencil.d) {
    throw DimensionMismatch("flow " + flow.name() + " does not match stencil " +
                            stencil.name);
  }
  StressReport report;
  report.case_name = flow.name();
  report.nu = nu;
  report.t_snapshot = t_snapshot;
  const int d = stencil.d;

  for (int n : resolutions) {
    const Grid grid = make_grid(d, n, flow.meta().length);
    const ScalingParams sc = make_scaling(nu, grid.dx);
    StressResolution res;
    res.n = n;
    res.h = grid.dx;
    RunOptions run_options;
    run_options.workers = options.workers;
    RunResult run;
    try {
      run = run_until(
          init_from_macro(grid, stencil, sc, flow, 0.0, options.init), stencil,
          sc, t_snapshot, {}, run_options);
    } catch (const BlowUp &) {
      res.stable = false;
      report.resolutions.push_back(res);
      continue;
    } catch (const DegenerateDensity &) {
      res.stable = false;
      report.resolutions.push_back(res);
      continue;
    }

    std::vector<double> f(stencil.q), shifted(stencil.q);
    std::vector<Mat> measured(grid.node_count()), target(grid.node_count());
    std::vector<Mat> strains(grid.node_count());
    double target_scale = 0.0;
    Mat max_strain{};
    const double half_omega = 0.5 * sc.omega();
    for (std::size_t node = 0; node < grid.node_count(); ++node) {
      run.field.gather(node, f);
      const MacroState m = macroscopic_moments(f, stencil, sc);
      const std::vector<double> eq = lattice_equilibrium(m, stencil, sc);
      for (int i = 0; i < stencil.q; ++i) {
        shifted[i] = f[i] - half_omega * (f[i] - eq[i]);
      }
      measured[node] = deviatoric(stress_tensor(shifted, stencil, sc), d);
      const Vec x = grid.position(node);
      const Mat strain = flow.rate_of_strain(run.t, x);
      strains[node] = strain;
      target[node] = deviatoric(
          newtonian_target(0.0, flow.density(run.t, x), nu, strain, d), d);
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
          target_scale = std::max(target_scale, std::abs(target[node][a][b]));
      for (int a = 0; a < d; ++a)
        for (int b = a; b < d; ++b)
          max_strain[a][b] = std::max(max_strain[a][b], std::abs(strain[a][b]));
    }

    // Sign census on the strain component with the largest amplitude.
    int ca = 0, cb = 0;
    for (int a = 0; a < d; ++a)
      for (int b = a; b < d; ++b)
        if (max_strain[a][b] > max_strain[ca][cb]) ca = a, cb = b;
    const double threshold = 0.1 * max_strain[ca][cb];

    double sup_err = 0.0;
    std::size_t agree = 0, counted = 0;
    for (std::size_t node = 0; node < grid.node_count(); ++node) {
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
          sup_err = std::max(sup_err, std::abs(measured[node][a][b] -
                                               target[node][a][b]));
      if (threshold > 0.0 && std::abs(strains[node][ca][cb]) > threshold) {
        ++counted;
        if (std::signbit(measured[node][ca][cb]) ==
                std::signbit(target[node][ca][cb]) &&
            measured[node][ca][cb] != 0.0) {
          ++agree;
        }
      }
    }
    res.relative_sup_error =
        target_scale > 0.0 ? sup_err / target_scale : sup_err;
    res.sign_nodes = counted;
    res.sign_agreement =
        counted > 0 ? static_cast<double>(agree) / counted : 1.0;
    report.resolutions.push_back(res);
  }
  return report;
}

}  // namespace limitlbm
