#ifndef LIMITLBM_SOLVER_HPP_
#define LIMITLBM_SOLVER_HPP_

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "limitlbm/grid.hpp"
#include "limitlbm/lattice.hpp"
#include "limitlbm/scaling.hpp"

namespace limitlbm {

// BGK relaxation f_i <- f_i - omega (f_i - Mbar_i^eq) with
// omega = 1 / (3 nu + 1/2). Throws DegenerateDensity if sum f_i <= 0.
std::vector<double> collide(std::span<const double> f, const Stencil &s,
                            const ScalingParams &sc);

// Collision at every node of the field, in place.
void collide_field(PopulationField &f, const Stencil &s,
                   const ScalingParams &sc, int workers = 1);

// One lattice Boltzmann update (collide, then stream), advancing t by h^2.
PopulationField step(const PopulationField &f, const Stencil &s,
                     const ScalingParams &sc, int workers = 1);

inline constexpr std::int64_t kMaxSteps = 1'000'000'000;

// Number of steps floor(t_end / dt + 0.5). Throws DomainError for negative
// t_end, for t_end further than 0.5 dt from a whole step count, or for more
// than kMaxSteps steps.
std::int64_t step_count(double t_end, double dt);

struct Observer {
  std::string name;
  std::int64_t stride = 1;
  // Called after step k (and once at k = 0) whenever k % stride == 0.
  std::function<double(std::int64_t step, double t, const PopulationField &)>
      measure;
};

struct ObserverRecord {
  std::string name;
  std::int64_t step = 0;
  double t = 0.0;
  double value = 0.0;
};

struct RunOptions {
  int workers = 1;
  // A run aborts with BlowUp once max|f| exceeds this multiple of its
  // initial value or turns non-finite.
  double blowup_factor = 1e6;
  std::int64_t blowup_check_stride = 64;
};

struct RunResult {
  PopulationField field;
  std::int64_t steps = 0;
  double t = 0.0;
  std::vector<ObserverRecord> log;
};

RunResult run_until(PopulationField f, const Stencil &s,
                    const ScalingParams &sc, double t_end,
                    const std::vector<Observer> &observers = {},
                    const RunOptions &options = {});

}  // namespace limitlbm

#endif  // LIMITLBM_SOLVER_HPP_
