#include "limitlbm/solver.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <limits>

#include "limitlbm/equilibrium.hpp"
#include "limitlbm/errors.hpp"
#include "limitlbm/parallel.hpp"

namespace limitlbm {

namespace {

constexpr int kMaxQ = 27;
constexpr std::size_t kNoNode = std::numeric_limits<std::size_t>::max();

// Returns false (leaving f untouched) on non-positive density.
bool CollideNode(std::span<double> f, const Stencil &s, double omega) {
  double n = 0.0;
  Vec j{};
  for (int i = 0; i < s.q; ++i) {
    n += f[i];
    j[0] += s.e[i][0] * f[i];
    j[1] += s.e[i][1] * f[i];
    j[2] += s.e[i][2] * f[i];
  }
  if (!(n > 0.0)) return false;
  const Vec w{j[0] / n, j[1] / n, j[2] / n};
  std::array<double, kMaxQ> eq;
  lattice_equilibrium_lu(n, w, s, std::span<double>(eq.data(), s.q));
  for (int i = 0; i < s.q; ++i) f[i] -= omega * (f[i] - eq[i]);
  return true;
}

double MaxAbs(const PopulationField &f) {
  double m = 0.0;
  for (double v : f.raw()) {
    if (!std::isfinite(v)) return std::numeric_limits<double>::infinity();
    m = std::max(m, std::abs(v));
  }
  return m;
}

}  // namespace

std::vector<double> collide(std::span<const double> f, const Stencil &s,
                            const ScalingParams &sc) {
  std::vector<double> out(f.begin(), f.end());
  if (!CollideNode(out, s, sc.omega())) {
    throw DegenerateDensity("collide: non-positive density");
  }
  return out;
}

void collide_field(PopulationField &f, const Stencil &s,
                   const ScalingParams &sc, int workers) {
  if (f.q() != s.q || f.grid().d != s.d) {
    throw DimensionMismatch("collide: stencil " + s.name +
                            " does not match the population field");
  }
  const double omega = sc.omega();
  std::atomic<std::size_t> first_bad{kNoNode};
  parallel_for(f.node_count(), workers,
               [&](std::size_t begin, std::size_t end) {
                 std::array<double, kMaxQ> buf;
                 std::span<double> node_f(buf.data(), s.q);
                 for (std::size_t node = begin; node < end; ++node) {
                   f.gather(node, node_f);
                   if (!CollideNode(node_f, s, omega)) {
                     std::size_t cur = first_bad.load();
                     while (node < cur &&
                            !first_bad.compare_exchange_weak(cur, node)) {
                     }
                     continue;
                   }
                   f.scatter(node, node_f);
                 }
               });
  if (first_bad.load() != kNoNode) {
    throw DegenerateDensity("collide: non-positive density",
                            f.grid().coords(first_bad.load()));
  }
}

PopulationField step(const PopulationField &f, const Stencil &s,
                     const ScalingParams &sc, int workers) {
  PopulationField post = f;
  collide_field(post, s, sc, workers);
  return stream(post, s, workers);
}

std::int64_t step_count(double t_end, double dt) {
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) {
    throw DomainError("t_end must be finite and non-negative");
  }
  if (!(dt > 0.0)) throw DomainError("dt must be positive");
  const double steps = std::floor(t_end / dt + 0.5);
  if (steps > static_cast<double>(kMaxSteps)) {
    throw DomainError("run would need " + std::to_string(steps) +
                      " steps, above the limit of 1e9");
  }
  if (std::abs(steps * dt - t_end) > 0.5 * dt) {
    throw DomainError("t_end is not representable as a whole number of steps");
  }
  return static_cast<std::int64_t>(steps);
}

RunResult run_until(PopulationField f, const Stencil &s,
                    const ScalingParams &sc, double t_end,
                    const std::vector<Observer> &observers,
                    const RunOptions &options) {
  const double dt = f.grid().dt;
  const std::int64_t steps = step_count(t_end, dt);
  RunResult result;
  const double initial = MaxAbs(f);
  const double bound = options.blowup_factor * std::max(initial, 1e-300);

  auto record = [&](std::int64_t k, const PopulationField &field) {
    for (const auto &obs : observers) {
      if (obs.stride > 0 && k % obs.stride == 0) {
        result.log.push_back(
            {obs.name, k, k * dt, obs.measure(k, k * dt, field)});
      }
    }
  };

  record(0, f);
  PopulationField scratch(f.grid(), f.q());
  for (std::int64_t k = 1; k <= steps; ++k) {
    collide_field(f, s, sc, options.workers);
    stream_into(f, s, scratch, options.workers);
    std::swap(f, scratch);
    if (k % options.blowup_check_stride == 0 || k == steps) {
      const double m = MaxAbs(f);
      if (!(m <= bound)) {
        throw BlowUp("field blew up after " + std::to_string(k) +
                     " steps (max |f| = " + std::to_string(m) + ")");
      }
    }
    record(k, f);
  }
  result.field = std::move(f);
  result.steps = steps;
  result.t = steps * dt;
  return result;
}

}  // namespace limitlbm
