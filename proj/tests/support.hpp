#ifndef LIMITLBM_TESTS_SUPPORT_HPP_
#define LIMITLBM_TESTS_SUPPORT_HPP_

#include <cmath>
#include <random>
#include <vector>

#include "limitlbm/grid.hpp"
#include "limitlbm/lattice.hpp"
#include "limitlbm/types.hpp"

namespace testing {

// Seeded generator for the hand-rolled property tests.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(gen_);
  }
  int integer(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(gen_);
  }
  // Uniform in the d-ball of radius r.
  limitlbm::Vec ball(int d, double r) {
    limitlbm::Vec v{};
    for (;;) {
      double norm2 = 0.0;
      for (int k = 0; k < d; ++k) {
        v[k] = uniform(-r, r);
        norm2 += v[k] * v[k];
      }
      if (norm2 <= r * r) return v;
    }
  }

 private:
  std::mt19937_64 gen_;
};

// Positive populations close to t_i with relative noise of the given size.
inline std::vector<double> near_equilibrium(const limitlbm::Stencil &s,
                                            Rng &rng, double noise) {
  std::vector<double> f(s.q);
  for (int i = 0; i < s.q; ++i) f[i] = s.t[i] * (1.0 + rng.uniform(-noise, noise));
  return f;
}

inline limitlbm::PopulationField random_field(const limitlbm::Grid &g,
                                              const limitlbm::Stencil &s,
                                              Rng &rng, double noise) {
  limitlbm::PopulationField f(g, s.q);
  for (std::size_t node = 0; node < g.node_count(); ++node) {
    const auto local = near_equilibrium(s, rng, noise);
    f.scatter(node, local);
  }
  return f;
}

}  // namespace testing

#endif  // LIMITLBM_TESTS_SUPPORT_HPP_
