#ifndef LIMITLBM_LATTICE_HPP_
#define LIMITLBM_LATTICE_HPP_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "limitlbm/types.hpp"

namespace limitlbm {

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const { return static_cast<double>(num) / den; }
};

/// Discrete velocity set DdQq.
///
/// Velocities are stored in prefactored lattice units e_i (components in
/// {-1, 0, 1}); the physical velocity is v_i = e_i / h. Weights are the
/// h-independent ratios t_i = w_i / w.
struct Stencil {
  std::string name;
  int d = 0;
  int q = 0;
  std::vector<std::array<int, kMaxDim>> e;
  std::vector<Rational> weight_exact;
  std::vector<double> t;
  std::vector<int> shell;     // |e_i|^2
  std::vector<int> opposite;  // index j with e_j = -e_i

  Vec velocity(int i) const {
    return Vec{static_cast<double>(e[i][0]), static_cast<double>(e[i][1]),
               static_cast<double>(e[i][2])};
  }
};

// Rest, +x, -x, +y, -y, +z, -z, then the 12 edge diagonals.
Stencil d3q19();
// Rest, +x, -x, +y, -y, then the 4 corner diagonals.
Stencil d2q9();
// Looks a stencil up by name ("d2q9", "d3q19"); throws DomainError otherwise.
Stencil stencil_by_name(const std::string &name);

struct QuadratureReport {
  // Largest absolute deviation of the moment identity of each order 0..4.
  std::array<double, 5> max_deviation{};

  double worst() const;
  bool passes(double tolerance) const { return worst() <= tolerance; }
};

// Checks sum t = 1, sum t e = 0, sum t ee = I/3, sum t eee = 0 and
// sum t eeee = (1/9)(dd + dd + dd). Never throws.
QuadratureReport verify_quadrature(const Stencil &s);

}  // namespace limitlbm

#endif  // LIMITLBM_LATTICE_HPP_
