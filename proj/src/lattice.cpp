#include "limitlbm/lattice.hpp"

#include <algorithm>
#include <cmath>

#include "limitlbm/errors.hpp"

namespace limitlbm {

namespace {

Stencil Build(std::string name, int d,
              std::vector<std::array<int, kMaxDim>> velocities,
              std::vector<Rational> weights) {
  Stencil s;
  s.name = std::move(name);
  s.d = d;
  s.q = static_cast<int>(velocities.size());
  s.e = std::move(velocities);
  s.weight_exact = std::move(weights);
  s.t.reserve(s.q);
  s.shell.reserve(s.q);
  s.opposite.assign(s.q, -1);
  for (int i = 0; i < s.q; ++i) {
    s.t.push_back(s.weight_exact[i].value());
    int sq = 0;
    for (int k = 0; k < kMaxDim; ++k) sq += s.e[i][k] * s.e[i][k];
    s.shell.push_back(sq);
    for (int j = 0; j < s.q; ++j) {
      if (s.e[j][0] == -s.e[i][0] && s.e[j][1] == -s.e[i][1] &&
          s.e[j][2] == -s.e[i][2]) {
        s.opposite[i] = j;
      }
    }
  }
  return s;
}

double KroneckerDelta(int a, int b) { return a == b ? 1.0 : 0.0; }

}  // namespace

Stencil d3q19() {
  constexpr Rational kRest{1, 3}, kAxis{1, 18}, kEdge{1, 36};
  std::vector<std::array<int, kMaxDim>> e = {
      {0, 0, 0},
      {1, 0, 0},  {-1, 0, 0}, {0, 1, 0},  {0, -1, 0}, {0, 0, 1},  {0, 0, -1},
      {0, 1, 1},  {0, -1, -1}, {0, 1, -1}, {0, -1, 1},
      {1, 1, 0},  {-1, -1, 0}, {1, -1, 0}, {-1, 1, 0},
      {1, 0, 1},  {-1, 0, -1}, {1, 0, -1}, {-1, 0, 1},
  };
  std::vector<Rational> w(19, kEdge);
  w[0] = kRest;
  std::fill(w.begin() + 1, w.begin() + 7, kAxis);
  return Build("d3q19", 3, std::move(e), std::move(w));
}

Stencil d2q9() {
  constexpr Rational kRest{4, 9}, kAxis{1, 9}, kCorner{1, 36};
  std::vector<std::array<int, kMaxDim>> e = {
      {0, 0, 0},  {1, 0, 0},   {-1, 0, 0}, {0, 1, 0},  {0, -1, 0},
      {1, 1, 0},  {-1, -1, 0}, {1, -1, 0}, {-1, 1, 0},
  };
  std::vector<Rational> w = {kRest,   kAxis,   kAxis,   kAxis,  kAxis,
                             kCorner, kCorner, kCorner, kCorner};
  return Build("d2q9", 2, std::move(e), std::move(w));
}

Stencil stencil_by_name(const std::string &name) {
  if (name == "d3q19") return d3q19();
  if (name == "d2q9") return d2q9();
  throw DomainError("unknown stencil '" + name + "'");
}

double QuadratureReport::worst() const {
  return *std::max_element(max_deviation.begin(), max_deviation.end());
}

QuadratureReport verify_quadrature(const Stencil &s) {
  QuadratureReport r;
  const int d = s.d;
  auto moment = [&](auto &&product) {
    double sum = 0.0;
    for (int i = 0; i < s.q; ++i) sum += s.t[i] * product(s.e[i]);
    return sum;
  };
  auto update = [&](int order, double deviation) {
    r.max_deviation[order] = std::max(r.max_deviation[order],
                                      std::abs(deviation));
  };

  update(0, moment([](const auto &) { return 1.0; }) - 1.0);
  for (int a = 0; a < d; ++a) {
    update(1, moment([&](const auto &e) { return double(e[a]); }));
    for (int b = 0; b < d; ++b) {
      update(2, moment([&](const auto &e) { return double(e[a] * e[b]); }) -
                    KroneckerDelta(a, b) / 3.0);
      for (int c = 0; c < d; ++c) {
        update(3, moment([&](const auto &e) {
                 return double(e[a] * e[b] * e[c]);
               }));
        for (int g = 0; g < d; ++g) {
          const double target =
              (KroneckerDelta(a, b) * KroneckerDelta(c, g) +
               KroneckerDelta(a, c) * KroneckerDelta(b, g) +
               KroneckerDelta(a, g) * KroneckerDelta(b, c)) /
              9.0;
          update(4, moment([&](const auto &e) {
                   return double(e[a] * e[b] * e[c] * e[g]);
                 }) - target);
        }
      }
    }
  }
  return r;
}

}  // namespace limitlbm
