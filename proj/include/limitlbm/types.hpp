#ifndef LIMITLBM_TYPES_HPP_
#define LIMITLBM_TYPES_HPP_

#include <array>
#include <cstddef>

namespace limitlbm {

inline constexpr int kMaxDim = 3;

// Fixed-size storage for spatial vectors and tensors. Only the leading d
// components are meaningful; the rest stay zero.
using Vec = std::array<double, kMaxDim>;
using Mat = std::array<Vec, kMaxDim>;

inline double Dot(const Vec &a, const Vec &b, int d) {
  double s = 0.0;
  for (int k = 0; k < d; ++k) s += a[k] * b[k];
  return s;
}

inline double Dot(const Vec &a, const Vec &b) { return Dot(a, b, kMaxDim); }

inline Mat Zero() { return Mat{}; }

inline Mat Identity(int d) {
  Mat m{};
  for (int k = 0; k < d; ++k) m[k][k] = 1.0;
  return m;
}

inline double Trace(const Mat &m, int d) {
  double s = 0.0;
  for (int k = 0; k < d; ++k) s += m[k][k];
  return s;
}

inline Mat Transpose(const Mat &m) {
  Mat t{};
  for (int a = 0; a < kMaxDim; ++a)
    for (int b = 0; b < kMaxDim; ++b) t[a][b] = m[b][a];
  return t;
}

}  // namespace limitlbm

#endif  // LIMITLBM_TYPES_HPP_
