#include "limitlbm/fit.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "limitlbm/errors.hpp"

namespace limitlbm {

LineFit least_squares(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw FitError("least squares needs >= 2 paired samples");
  }
  const double m = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    sx += x[j];
    sy += y[j];
  }
  const double mx = sx / m, my = sy / m;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    sxx += (x[j] - mx) * (x[j] - mx);
    sxy += (x[j] - mx) * (y[j] - my);
  }
  if (sxx == 0.0) throw FitError("least squares with degenerate abscissae");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  return fit;
}

double loglog_slope(std::span<const double> hs,
                    std::span<const double> errors) {
  std::vector<double> lx, ly;
  for (std::size_t j = 0; j < hs.size() && j < errors.size(); ++j) {
    if (!(errors[j] > 0.0) || !(hs[j] > 0.0)) {
      throw FitError("log-log fit needs positive samples, got error " +
                     std::to_string(errors[j]));
    }
    lx.push_back(std::log(hs[j]));
    ly.push_back(std::log(errors[j]));
  }
  return least_squares(lx, ly).slope;
}

}  // namespace limitlbm
