#ifndef LIMITLBM_FIT_HPP_
#define LIMITLBM_FIT_HPP_

#include <span>

namespace limitlbm {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};

// Ordinary least squares y = slope * x + intercept. Needs >= 2 points with
// distinct x.
LineFit least_squares(std::span<const double> x, std::span<const double> y);

// Slope of log(error) against log(h). Throws FitError if an error is not
// strictly positive.
double loglog_slope(std::span<const double> hs, std::span<const double> errors);

}  // namespace limitlbm

#endif  // LIMITLBM_FIT_HPP_
