// fit.hpp -- ordinary least squares helpers for the scaling studies.
//
// Everything here fits y = slope * x + intercept by OLS and reports R^2 and
// the largest absolute residual. Power laws are fitted in log-log space.
#ifndef QWALK_FIT_HPP
#define QWALK_FIT_HPP

#include <string>
#include <vector>

namespace qwalk {

struct FitResult {
  std::string model;         // human-readable label, e.g. "M_eps vs sqrt(N ln N)"
  double slope = 0;
  double intercept = 0;
  double r_squared = 0;
  double residual_max = 0;   // max |y_i - (slope * x_i + intercept)|
  std::size_t points = 0;
};

// Straight-line OLS fit. Throws std::invalid_argument when fewer than two
// points are given or all x coincide (degenerate design).
FitResult ols_fit(const std::vector<double>& xs, const std::vector<double>& ys,
                  std::string model_label);

// Fit y = slope * sqrt(N ln N) + intercept given lattice sides.
FitResult fit_sqrt_nlogn(const std::vector<double>& sides,
                         const std::vector<double>& ys,
                         std::string model_label);

// Fit y = a * x^slope via OLS on (ln x, ln y); requires positive data.
FitResult fit_power_law(const std::vector<double>& xs,
                        const std::vector<double>& ys,
                        std::string model_label);

}  // namespace qwalk

#endif  // QWALK_FIT_HPP
