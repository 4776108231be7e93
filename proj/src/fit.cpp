#include "qwalk/fit.hpp"

#include <cmath>
#include <stdexcept>

namespace qwalk {

FitResult ols_fit(const std::vector<double>& xs, const std::vector<double>& ys,
                  std::string model_label) {
  if (xs.size() != ys.size())
    throw std::invalid_argument("ols_fit: size mismatch");
  const std::size_t n = xs.size();
  if (n < 2) throw std::invalid_argument("ols_fit: need at least two points");

  double mean_x = 0, mean_y = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mean_x += xs[i];
    mean_y += ys[i];
  }
  mean_x /= static_cast<double>(n);
  mean_y /= static_cast<double>(n);

  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (xs[i] - mean_x) * (xs[i] - mean_x);
    sxy += (xs[i] - mean_x) * (ys[i] - mean_y);
  }
  if (sxx == 0.0)
    throw std::invalid_argument("ols_fit: degenerate design (all x equal)");

  FitResult fit;
  fit.model = std::move(model_label);
  fit.points = n;
  fit.slope = sxy / sxx;
  fit.intercept = mean_y - fit.slope * mean_x;

  double ss_res = 0, ss_tot = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = ys[i] - (fit.slope * xs[i] + fit.intercept);
    ss_res += r * r;
    ss_tot += (ys[i] - mean_y) * (ys[i] - mean_y);
    fit.residual_max = std::max(fit.residual_max, std::abs(r));
  }
  fit.r_squared = (ss_tot == 0.0) ? 1.0 : 1.0 - ss_res / ss_tot;
  return fit;
}

FitResult fit_sqrt_nlogn(const std::vector<double>& sides,
                         const std::vector<double>& ys,
                         std::string model_label) {
  std::vector<double> xs;
  xs.reserve(sides.size());
  for (const double side : sides) {
    const double n = side * side;
    xs.push_back(std::sqrt(n * std::log(n)));
  }
  return ols_fit(xs, ys, std::move(model_label));
}

FitResult fit_power_law(const std::vector<double>& xs,
                        const std::vector<double>& ys,
                        std::string model_label) {
  std::vector<double> lx, ly;
  lx.reserve(xs.size());
  ly.reserve(ys.size());
  for (std::size_t i = 0; i < xs.size() && i < ys.size(); ++i) {
    if (xs[i] <= 0.0 || ys[i] <= 0.0)
      throw std::invalid_argument("fit_power_law: data must be positive");
    lx.push_back(std::log(xs[i]));
    ly.push_back(std::log(ys[i]));
  }
  return ols_fit(lx, ly, std::move(model_label));
}

}  // namespace qwalk
