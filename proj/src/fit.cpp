#include "robinlab/fit.hpp"

#include <cmath>
#include <stdexcept>

namespace robinlab::fit {

LineFit fit_line(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw std::invalid_argument("fit_line: need >= 2 samples of equal length");
  const std::size_t n = xs.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double det = n * sxx - sx * sx;
  if (det == 0.0) throw std::invalid_argument("fit_line: degenerate abscissae");
  LineFit f;
  f.slope = (n * sxy - sx * sy) / det;
  f.intercept = (sy - f.slope * sx) / n;
  double ss = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = ys[i] - (f.slope * xs[i] + f.intercept);
    ss += r * r;
  }
  f.residual_rms = std::sqrt(ss / n);
  return f;
}

FitReport fit_order(std::span<const double> xs, std::span<const double> ys,
                    double target_slope, double tol) {
  if (xs.size() != ys.size())
    throw std::invalid_argument("fit_order: length mismatch");
  std::vector<double> lx, ly;
  lx.reserve(xs.size());
  ly.reserve(ys.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] > 0.0) || !(ys[i] > 0.0))
      throw std::invalid_argument("fit_order: nonpositive sample");
    lx.push_back(std::log(xs[i]));
    ly.push_back(std::log(ys[i]));
  }
  const LineFit lf = fit_line(lx, ly);
  FitReport r;
  r.slope = lf.slope;
  r.intercept = lf.intercept;
  r.residual_rms = lf.residual_rms;
  r.sample_count = static_cast<int>(xs.size());
  r.target_slope = target_slope;
  r.tol = tol;
  r.pass = std::abs(lf.slope - target_slope) <= tol;
  return r;
}

}  // namespace robinlab::fit
