#pragma once
#include <span>
#include <string>
#include <vector>

namespace robinlab::fit {

// Ordinary least squares on (log x, log y); used for every asymptotic
// order check in the experiments.
struct FitReport {
  double slope = 0.0;
  double intercept = 0.0;
  double residual_rms = 0.0;
  int sample_count = 0;
  double target_slope = 0.0;
  double tol = 0.0;
  bool pass = false;
};

FitReport fit_order(std::span<const double> xs, std::span<const double> ys,
                    double target_slope, double tol);

// Plain OLS y = slope*x + intercept (no logs); decay-rate fits use this on
// (t, log|u|) samples.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual_rms = 0.0;
};

LineFit fit_line(std::span<const double> xs, std::span<const double> ys);

}  // namespace robinlab::fit
