#pragma once
#include <map>
#include <string>

#include "json.hpp"
#include "robinlab/robin2d.hpp"

// Numerical verification of eigenfunction localization: the fitted
// exponential profile rate, the weighted Agmon energy ratio, polynomial
// interior bounds and the pointwise prefactor.

namespace robinlab::decay {

struct RateFit {
  double rate = 0.0;         // -d log|u| / dt over the fit window
  double rate_scaled = 0.0;  // rate * sqrt(h)
  double residual_rms = 0.0;
  int samples = 0;
  double window_lo = 0.0, window_hi = 0.0;
};

// Least-squares slope of log|u| on t in [sqrt(h), 6 sqrt(h)] (clipped to the
// sampled depth); the window avoids the boundary prefactor and the far tail.
RateFit fit_decay_rate(const robin2d::EigenMode& mode, double h,
                       double window_lo_factor = 1.0,
                       double window_hi_factor = 6.0);

// int (|u|^2 + h |grad u|^2) exp(2 alpha d/sqrt(h)) / ||u||^2.
// Requires w < -M/h (the Agmon hypothesis); alpha is free so that the
// sharpness of alpha < sqrt(M) can be probed.
double agmon_ratio(const robin2d::EigenMode& mode, double h, double alpha,
                   double M);

// sup over the sampled ray of |u| (d^2/h)^p.
double polynomial_bound_sup(const robin2d::EigenMode& mode, double h, int p,
                            double epsilon);

// sup over the sampled ray of |u| h^{n/4+1/4} exp(alpha min(d,eps0)/sqrt(h)),
// n = 2.  The exponent of the h prefactor can be perturbed for controls.
double pointwise_prefactor_sup(const robin2d::EigenMode& mode, double h,
                               double alpha, double M, double eps0,
                               double prefactor_exponent = 0.75);

struct DecayReport {
  double h = 0.0;
  int mode = 0;
  double w = 0.0;
  std::string method;
  RateFit rate;
  double agmon = 0.0;
  std::map<int, double> poly_sup;  // p -> sup
  double pointwise = 0.0;
  nlohmann::json to_json() const;
};

}  // namespace robinlab::decay
