#include "robinlab/bessel.hpp"

#include <gsl/gsl_sf_bessel.h>

#include <cmath>
#include <stdexcept>

namespace robinlab::bessel {

double i_scaled(int m, double x) {
  if (m < 0) m = -m;
  return gsl_sf_bessel_In_scaled(m, x);
}

double k_scaled(int m, double x) {
  if (m < 0) m = -m;
  if (x <= 0.0) throw std::invalid_argument("k_scaled: x must be positive");
  return gsl_sf_bessel_Kn_scaled(m, x);
}

double j(int m, double x) { return gsl_sf_bessel_Jn(m, x); }

double log_deriv_i(int m, double x) {
  if (x < 0.0) throw std::invalid_argument("log_deriv_i: x must be >= 0");
  // Series G_m(x) = m + x^2/(2(m+1)) + O(x^4) avoids 0/0 in the scaled
  // ratio when I_m underflows near the origin.
  if (x < 1e-3 * std::sqrt(m + 1.0))
    return m + x * x / (2.0 * (m + 1.0));
  const double im = gsl_sf_bessel_In_scaled(m, x);
  const double imm1 = gsl_sf_bessel_In_scaled(m >= 1 ? m - 1 : 1, x);
  if (im == 0.0) throw std::runtime_error("log_deriv_i: scaled I_m underflow");
  if (m == 0) return x * imm1 / im;  // I_0' = I_1
  return x * imm1 / im - m;
}

double log_deriv_k(int m, double x) {
  const double km = gsl_sf_bessel_Kn_scaled(m, x);
  const double kmm1 = gsl_sf_bessel_Kn_scaled(m >= 1 ? m - 1 : 1, x);
  if (m == 0) return -x * kmm1 / km;  // K_0' = -K_1
  return -x * kmm1 / km - m;
}

double i_ratio_radial(int m, double x, double r) {
  if (r < 0.0 || r > 1.0)
    throw std::invalid_argument("i_ratio_radial: r must be in [0,1]");
  const double denom = gsl_sf_bessel_In_scaled(m, x);
  if (denom == 0.0) throw std::runtime_error("i_ratio_radial: underflow");
  return gsl_sf_bessel_In_scaled(m, x * r) / denom * std::exp(-x * (1.0 - r));
}

double i_ratio_radial_deriv(int m, double x, double r) {
  const double denom = gsl_sf_bessel_In_scaled(m, x);
  if (denom == 0.0) throw std::runtime_error("i_ratio_radial_deriv: underflow");
  const double xr = x * r;
  // I_m'(xr) e^{-xr} = I_{m-1}(xr) e^{-xr} - (m/xr) I_m(xr) e^{-xr}
  double dscaled;
  if (xr < 1e-12) {
    dscaled = (m == 1) ? 0.5 : 0.0;  // I_m'(0) = 1/2 for m=1, else 0
  } else {
    const double imm1 = gsl_sf_bessel_In_scaled(m >= 1 ? m - 1 : 1, xr);
    const double im = gsl_sf_bessel_In_scaled(m, xr);
    dscaled = (m == 0) ? imm1 : imm1 - (double(m) / xr) * im;
  }
  return x * dscaled / denom * std::exp(-x * (1.0 - r));
}

}  // namespace robinlab::bessel
