#pragma once

// Exponentially scaled modified Bessel helpers (wrappers around GSL).
// All ratios are formed from scaled values so that arguments up to ~1e4
// never overflow.

namespace robinlab::bessel {

// e^{-x} I_m(x), x >= 0
double i_scaled(int m, double x);

// e^{+x} K_m(x), x > 0
double k_scaled(int m, double x);

double j(int m, double x);

// x I_m'(x) / I_m(x).  Increasing in x, value m at x = 0.
// Uses I_m'(x) = I_{m-1}(x) - (m/x) I_m(x); small-x series below the
// threshold where the scaled ratio degenerates to 0/0.
double log_deriv_i(int m, double x);

// d/dx of log_deriv_i at (x, G): Riccati identity (x^2 + m^2 - G^2)/x.
inline double log_deriv_i_prime(int m, double x, double G) {
  return (x * x + double(m) * m - G * G) / x;
}

// x K_m'(x) / K_m(x) (negative); K_m'(x) = -K_{m-1}(x) - (m/x) K_m(x).
double log_deriv_k(int m, double x);

// I_m(x*r)/I_m(x) for 0 <= r <= 1 without overflow.
double i_ratio_radial(int m, double x, double r);

// d/dr of i_ratio_radial: x I_m'(x r)/I_m(x).
double i_ratio_radial_deriv(int m, double x, double r);

}  // namespace robinlab::bessel
