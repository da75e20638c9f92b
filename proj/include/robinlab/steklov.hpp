#pragma once
#include <span>

#include "robinlab/robin2d.hpp"

// Generalized Steklov / Dirichlet-to-Neumann spectra and the correspondence
// with the negative Robin eigenvalues: mu ~ h^{-1} sqrt(h + lambda).

namespace robinlab::steklov {

// DtN eigenvalue of angular mode m on the unit disk at spectral parameter w:
//   w < 0:  sqrt(-w) I_m'(sqrt(-w)) / I_m(sqrt(-w))
//   w = 0:  m
//   0 < w < lambda_1^D:  sqrt(w) J_m'(sqrt(w)) / J_m(sqrt(w))
// Rejects w at or beyond the first Dirichlet eigenvalue j_{0,1}^2.
double dtn_disk_eig(double w, int m);

// h^{-1} sqrt(h + lambda); rejects lambda < -h (below the spectral floor).
double robin_to_steklov(double h, double lambda);

struct WeylCount {
  int count = 0;
  double prediction = 0.0;  // (|Gamma|/pi) sqrt(1 + threshold/h) h^{-1/2}
  double deviation = 0.0;   // count - prediction
};

WeylCount weyl_count(const robin2d::SpectrumResult& spec, double threshold);

struct RozenblumReport {
  double max_pair_gap = 0.0;     // max_k |mu_{2k+1} - mu_{2k}|
  double max_linear_dev = 0.0;   // max_k |mu_{2k} - pi k / L|
  int k_min = 0, k_max = 0;
};

// mu is the ascending Steklov list (1-based pairing mu_1 = 0, mu_2 = mu_3, ...).
RozenblumReport rozenblum_check(double L, std::span<const double> mu, int k_min,
                                int k_max);

}  // namespace robinlab::steklov
