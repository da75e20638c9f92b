#pragma once
#include <Eigen/Dense>
#include <complex>
#include <span>

// Multiplication-by-W(s) matrices on R/2LZ in the real trigonometric basis
// { (2L)^{-1/2}, L^{-1/2} cos(k pi s/L), L^{-1/2} sin(k pi s/L) } from the
// complex Fourier lags W_j (j >= 0 stored, W_{-j} = conj(W_j)).
//
// For even W (all lags real) the cosine and sine sectors decouple; the
// sector builders return those diagonal blocks.

namespace robinlab::trigconv {

using cplx = std::complex<double>;

inline double lag_re(std::span<const cplx> w, long long j) {
  const long long a = j < 0 ? -j : j;
  return a < static_cast<long long>(w.size()) ? w[a].real() : 0.0;
}
inline double lag_im(std::span<const cplx> w, long long j) {
  const long long a = j < 0 ? -j : j;
  if (a >= static_cast<long long>(w.size())) return 0.0;
  return j >= 0 ? w[a].imag() : -w[a].imag();
}

// size 2K+1, ordering [const, cos 1..K, sin 1..K]
Eigen::MatrixXd conv_full(std::span<const cplx> w, int K);

// size K+1, ordering [const, cos 1..K]; requires even W
Eigen::MatrixXd conv_even(std::span<const cplx> w, int K);

// size K, ordering [sin 1..K]; requires even W
Eigen::MatrixXd conv_odd(std::span<const cplx> w, int K);

bool is_even(std::span<const cplx> w, double tol = 1e-13);

}  // namespace robinlab::trigconv
