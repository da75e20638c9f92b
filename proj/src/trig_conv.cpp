#include "robinlab/trig_conv.hpp"

#include <cmath>

namespace robinlab::trigconv {

bool is_even(std::span<const cplx> w, double tol) {
  double scale = std::abs(w.empty() ? cplx(1, 0) : w[0]) + 1.0;
  for (const auto& c : w)
    if (std::abs(c.imag()) > tol * scale) return false;
  return true;
}

Eigen::MatrixXd conv_full(std::span<const cplx> w, int K) {
  const int n = 2 * K + 1;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  const double s2 = std::sqrt(2.0);
  m(0, 0) = lag_re(w, 0);
  for (int k = 1; k <= K; ++k) {
    m(0, k) = m(k, 0) = s2 * lag_re(w, k);
    m(0, K + k) = m(K + k, 0) = -s2 * lag_im(w, k);
  }
  for (int k = 1; k <= K; ++k)
    for (int kp = 1; kp <= K; ++kp) {
      if (kp >= k) {
        m(k, kp) = lag_re(w, k - kp) + lag_re(w, k + kp);
        m(K + k, K + kp) = lag_re(w, k - kp) - lag_re(w, k + kp);
        if (kp > k) {
          m(kp, k) = m(k, kp);
          m(K + kp, K + k) = m(K + k, K + kp);
        }
      }
      m(k, K + kp) = lag_im(w, k - kp) - lag_im(w, k + kp);
      m(K + kp, k) = m(k, K + kp);
    }
  return m;
}

Eigen::MatrixXd conv_even(std::span<const cplx> w, int K) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(K + 1, K + 1);
  const double s2 = std::sqrt(2.0);
  m(0, 0) = lag_re(w, 0);
  for (int k = 1; k <= K; ++k) m(0, k) = m(k, 0) = s2 * lag_re(w, k);
  for (int k = 1; k <= K; ++k)
    for (int kp = k; kp <= K; ++kp) {
      m(k, kp) = lag_re(w, k - kp) + lag_re(w, k + kp);
      m(kp, k) = m(k, kp);
    }
  return m;
}

Eigen::MatrixXd conv_odd(std::span<const cplx> w, int K) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(K, K);
  for (int k = 1; k <= K; ++k)
    for (int kp = k; kp <= K; ++kp) {
      m(k - 1, kp - 1) = lag_re(w, k - kp) - lag_re(w, k + kp);
      m(kp - 1, k - 1) = m(k - 1, kp - 1);
    }
  return m;
}

}  // namespace robinlab::trigconv
