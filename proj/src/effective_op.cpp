#include "robinlab/effective_op.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "robinlab/trig_conv.hpp"

namespace robinlab::effective {

using cplx = std::complex<double>;

std::vector<double> fourier_mode_eigs(double L, int n_max) {
  if (!(L > 0.0)) throw std::invalid_argument("fourier_mode_eigs: L <= 0");
  std::vector<double> out(n_max);
  for (int n = 1; n <= n_max; ++n) {
    const int k = n / 2;
    out[n - 1] = std::pow(std::numbers::pi * k / L, 2);
  }
  return out;
}

namespace {

cplx kappa_lag(std::span<const cplx> kh, long long j) {
  const long long a = std::llabs(j);
  if (a >= static_cast<long long>(kh.size())) return {0.0, 0.0};
  return j >= 0 ? kh[a] : std::conj(kh[a]);
}

}  // namespace

EffectiveOperator::EffectiveOperator(const geometry::Curve& curve, double h,
                                     double c, int K)
    : h_(h), c_(c), K_(K) {
  if (!(h > 0.0)) throw std::invalid_argument("EffectiveOperator: h <= 0");
  if (K < 1) throw std::invalid_argument("EffectiveOperator: K < 1");
  const double L = curve.half_perimeter();
  const auto kh = curve.curvature_coeffs();
  truncation_ok_ =
      std::abs(kappa_lag(kh, 2 * K)) <= 1e-12 * (std::abs(kh[0]) + 1e-300);

  // V_j = -kappa_j - (sqrt(h)/2) (kappa^2)_j + c h^{7/8} delta_{j0};
  // (kappa^2)_j is the exact convolution of the stored spectrum.
  const int J = 2 * K;
  std::vector<cplx> V(J + 1, cplx(0, 0));
  const long long Jk = static_cast<long long>(kh.size()) - 1;
  for (int j = 0; j <= J; ++j) {
    cplx conv(0, 0);
    for (long long m = std::max<long long>(-Jk, j - Jk); m <= Jk; ++m)
      conv += kappa_lag(kh, m) * kappa_lag(kh, j - m);
    V[j] = -kappa_lag(kh, j) - 0.5 * std::sqrt(h) * conv;
  }
  V[0] += c * std::pow(h, 7.0 / 8.0);

  mat_ = trigconv::conv_full(V, K);
  const double kin = std::sqrt(h) + c * std::pow(h, 0.75);
  for (int k = 1; k <= K; ++k) {
    const double w = std::numbers::pi * k / L;
    mat_(k, k) += kin * w * w;
    mat_(K + k, K + k) += kin * w * w;
  }
}

Eigen::VectorXd EffectiveOperator::eigenvalues(int n_eigs) const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(mat_, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("EffectiveOperator: eigensolver failed");
  const int n = std::min<int>(n_eigs, mat_.rows());
  return es.eigenvalues().head(n);
}

std::vector<int> EffectiveOperator::dominant_modes(int n_eigs) const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(mat_);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("EffectiveOperator: eigensolver failed");
  const int n = std::min<int>(n_eigs, mat_.rows());
  std::vector<int> out(n);
  for (int j = 0; j < n; ++j) {
    int best = 0;
    double besta = std::abs(es.eigenvectors()(0, j));
    for (int i = 1; i < mat_.rows(); ++i) {
      const double a = std::abs(es.eigenvectors()(i, j));
      if (a > besta) {
        besta = a;
        best = i;
      }
    }
    out[j] = best == 0 ? 0 : (best <= K_ ? best : best - K_);
  }
  return out;
}

}  // namespace robinlab::effective
