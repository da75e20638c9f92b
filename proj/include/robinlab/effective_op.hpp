#pragma once
#include <Eigen/Dense>
#include <vector>

#include "robinlab/geometry.hpp"

// Effective boundary operator on R/2LZ:
//   L_h^c = -(h^{1/2} + c h^{3/4}) d^2/ds^2 - kappa(s) - (1/2) h^{1/2} kappa(s)^2
//           + c h^{7/8}
// discretized in the real trigonometric basis
//   { (2L)^{-1/2}, L^{-1/2} cos(k pi s/L), L^{-1/2} sin(k pi s/L) }, k = 1..K,
// where the potential enters through Fourier coefficients of kappa and
// kappa^2 (exact convolutions of the stored curvature spectrum).

namespace robinlab::effective {

// lambda_1^F = 0, lambda_{2k}^F = lambda_{2k+1}^F = (pi k / L)^2, ascending.
std::vector<double> fourier_mode_eigs(double L, int n_max);

class EffectiveOperator {
 public:
  EffectiveOperator(const geometry::Curve& curve, double h, double c, int K);

  // Hermitian in exact arithmetic; real symmetric of size 2K+1 here.
  const Eigen::MatrixXd& matrix() const { return mat_; }
  // |kappa_hat(2K)| / |kappa_hat(0)| <= 1e-12, i.e. the convolution is not
  // visibly truncated.
  bool truncation_adequate() const { return truncation_ok_; }

  Eigen::VectorXd eigenvalues(int n_eigs) const;
  // Dominant Fourier index |k| per eigenvector, same ordering.
  std::vector<int> dominant_modes(int n_eigs) const;

  double h() const { return h_; }
  double c() const { return c_; }
  int K() const { return K_; }

 private:
  double h_, c_;
  int K_;
  bool truncation_ok_ = true;
  Eigen::MatrixXd mat_;
};

}  // namespace robinlab::effective
