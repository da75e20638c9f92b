#pragma once
#include <Eigen/Dense>
#include <vector>

namespace robinlab::banded {

// Symmetric tridiagonal pencil A x = lambda B x with B positive definite.
// These arise from P1 finite elements on an interval.
struct TriPencil {
  std::vector<double> a_diag, a_off;  // a_off.size() == n-1
  std::vector<double> b_diag, b_off;

  int size() const { return static_cast<int>(a_diag.size()); }
};

struct EigPairs {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // B-orthonormal columns; empty if not requested
};

// Lowest k eigenpairs via LAPACK's banded generalized solver (dsbgvx).
EigPairs lowest(const TriPencil& p, int k, bool want_vectors = true);

// x -> B^{-1} A x  and related helpers used by the quasimode residual.
Eigen::VectorXd apply_tridiag(const std::vector<double>& diag,
                              const std::vector<double>& off,
                              const Eigen::VectorXd& x);
Eigen::VectorXd solve_tridiag_spd(const std::vector<double>& diag,
                                  const std::vector<double>& off,
                                  const Eigen::VectorXd& rhs);

}  // namespace robinlab::banded
