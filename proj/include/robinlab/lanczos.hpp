#pragma once
#include <Eigen/Dense>
#include <functional>

// Shift-invert Lanczos for the generalized symmetric pencil A x = lambda B x
// with B positive definite and a shift sigma strictly below the spectrum.
// Works in the B inner product with full reorthogonalization; the caller
// supplies x -> B x and x -> (A - sigma B)^{-1} x.  Deterministic (fixed
// start vector).

namespace robinlab::lanczos {

struct Operators {
  int n = 0;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> apply_B;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> solve_shifted;
};

struct Options {
  double sigma = 0.0;
  double threshold = 0.0;  // converge every eigenvalue below this
  int min_converged = 1;   // and at least this many
  int max_iter = 600;
  double tol = 1e-9;       // relative accuracy of Ritz values
  bool want_vectors = true;
};

struct Result {
  Eigen::VectorXd values;   // ascending, converged only
  Eigen::MatrixXd vectors;  // B-orthonormal columns
  int iterations = 0;
  bool coverage_certified = false;  // a converged value >= threshold exists
};

Result lowest_shift_invert(const Operators& op, const Options& opt);

}  // namespace robinlab::lanczos
