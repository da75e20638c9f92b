#include "robinlab/banded.hpp"

#include <lapacke.h>

#include <stdexcept>
#include <string>

namespace robinlab::banded {

EigPairs lowest(const TriPencil& p, int k, bool want_vectors) {
  const int n = p.size();
  if (k < 1 || k > n) throw std::invalid_argument("banded::lowest: bad k");
  // ka = kb = 1, uplo = 'U', col-major: ab(1,j) superdiagonal, ab(2,j) diagonal
  std::vector<double> ab(2 * n, 0.0), bb(2 * n, 0.0);
  for (int j = 0; j < n; ++j) {
    ab[2 * j + 1] = p.a_diag[j];
    bb[2 * j + 1] = p.b_diag[j];
    if (j > 0) {
      ab[2 * j + 0] = p.a_off[j - 1];
      bb[2 * j + 0] = p.b_off[j - 1];
    }
  }
  EigPairs out;
  out.values.resize(n);
  std::vector<double> q(want_vectors ? static_cast<std::size_t>(n) * n : 1);
  std::vector<double> z(want_vectors ? static_cast<std::size_t>(n) * k : 1);
  std::vector<lapack_int> ifail(n, 0);
  lapack_int m = 0;
  const double abstol = 2.0 * LAPACKE_dlamch('S');
  const lapack_int info = LAPACKE_dsbgvx(
      LAPACK_COL_MAJOR, want_vectors ? 'V' : 'N', 'I', 'U', n, 1, 1, ab.data(),
      2, bb.data(), 2, q.data(), n, 0.0, 0.0, 1, k, abstol, &m,
      out.values.data(), z.data(), n, ifail.data());
  if (info != 0)
    throw std::runtime_error("banded::lowest: dsbgvx failed, info=" +
                             std::to_string(info));
  if (m < k)
    throw std::runtime_error("banded::lowest: only " + std::to_string(m) +
                             " of " + std::to_string(k) + " eigenvalues converged");
  out.values.conservativeResize(k);
  if (want_vectors) {
    out.vectors.resize(n, k);
    for (int j = 0; j < k; ++j)
      for (int i = 0; i < n; ++i) out.vectors(i, j) = z[j * n + i];
  }
  return out;
}

Eigen::VectorXd apply_tridiag(const std::vector<double>& diag,
                              const std::vector<double>& off,
                              const Eigen::VectorXd& x) {
  const int n = static_cast<int>(diag.size());
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) {
    double v = diag[i] * x[i];
    if (i > 0) v += off[i - 1] * x[i - 1];
    if (i + 1 < n) v += off[i] * x[i + 1];
    y[i] = v;
  }
  return y;
}

Eigen::VectorXd solve_tridiag_spd(const std::vector<double>& diag,
                                  const std::vector<double>& off,
                                  const Eigen::VectorXd& rhs) {
  const int n = static_cast<int>(diag.size());
  std::vector<double> d = diag, e = off;
  Eigen::VectorXd b = rhs;
  const lapack_int info =
      LAPACKE_dptsv(LAPACK_COL_MAJOR, n, 1, d.data(), e.data(), b.data(), n);
  if (info != 0)
    throw std::runtime_error("solve_tridiag_spd: dptsv failed, info=" +
                             std::to_string(info));
  return b;
}

}  // namespace robinlab::banded
