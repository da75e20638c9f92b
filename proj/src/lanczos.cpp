#include "robinlab/lanczos.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace robinlab::lanczos {

namespace {

struct RitzState {
  Eigen::VectorXd theta;  // descending (largest of OP first = lowest lambda)
  Eigen::MatrixXd y;
  int converged_below = 0;
  bool covered = false;
};

}  // namespace

Result lowest_shift_invert(const Operators& op, const Options& opt) {
  const int n = op.n;
  if (n < 1) throw std::invalid_argument("lanczos: empty operator");
  if (!(opt.threshold > opt.sigma))
    throw std::invalid_argument("lanczos: shift must lie below the threshold");
  const int m_max = std::min(opt.max_iter, n);

  Eigen::MatrixXd Q(n, m_max + 1);
  std::vector<double> alpha, beta;
  alpha.reserve(m_max);
  beta.reserve(m_max);

  Eigen::VectorXd q(n);
  for (int i = 0; i < n; ++i) q[i] = 1.0 + 0.5 * std::sin(1.7 * i + 0.3);
  {
    const double nrm = std::sqrt(q.dot(op.apply_B(q)));
    q /= nrm;
  }
  Q.col(0) = q;

  // theta = 1/(lambda - sigma); eigenvalues below `threshold` correspond to
  // theta above 1/(threshold - sigma).
  const double theta_cut = 1.0 / (opt.threshold - opt.sigma);

  auto ritz = [&](int m) {
    RitzState st;
    Eigen::VectorXd d(m), e(std::max(m - 1, 0));
    for (int i = 0; i < m; ++i) d[i] = alpha[i];
    for (int i = 0; i + 1 < m; ++i) e[i] = beta[i];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(d, e);
    // ascending in theta; we want descending
    st.theta = es.eigenvalues().reverse();
    st.y = es.eigenvectors().rowwise().reverse();
    const double bm = beta.empty() ? 0.0 : beta.back();
    st.converged_below = 0;
    st.covered = false;
    for (int i = 0; i < m; ++i) {
      const double th = st.theta[i];
      if (!(th > 0.0)) break;  // below-shift artifacts cannot occur; safety
      const double resid = bm * std::abs(st.y(m - 1, i));
      const double lam_err = resid / (th * th);
      const double lam = opt.sigma + 1.0 / th;
      const bool conv = lam_err <= opt.tol * std::max(std::abs(lam), 1e-12);
      if (!conv) break;
      if (th >= theta_cut) ++st.converged_below;
      else {
        st.covered = true;  // converged value at/above the threshold
        break;
      }
    }
    return st;
  };

  RitzState st;
  int m = 0;
  for (int j = 0; j < m_max; ++j) {
    Eigen::VectorXd w = op.solve_shifted(op.apply_B(Q.col(j)));
    // full reorthogonalization in the B inner product (two passes)
    for (int pass = 0; pass < 2; ++pass) {
      const Eigen::VectorXd bw = op.apply_B(w);
      const Eigen::VectorXd coef = Q.leftCols(j + 1).transpose() * bw;
      w.noalias() -= Q.leftCols(j + 1) * coef;
      if (pass == 0) alpha.push_back(coef[j]);
      else alpha.back() += coef[j];
    }
    const double b = std::sqrt(std::max(w.dot(op.apply_B(w)), 0.0));
    m = j + 1;
    if (b < 1e-14) {  // invariant subspace exhausted
      beta.push_back(0.0);
      st = ritz(m);
      beta.pop_back();
      break;
    }
    beta.push_back(b);
    Q.col(j + 1) = w / b;

    if (m >= 8 && m % 8 == 0) {
      st = ritz(m);
      if (st.covered && st.converged_below >= 0 &&
          st.converged_below + 1 >= opt.min_converged)
        break;
    }
  }
  if (st.theta.size() == 0) st = ritz(m);

  // collect converged pairs: all below threshold plus the certifying one
  const double bm = beta.size() >= static_cast<std::size_t>(m) ? beta[m - 1] : 0.0;
  int keep = 0;
  for (int i = 0; i < m; ++i) {
    const double th = st.theta[i];
    if (!(th > 0.0)) break;
    const double lam = opt.sigma + 1.0 / th;
    const double lam_err = bm * std::abs(st.y(m - 1, i)) / (th * th);
    if (lam_err > opt.tol * std::max(std::abs(lam), 1e-12)) break;
    ++keep;
    if (th < theta_cut) break;  // first converged value above threshold
  }
  Result res;
  res.iterations = m;
  res.coverage_certified = st.covered;
  res.values.resize(keep);
  for (int i = 0; i < keep; ++i) res.values[i] = opt.sigma + 1.0 / st.theta[i];
  if (opt.want_vectors && keep > 0)
    res.vectors = Q.leftCols(m) * st.y.leftCols(keep);
  return res;
}

}  // namespace robinlab::lanczos
