#include "robinlab/model1d.hpp"

#include <algorithm>
#include <stdexcept>

#include "robinlab/banded.hpp"

namespace robinlab::model1d {

namespace {

// Pole-free forms of the transcendental conditions.  Bisection assumes a
// sign change on the bracket; the brackets below are analytic consequences
// of monotonicity, so failure is a programming error.
template <class F, class DF>
double bisect_newton(F&& f, DF&& df, double lo, double hi) {
  double flo = f(lo);
  if (flo == 0.0) return lo;
  if (flo * f(hi) > 0.0)
    throw std::logic_error("bisect_newton: bracket does not change sign");
  for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max(1.0, std::abs(lo));
       ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) { lo = hi = mid; break; }
    if (flo * fm <= 0.0) hi = mid;
    else { lo = mid; flo = fm; }
  }
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 3; ++it) {
    const double d = df(x);
    if (d == 0.0) break;
    const double step = f(x) / d;
    const double y = x - step;
    if (y > lo - (hi - lo) && y < hi + (hi - lo)) x = y;
  }
  return x;
}

}  // namespace

HalfLineSpectrum halfline_spectrum() { return {}; }

double cutoff(double x) {
  const double a = std::abs(x);
  if (a <= 0.5) return 1.0;
  if (a >= 1.0) return 0.0;
  const double y = 2.0 * a - 1.0;
  return 1.0 - y * y * y * (10.0 + y * (-15.0 + 6.0 * y));
}

double interval_negative_eig(const IntervalProblem& prob) {
  const double T = prob.T;
  if (!(T > 1.0))
    throw std::invalid_argument("interval_negative_eig: T must exceed 1");
  double mu;
  if (prob.cap == Cap::dirichlet) {
    // tanh(mu T) = mu  <=>  (1 - mu) - (1 + mu) e^{-2 mu T} = 0, mu in (0,1)
    auto f = [T](double m) { return (1.0 - m) - (1.0 + m) * std::exp(-2.0 * m * T); };
    auto df = [T](double m) {
      return -1.0 + (2.0 * T * (1.0 + m) - 1.0) * std::exp(-2.0 * m * T);
    };
    mu = bisect_newton(f, df, 1e-12, 1.0 - 1e-16);
  } else {
    // mu = coth(mu T)  <=>  (mu - 1) - (mu + 1) e^{-2 mu T} = 0, mu > 1
    auto f = [T](double m) { return (m - 1.0) - (m + 1.0) * std::exp(-2.0 * m * T); };
    auto df = [T](double m) {
      return 1.0 + (2.0 * T * (m + 1.0) - 1.0) * std::exp(-2.0 * m * T);
    };
    mu = bisect_newton(f, df, 1.0 + 1e-16, 2.0);
  }
  return -mu * mu;
}

std::vector<double> interval_positive_eigs(const IntervalProblem& prob, int n_max) {
  const double T = prob.T;
  if (!(T > 1.0))
    throw std::invalid_argument("interval_positive_eigs: T must exceed 1");
  if (n_max < 2)
    throw std::invalid_argument("interval_positive_eigs: n_max must be >= 2");
  const double pi = M_PI;
  std::vector<double> out;
  out.reserve(n_max - 1);
  for (int n = 2; n <= n_max; ++n) {
    double lo, hi, l;
    if (prob.cap == Cap::dirichlet) {
      // tan(lT) = l  <=>  sin(lT) - l cos(lT) = 0 in ((n-1)pi/T,(2n-1)pi/2T)
      const int k = n - 1;
      lo = k * pi / T;
      hi = (2 * k + 1) * pi / (2.0 * T);
      auto f = [T](double x) { return std::sin(x * T) - x * std::cos(x * T); };
      auto df = [T](double x) {
        return T * std::cos(x * T) - std::cos(x * T) + x * T * std::sin(x * T);
      };
      const double eps = 1e-13 * (1.0 + hi);
      l = bisect_newton(f, df, lo + eps, hi - eps);
      if (!(l > lo && l < hi))
        throw std::runtime_error("interval_positive_eigs: bracket failure at k=" +
                                 std::to_string(k));
    } else {
      // cot(lT) = -l  <=>  cos(lT) + l sin(lT) = 0 in I_{n-2}
      const int k = n - 2;
      lo = pi / (2.0 * T) + k * pi / T;
      hi = pi / T + k * pi / T;
      auto f = [T](double x) { return std::cos(x * T) + x * std::sin(x * T); };
      auto df = [T](double x) {
        return -T * std::sin(x * T) + std::sin(x * T) + x * T * std::cos(x * T);
      };
      const double eps = 1e-13 * (1.0 + hi);
      l = bisect_newton(f, df, lo + eps, hi - eps);
      if (!(l > lo && l < hi))
        throw std::runtime_error("interval_positive_eigs: bracket failure at k=" +
                                 std::to_string(k));
    }
    out.push_back(l * l);
  }
  return out;
}

void WeightedProblem::validate() const {
  if (!(h > 0.0 && h < 1.0))
    throw std::invalid_argument("WeightedProblem: h must be in (0,1)");
  if (!(rho > 1.0 / 3.0 && rho < 0.5))
    throw std::invalid_argument("WeightedProblem: rho must be in (1/3,1/2)");
  if (!(T() > 1.0)) throw std::invalid_argument("WeightedProblem: T must exceed 1");
  if (grid_size < 200)
    throw std::invalid_argument("WeightedProblem: need at least 200 elements");
  const double wmin = 1.0 - std::sqrt(h) * std::max(beta, 0.0) * T();
  if (!(wmin > 0.5))
    throw std::invalid_argument("WeightedProblem: weight must stay above 1/2");
}

Discretization assemble(const WeightedProblem& prob, int n_elems) {
  const double T = prob.T();
  const double sb = std::sqrt(prob.h) * prob.beta;
  const int N = n_elems;
  const double dt = T / N;
  Discretization d;
  d.dirichlet_cap = (prob.cap == Cap::dirichlet);
  d.grid.resize(N + 1);
  for (int i = 0; i <= N; ++i) d.grid[i] = i * dt;

  const int n = d.dirichlet_cap ? N : N + 1;
  d.a_diag.assign(n, 0.0);
  d.a_off.assign(n - 1, 0.0);
  d.b_diag.assign(n, 0.0);
  d.b_off.assign(n - 1, 0.0);

  // 2-point Gauss is exact for the cubic mass integrand with affine weight
  const double gq = 0.5 / std::sqrt(3.0);
  const double xq[2] = {0.5 - gq, 0.5 + gq};
  for (int e = 0; e < N; ++e) {
    const double t0 = e * dt;
    const double wmid = 1.0 - sb * (t0 + 0.5 * dt);
    const double ke = wmid / dt;
    double m00 = 0, m01 = 0, m11 = 0;
    for (int q = 0; q < 2; ++q) {
      const double x = xq[q];
      const double w = 0.5 * dt * (1.0 - sb * (t0 + x * dt));
      m00 += w * (1.0 - x) * (1.0 - x);
      m01 += w * (1.0 - x) * x;
      m11 += w * x * x;
    }
    auto add = [&](int i, int j, double a, double m) {
      if (i >= n || j >= n) return;  // Dirichlet cap eliminates the last node
      if (i == j) {
        d.a_diag[i] += a;
        d.b_diag[i] += m;
      } else {
        d.a_off[std::min(i, j)] += a;
        d.b_off[std::min(i, j)] += m;
      }
    };
    add(e, e, ke, m00);
    add(e, e + 1, -ke, m01);
    add(e + 1, e + 1, ke, m11);
  }
  d.a_diag[0] -= 1.0;  // Robin term -|u(0)|^2
  return d;
}

WeightedEigs weighted_eigs(const WeightedProblem& prob, int n_eigs,
                           bool want_vectors) {
  prob.validate();
  const int N = prob.grid_size;
  const Discretization dc = assemble(prob, N);
  const Discretization df = assemble(prob, 2 * N);

  banded::TriPencil pc{dc.a_diag, dc.a_off, dc.b_diag, dc.b_off};
  banded::TriPencil pf{df.a_diag, df.a_off, df.b_diag, df.b_off};
  const banded::EigPairs ec = banded::lowest(pc, n_eigs, want_vectors);
  const banded::EigPairs ef = banded::lowest(pf, n_eigs, false);

  WeightedEigs out;
  out.grid = dc.grid;
  out.values_raw = ef.values;
  out.values = (4.0 * ef.values - ec.values) / 3.0;
  out.err_estimate = (ef.values - ec.values).cwiseAbs() / 3.0;
  if (want_vectors) {
    const int rows = static_cast<int>(dc.grid.size());
    out.vectors = Eigen::MatrixXd::Zero(rows, n_eigs);
    out.vectors.topRows(ec.vectors.rows()) = ec.vectors;
    for (int j = 0; j < n_eigs; ++j)
      if (out.vectors(0, j) < 0.0) out.vectors.col(j) *= -1.0;
  }
  return out;
}

Quasimode quasimode(const WeightedProblem& prob) {
  prob.validate();
  const double T = prob.T();
  const double b = prob.beta;
  const int N = prob.grid_size;
  const Discretization d = assemble(prob, N);

  Quasimode q;
  q.grid = d.grid;
  q.mu_app = -1.0 - b * std::sqrt(prob.h) - 0.5 * b * b * prob.h;
  const int n = static_cast<int>(d.a_diag.size());
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) {
    const double tau = d.grid[i];
    const double u1 = std::sqrt(2.0) * std::exp(-tau);
    v[i] = cutoff(tau / T) *
           (1.0 + b * b * prob.h * (tau * tau / 4.0 - 0.125)) * u1;
  }
  const double nrm = std::sqrt(v.dot(banded::apply_tridiag(d.b_diag, d.b_off, v)));
  q.c_h = 1.0 / nrm;
  Eigen::VectorXd full = Eigen::VectorXd::Zero(d.grid.size());
  full.head(n) = v / nrm;
  q.values = full;
  return q;
}

namespace {

double residual_on_grid(const WeightedProblem& prob, int n_elems) {
  WeightedProblem p = prob;
  p.grid_size = n_elems;
  const Discretization d = assemble(p, n_elems);
  const Quasimode q = quasimode(p);
  const int n = static_cast<int>(d.a_diag.size());
  const Eigen::VectorXd v = q.values.head(n);
  // r = B^{-1} A v - mu v, norm in the B inner product
  const Eigen::VectorXd av = banded::apply_tridiag(d.a_diag, d.a_off, v);
  const Eigen::VectorXd r =
      banded::solve_tridiag_spd(d.b_diag, d.b_off, av) - q.mu_app * v;
  return std::sqrt(r.dot(banded::apply_tridiag(d.b_diag, d.b_off, r)));
}

}  // namespace

ResidualResult quasimode_residual(const WeightedProblem& prob) {
  prob.validate();
  ResidualResult out;
  out.norm = residual_on_grid(prob, prob.grid_size);
  out.norm_coarse = residual_on_grid(prob, prob.grid_size / 2);
  out.resolution_limited =
      std::abs(out.norm - out.norm_coarse) > 0.2 * std::max(out.norm, 1e-300);
  return out;
}

GapResult gap_check(const WeightedProblem& prob) {
  prob.validate();
  WeightedProblem p = prob;
  p.grid_size = std::min(prob.grid_size, 800);  // dense deflation below
  const Discretization d = assemble(p, p.grid_size);
  const Quasimode q = quasimode(p);
  const int n = static_cast<int>(d.a_diag.size());

  GapResult out;
  out.scale = std::pow(prob.h, 1.0 - 2.0 * prob.rho);
  {
    banded::TriPencil pen{d.a_diag, d.a_off, d.b_diag, d.b_off};
    out.lambda2 = banded::lowest(pen, 2, false).values[1];
  }

  // Min-max over the B-orthogonal complement of v_h: reflect the constraint
  // vector B v_h onto e_1 with a Householder matrix and drop the first row
  // and column of the transformed dense pencil.
  Eigen::VectorXd v = q.values.head(n);
  Eigen::VectorXd g = banded::apply_tridiag(d.b_diag, d.b_off, v);
  const double gn = g.norm();
  if (!(gn > 0.0)) throw std::logic_error("gap_check: quasimode has zero norm");
  Eigen::VectorXd u = g / gn;
  u[0] += (u[0] >= 0.0 ? 1.0 : -1.0);
  u /= u.norm();

  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    A(i, i) = d.a_diag[i];
    B(i, i) = d.b_diag[i];
    if (i + 1 < n) {
      A(i, i + 1) = A(i + 1, i) = d.a_off[i];
      B(i, i + 1) = B(i + 1, i) = d.b_off[i];
    }
  }
  auto reflect = [&](Eigen::MatrixXd& M) {
    const Eigen::VectorXd Mu = M * u;
    const double uMu = u.dot(Mu);
    M.noalias() -= 2.0 * u * Mu.transpose();
    M.noalias() -= 2.0 * Mu * u.transpose();
    M.noalias() += 4.0 * uMu * u * u.transpose();
  };
  reflect(A);
  reflect(B);
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(
      A.bottomRightCorner(n - 1, n - 1), B.bottomRightCorner(n - 1, n - 1),
      Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("gap_check: dense eigensolver failed");
  out.deflated_min = es.eigenvalues()[0];
  out.lambda2_scaled = out.lambda2 / out.scale;
  out.deflated_scaled = out.deflated_min / out.scale;
  return out;
}

}  // namespace robinlab::model1d
