#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>

#include "robinlab/banded.hpp"
#include "robinlab/bessel.hpp"
#include "robinlab/lanczos.hpp"
#include "robinlab/parallel.hpp"
#include "robinlab/robin2d.hpp"
#include "robinlab/trig_conv.hpp"

// Boundary-collar Galerkin solver for T_h on [-L,L) x [0,delta]:
// trigonometric basis along the boundary, P1 elements across, metric
// a(s,t) = 1 - t kappa(s).  Assembled in w-units (lambda = h^2 w), so the
// quadratic form is
//   int (|d_t psi|^2 a + a^{-1} |d_s psi|^2) dt ds - h^{-1/2} int |psi(s,0)|^2 ds
// against the weighted mass int |psi|^2 a dt ds.  Dirichlet or Neumann at
// t = delta gives the upper/lower bracketing side.

namespace robinlab::robin2d {

namespace {

constexpr double kPi = std::numbers::pi;

// 4-point Gauss on [0,1]
constexpr int kNq = 4;
constexpr double kQx[kNq] = {0.06943184420297371, 0.33000947820757187,
                             0.66999052179242813, 0.93056815579702629};
constexpr double kQw[kNq] = {0.17392742256872693, 0.32607257743127307,
                             0.32607257743127307, 0.17392742256872693};

std::vector<double> make_mesh(double delta, int nt, double grading) {
  std::vector<double> t(nt + 1);
  for (int i = 0; i <= nt; ++i) {
    const double xi = double(i) / nt;
    t[i] = grading > 0.0
               ? delta * std::expm1(grading * xi) / std::expm1(grading)
               : delta * xi;
  }
  return t;
}

struct BlockTridiag {
  std::vector<Eigen::MatrixXd> D;
  std::vector<Eigen::MatrixXd> E;  // block (i, i+1)

  int nb() const { return D.empty() ? 0 : static_cast<int>(D[0].rows()); }
  int dim() const { return static_cast<int>(D.size()) * nb(); }

  Eigen::VectorXd apply(const Eigen::VectorXd& x) const {
    const int b = nb(), n = static_cast<int>(D.size());
    Eigen::VectorXd y(dim());
    for (int i = 0; i < n; ++i) {
      Eigen::VectorXd v = D[i] * x.segment(i * b, b);
      if (i > 0) v.noalias() += E[i - 1].transpose() * x.segment((i - 1) * b, b);
      if (i + 1 < n) v.noalias() += E[i] * x.segment((i + 1) * b, b);
      y.segment(i * b, b) = v;
    }
    return y;
  }
};

// Cholesky-type factorization of A - sigma B by block Schur complements;
// succeeds iff A - sigma B is positive definite.
struct BlockChol {
  std::vector<Eigen::LLT<Eigen::MatrixXd>> S;
  std::vector<Eigen::MatrixXd> F;  // S_i^{-1} E_i
  int b = 0;

  bool factor(const BlockTridiag& A, const BlockTridiag& B, double sigma) {
    const int n = static_cast<int>(A.D.size());
    b = A.nb();
    S.clear();
    F.clear();
    S.reserve(n);
    F.reserve(n - 1);
    Eigen::MatrixXd schur = A.D[0] - sigma * B.D[0];
    for (int i = 0; i < n; ++i) {
      S.emplace_back(schur);
      if (S.back().info() != Eigen::Success) return false;
      if (i + 1 < n) {
        const Eigen::MatrixXd Ei = A.E[i] - sigma * B.E[i];
        F.push_back(S.back().solve(Ei));
        schur = A.D[i + 1] - sigma * B.D[i + 1] - Ei.transpose() * F.back();
      }
    }
    return true;
  }

  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const {
    const int n = static_cast<int>(S.size());
    Eigen::VectorXd z = rhs;
    for (int i = 1; i < n; ++i)
      z.segment(i * b, b).noalias() -=
          F[i - 1].transpose() * z.segment((i - 1) * b, b);
    for (int i = 0; i < n; ++i)
      z.segment(i * b, b) = S[i].solve(z.segment(i * b, b));
    for (int i = n - 2; i >= 0; --i)
      z.segment(i * b, b).noalias() -= F[i] * z.segment((i + 1) * b, b);
    return z;
  }
};

enum class Sector { even, odd, full };

struct SectorBasis {
  Sector sector;
  int K;  // frequencies 1..K (+ constant in even/full)
  int nb;
  // frequency and full-layout index of each basis function
  std::vector<double> omega;
  std::vector<int> full_index;
};

SectorBasis make_sector(Sector s, int K, double L) {
  SectorBasis b;
  b.sector = s;
  b.K = K;
  if (s == Sector::even) {
    b.nb = K + 1;
    for (int k = 0; k <= K; ++k) {
      b.omega.push_back(kPi * k / L);
      b.full_index.push_back(k);
    }
  } else if (s == Sector::odd) {
    b.nb = K;
    for (int k = 1; k <= K; ++k) {
      b.omega.push_back(kPi * k / L);
      b.full_index.push_back(K + k);
    }
  } else {
    b.nb = 2 * K + 1;
    for (int k = 0; k <= K; ++k) {
      b.omega.push_back(kPi * k / L);
      b.full_index.push_back(k);
    }
    for (int k = 1; k <= K; ++k) {
      b.omega.push_back(kPi * k / L);
      b.full_index.push_back(K + k);
    }
  }
  return b;
}

Eigen::MatrixXd sector_conv(const SectorBasis& sb,
                            std::span<const trigconv::cplx> lags) {
  switch (sb.sector) {
    case Sector::even: return trigconv::conv_even(lags, sb.K);
    case Sector::odd: return trigconv::conv_odd(lags, sb.K);
    case Sector::full: return trigconv::conv_full(lags, sb.K);
  }
  return {};
}

// Fourier lags of 1/(1 - t kappa(s)) on a uniform s grid, lags 0..2K.
// One row per requested t; this is the hot assembly kernel.
std::vector<std::vector<trigconv::cplx>> inverse_metric_lags(
    const std::vector<double>& kappa_s, const std::vector<double>& ts, int K) {
  const int ng = static_cast<int>(kappa_s.size());
  const int nl = 2 * K + 1;
  std::vector<std::vector<trigconv::cplx>> out(ts.size());
  par::parallel_for(ts.size(), [&](std::size_t it) {
    const double t = ts[it];
    std::vector<trigconv::cplx> acc(nl, {0.0, 0.0});
    for (int n = 0; n < ng; ++n) {
      const double a = 1.0 - t * kappa_s[n];
      if (!(a > 0.0))
        throw std::domain_error("collar: metric nonpositive inside collar");
      const double p = 1.0 / a;
      const double ang = -2.0 * kPi * n / ng;
      const trigconv::cplx rot(std::cos(ang), std::sin(ang));
      trigconv::cplx z(p, 0.0);
      for (int j = 0; j < nl; ++j) {
        acc[j] += z;
        z *= rot;
      }
    }
    for (auto& c : acc) c /= double(ng);
    out[it] = std::move(acc);
  });
  return out;
}

struct SectorPencil {
  SectorBasis basis;
  BlockTridiag A, B;
};

// Assemble one sector on the given t mesh.
SectorPencil assemble_sector(const geometry::Curve& curve, double h,
                             const std::vector<double>& mesh, int K,
                             Sector sector, InnerBC inner) {
  const double L = curve.half_perimeter();
  const int nt = static_cast<int>(mesh.size()) - 1;
  SectorPencil P;
  P.basis = make_sector(sector, K, L);
  const int nb = P.basis.nb;

  // kappa on the DFT grid and metric lags at every Gauss node
  const int ng = std::max(2048, 8 * K + 8);
  std::vector<double> kappa_s(ng);
  for (int n = 0; n < ng; ++n)
    kappa_s[n] = curve.curvature(-L + 2.0 * L * n / ng);
  std::vector<double> tq_all(nt * kNq);
  for (int e = 0; e < nt; ++e)
    for (int q = 0; q < kNq; ++q)
      tq_all[e * kNq + q] = mesh[e] + (mesh[e + 1] - mesh[e]) * kQx[q];
  const auto ainv_lags = inverse_metric_lags(kappa_s, tq_all, K);

  const Eigen::MatrixXd Ck = sector_conv(P.basis, curve.curvature_coeffs());
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(nb, nb);
  Eigen::VectorXd omega(nb);
  for (int b = 0; b < nb; ++b) omega[b] = P.basis.omega[b];

  const int nn = inner == InnerBC::dirichlet ? nt : nt + 1;
  P.A.D.assign(nn, Eigen::MatrixXd::Zero(nb, nb));
  P.A.E.assign(nn - 1, Eigen::MatrixXd::Zero(nb, nb));
  P.B.D.assign(nn, Eigen::MatrixXd::Zero(nb, nb));
  P.B.E.assign(nn - 1, Eigen::MatrixXd::Zero(nb, nb));

  std::vector<Eigen::MatrixXd> Add(nt, Eigen::MatrixXd::Zero(nb, nb));
  std::vector<Eigen::MatrixXd> Ado(nt, Eigen::MatrixXd::Zero(nb, nb));
  std::vector<Eigen::MatrixXd> Add2(nt, Eigen::MatrixXd::Zero(nb, nb));
  std::vector<Eigen::MatrixXd> Bdd(nt, Eigen::MatrixXd::Zero(nb, nb));
  std::vector<Eigen::MatrixXd> Bdo(nt, Eigen::MatrixXd::Zero(nb, nb));
  std::vector<Eigen::MatrixXd> Bdd2(nt, Eigen::MatrixXd::Zero(nb, nb));

  par::parallel_for(nt, [&](std::size_t ee) {
    const int e = static_cast<int>(ee);
    const double dt = mesh[e + 1] - mesh[e];
    const double tbar = 0.5 * (mesh[e] + mesh[e + 1]);
    // d_t term: exact for the affine metric
    const Eigen::MatrixXd Ktt = (I - tbar * Ck) / dt;
    Eigen::MatrixXd Kss00 = Eigen::MatrixXd::Zero(nb, nb);
    Eigen::MatrixXd Kss01 = Eigen::MatrixXd::Zero(nb, nb);
    Eigen::MatrixXd Kss11 = Eigen::MatrixXd::Zero(nb, nb);
    Eigen::MatrixXd M00 = Eigen::MatrixXd::Zero(nb, nb);
    Eigen::MatrixXd M01 = Eigen::MatrixXd::Zero(nb, nb);
    Eigen::MatrixXd M11 = Eigen::MatrixXd::Zero(nb, nb);
    for (int q = 0; q < kNq; ++q) {
      const double x = kQx[q];
      const double wq = kQw[q] * dt;
      const double tq = tq_all[e * kNq + q];
      const Eigen::MatrixXd Cinv = sector_conv(P.basis, ainv_lags[e * kNq + q]);
      const Eigen::MatrixXd Omc =
          omega.asDiagonal() * Cinv * omega.asDiagonal();
      const Eigen::MatrixXd Ma = I - tq * Ck;
      const double n0 = 1.0 - x, n1 = x;
      Kss00 += wq * n0 * n0 * Omc;
      Kss01 += wq * n0 * n1 * Omc;
      Kss11 += wq * n1 * n1 * Omc;
      M00 += wq * n0 * n0 * Ma;
      M01 += wq * n0 * n1 * Ma;
      M11 += wq * n1 * n1 * Ma;
    }
    Add[e] = Ktt + Kss00;
    Ado[e] = -Ktt + Kss01;
    Add2[e] = Ktt + Kss11;
    Bdd[e] = M00;
    Bdo[e] = M01;
    Bdd2[e] = M11;
  });

  for (int e = 0; e < nt; ++e) {
    P.A.D[e] += Add[e];
    P.B.D[e] += Bdd[e];
    if (e + 1 < nn) {
      P.A.D[e + 1] += Add2[e];
      P.B.D[e + 1] += Bdd2[e];
      P.A.E[e] += Ado[e];
      P.B.E[e] += Bdo[e];
    }
  }
  P.A.D[0] -= I / std::sqrt(h);  // Robin boundary term at t = 0
  return P;
}

struct SectorEigs {
  Eigen::VectorXd w;       // ascending, in w-units
  Eigen::MatrixXd vectors; // sector layout, B-orthonormal
  bool covered = true;
};

SectorEigs solve_sector(const SectorPencil& P, const geometry::Curve& curve,
                        double h, double w_window, bool want_vectors) {
  const double kmax =
      std::max(std::abs(curve.max_curvature()), std::abs(curve.min_curvature()));
  double sigma = -(1.0 + 2.0 * (kmax + 1.0) * std::sqrt(h) + 0.2) / h;
  BlockChol chol;
  int tries = 0;
  while (!chol.factor(P.A, P.B, sigma)) {
    sigma *= 1.5;
    if (++tries > 6)
      throw std::runtime_error("collar: no positive-definite shift found");
  }
  lanczos::Operators ops;
  ops.n = P.A.dim();
  ops.apply_B = [&](const Eigen::VectorXd& x) { return P.B.apply(x); };
  ops.solve_shifted = [&](const Eigen::VectorXd& x) { return chol.solve(x); };
  lanczos::Options opt;
  opt.sigma = sigma;
  opt.threshold = w_window;
  const double L = curve.half_perimeter();
  const int expected =
      static_cast<int>((L / kPi) / std::sqrt(h)) + 8;
  opt.max_iter = std::min(ops.n, 3 * expected + 160);
  opt.min_converged = 1;
  opt.tol = 1e-10;
  opt.want_vectors = want_vectors;
  const lanczos::Result r = lanczos::lowest_shift_invert(ops, opt);

  SectorEigs out;
  out.covered = r.coverage_certified;
  int keep = 0;
  while (keep < r.values.size() && r.values[keep] < w_window) ++keep;
  out.w = r.values.head(keep);
  if (want_vectors && keep > 0) out.vectors = r.vectors.leftCols(keep);
  return out;
}

int dominant_mode(const SectorBasis& sb, const Eigen::VectorXd& v, int nn) {
  Eigen::VectorXd energy = Eigen::VectorXd::Zero(sb.nb);
  for (int i = 0; i < nn; ++i)
    energy += v.segment(i * sb.nb, sb.nb).cwiseAbs2();
  int best = 0;
  energy.maxCoeff(&best);
  const int fi = sb.full_index[best];
  return fi <= sb.K ? fi : fi - sb.K;
}

}  // namespace

void CollarDiscretization::validate(const geometry::Curve& curve,
                                    double h) const {
  if (delta <= 0.0 && !(rho > 1.0 / 3.0 && rho < 0.5))
    throw std::invalid_argument("CollarDiscretization: rho must be in (1/3,1/2)");
  const double d = depth(h);
  if (!(d > 0.0) || d >= curve.injectivity_bound())
    throw std::invalid_argument("CollarDiscretization: depth beyond injectivity radius");
  const double kmax =
      std::max(std::abs(curve.max_curvature()), std::abs(curve.min_curvature()));
  if (d * kmax > 0.95)
    throw std::invalid_argument("CollarDiscretization: collar too deep, metric near zero");
  if (Ns < 1 || Nt < 8)
    throw std::invalid_argument("CollarDiscretization: Ns >= 1 and Nt >= 8 required");
  const double cap = 2e5;
  if (double(2 * Ns - 1) * (2 * Nt + 1) > cap)
    throw std::invalid_argument("CollarDiscretization: matrix size cap exceeded");
}

SpectrumResult collar_spectrum(const geometry::Curve& curve, double h,
                               const CollarDiscretization& disc,
                               double window) {
  disc.validate(curve, h);
  if (window > 0.0)
    throw std::invalid_argument("collar_spectrum: only windows <= 0 supported");
  const double delta = disc.depth(h);
  const double w_window = window / (h * h);
  const int K = disc.Ns - 1;

  SpectrumResult res;
  res.h = h;
  res.window = window;
  res.domain_id = kind_name(curve.kind());
  res.problem_echo = {{"domain", kind_name(curve.kind())},
                      {"curve", curve.to_json()},
                      {"h", h},
                      {"window", window},
                      {"method", "collar"},
                      {"rho", disc.rho},
                      {"delta", delta},
                      {"Ns", disc.Ns},
                      {"Nt", disc.Nt},
                      {"inner_bc", inner_bc_name(disc.inner)},
                      {"grading", disc.grading},
                      {"richardson", disc.richardson}};

  auto data = std::make_shared<CollarData>();
  data->curve = curve;
  data->h = h;
  data->delta = delta;
  data->K = K;
  data->inner = disc.inner;

  const std::vector<double> mesh_c = make_mesh(delta, disc.Nt, disc.grading);
  const std::vector<double> mesh_f =
      disc.richardson ? make_mesh(delta, 2 * disc.Nt, disc.grading) : mesh_c;
  data->t_nodes = mesh_f;
  const int nb_full = 2 * K + 1;
  const int nn_f = disc.inner == InnerBC::dirichlet
                       ? static_cast<int>(mesh_f.size()) - 1
                       : static_cast<int>(mesh_f.size());

  struct Item {
    double w_f, w_c;
    int mode;
    Eigen::VectorXd vec;  // full layout on the fine mesh
  };
  std::vector<Item> items;

  if (curve.constant_curvature() && !disc.force_coupled) {
    // angular modes decouple; per-mode P1 pencils
    const double kap = curve.curvature(0.0);
    const double L = curve.half_perimeter();
    auto mode_pencil = [&](int k, const std::vector<double>& mesh) {
      const int nt = static_cast<int>(mesh.size()) - 1;
      const int nn = disc.inner == InnerBC::dirichlet ? nt : nt + 1;
      banded::TriPencil p;
      p.a_diag.assign(nn, 0.0);
      p.a_off.assign(nn - 1, 0.0);
      p.b_diag.assign(nn, 0.0);
      p.b_off.assign(nn - 1, 0.0);
      const double om = kPi * k / L;
      for (int e = 0; e < nt; ++e) {
        const double dt = mesh[e + 1] - mesh[e];
        const double tbar = 0.5 * (mesh[e] + mesh[e + 1]);
        const double ktt = (1.0 - tbar * kap) / dt;
        double k00 = 0, k01 = 0, k11 = 0, m00 = 0, m01 = 0, m11 = 0;
        for (int q = 0; q < kNq; ++q) {
          const double x = kQx[q];
          const double wq = kQw[q] * dt;
          const double tq = mesh[e] + dt * x;
          const double a = 1.0 - tq * kap;
          const double cinv = om * om / a;
          k00 += wq * (1 - x) * (1 - x) * cinv;
          k01 += wq * (1 - x) * x * cinv;
          k11 += wq * x * x * cinv;
          m00 += wq * (1 - x) * (1 - x) * a;
          m01 += wq * (1 - x) * x * a;
          m11 += wq * x * x * a;
        }
        auto add = [&](int i, int j, double av, double bv) {
          if (i >= nn || j >= nn) return;
          if (i == j) {
            p.a_diag[i] += av;
            p.b_diag[i] += bv;
          } else {
            p.a_off[std::min(i, j)] += av;
            p.b_off[std::min(i, j)] += bv;
          }
        };
        add(e, e, ktt + k00, m00);
        add(e, e + 1, -ktt + k01, m01);
        add(e + 1, e + 1, ktt + k11, m11);
      }
      p.a_diag[0] -= 1.0 / std::sqrt(h);
      return p;
    };
    for (int k = 0; k < disc.Ns; ++k) {
      const banded::TriPencil pc = mode_pencil(k, mesh_c);
      const banded::TriPencil pf = mode_pencil(k, mesh_f);
      const int nev = std::min(2, pc.size());
      const banded::EigPairs ec = banded::lowest(pc, nev, false);
      const banded::EigPairs ef = banded::lowest(pf, nev, true);
      for (int j = 0; j < nev; ++j) {
        if (!(ef.values[j] < w_window)) continue;
        Item it;
        it.w_f = ef.values[j];
        it.w_c = ec.values[j];
        it.mode = k;
        it.vec = Eigen::VectorXd::Zero(nn_f * nb_full);
        for (int i = 0; i < ef.vectors.rows(); ++i)
          it.vec[i * nb_full + k] = ef.vectors(i, j);  // cos-sector slot
        items.push_back(it);
        if (k >= 1) {  // sin copy
          Item it2 = it;
          it2.vec.setZero();
          for (int i = 0; i < ef.vectors.rows(); ++i)
            it2.vec[i * nb_full + K + k] = ef.vectors(i, j);
          items.push_back(it2);
        }
      }
    }
  } else {
    const bool symmetric = trigconv::is_even(curve.curvature_coeffs()) &&
                           !disc.force_full_basis;
    std::vector<Sector> sectors =
        symmetric ? std::vector<Sector>{Sector::even, Sector::odd}
                  : std::vector<Sector>{Sector::full};
    for (Sector sec : sectors) {
      const SectorPencil Pc = assemble_sector(curve, h, mesh_c, K, sec, disc.inner);
      const SectorPencil Pf = assemble_sector(curve, h, mesh_f, K, sec, disc.inner);
      const SectorEigs rc = solve_sector(Pc, curve, h, w_window, false);
      const SectorEigs rf = solve_sector(Pf, curve, h, w_window, true);
      if (!rc.covered || !rf.covered)
        throw std::runtime_error("collar: eigensolver did not certify window coverage");
      const int npair = static_cast<int>(std::min(rc.w.size(), rf.w.size()));
      for (int j = 0; j < npair; ++j) {
        Item it;
        it.w_f = rf.w[j];
        it.w_c = rc.w[j];
        it.mode = dominant_mode(Pf.basis, rf.vectors.col(j), nn_f);
        it.vec = Eigen::VectorXd::Zero(nn_f * nb_full);
        for (int i = 0; i < nn_f; ++i)
          for (int b = 0; b < Pf.basis.nb; ++b)
            it.vec[i * nb_full + Pf.basis.full_index[b]] =
                rf.vectors(i * Pf.basis.nb + b, j);
        items.push_back(it);
      }
    }
  }

  std::sort(items.begin(), items.end(),
            [](const Item& a, const Item& b) { return a.w_f < b.w_f; });
  for (const Item& it : items) {
    EigenRecord rec;
    const double wr = disc.richardson ? (4.0 * it.w_f - it.w_c) / 3.0 : it.w_f;
    rec.lambda = h * h * wr;
    rec.err_est = disc.richardson ? h * h * std::abs(it.w_f - it.w_c) / 3.0 : 0.0;
    rec.mode = it.mode;
    rec.method = "collar";
    rec.inner_bc = inner_bc_name(disc.inner);
    rec.Ns = disc.Ns;
    rec.Nt = disc.Nt;
    res.eigs.push_back(rec);
    data->vectors.push_back(it.vec);
  }
  res.collar = data;
  return res;
}

// ---------------------------------------------------------------------------
// mode profiles

namespace {

EigenMode disk_profile(const SpectrumResult& spec, int index) {
  const double h = spec.h;
  const double rad = spec.problem_echo.at("radius").get<double>();
  const EigenRecord& rec = spec.eigs.at(index);
  const int m = rec.mode;
  const double w = rec.lambda / (h * h);
  const double x = std::sqrt(-w);
  const double y = x * rad;
  const double c = 1.0 / std::sqrt(2.0 * kPi * rad);

  EigenMode mode;
  mode.h = h;
  mode.w = w;
  mode.mode = m;
  mode.method = "bessel-exact";
  mode.depth = rad;

  const double tray = std::min(8.0 * std::sqrt(h), 0.999 * rad);
  const int nray = 600;
  mode.ray_t.resize(nray);
  mode.ray_u.resize(nray);
  for (int i = 0; i < nray; ++i) {
    const double t = tray * i / (nray - 1);
    mode.ray_t[i] = t;
    mode.ray_u[i] = c * bessel::i_ratio_radial(m, y, (rad - t) / rad);
  }

  // graded panels: boundary layer resolved at sqrt(h)/4, geometric tail
  std::vector<double> edges{0.0};
  const double layer = std::min(12.0 * std::sqrt(h), 0.5 * rad);
  for (int i = 1; i <= 48; ++i) edges.push_back(layer * i / 48.0);
  double t = layer;
  while (t < rad * (1.0 - 1e-12)) {
    t = std::min(rad, t * 1.18 + 1e-3 * rad);
    edges.push_back(t);
  }
  edges.back() = rad;
  for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
    const double dt = edges[e + 1] - edges[e];
    for (int q = 0; q < kNq; ++q) {
      const double tq = edges[e] + dt * kQx[q];
      const double rr = rad - tq;
      const double R = c * bessel::i_ratio_radial(m, y, rr / rad);
      const double dR = c * bessel::i_ratio_radial_deriv(m, y, rr / rad) / rad;
      const double ang = (m > 0 && rr > 0.0) ? (m / rr) * R : 0.0;
      mode.qt.push_back(tq);
      mode.qw.push_back(kQw[q] * dt);
      mode.fu2.push_back(2.0 * kPi * rr * R * R);
      mode.fgrad2.push_back(2.0 * kPi * rr * (dR * dR + ang * ang));
    }
  }
  return mode;
}

EigenMode collar_profile(const SpectrumResult& spec, int index) {
  const CollarData& cd = *spec.collar;
  const EigenRecord& rec = spec.eigs.at(index);
  const Eigen::VectorXd& X = cd.vectors.at(index);
  const double h = cd.h;
  const double L = cd.curve.half_perimeter();
  const int K = cd.K;
  const int nb = 2 * K + 1;
  const std::vector<double>& tn = cd.t_nodes;
  const int nn = static_cast<int>(X.size()) / nb;

  EigenMode mode;
  mode.h = h;
  mode.w = rec.lambda / (h * h);
  mode.mode = rec.mode;
  mode.method = "collar";
  mode.note = "collar-restricted; ray at max boundary amplitude";
  mode.depth = cd.delta;

  // L2(Gamma) normalization from the node-0 coefficients
  double bnorm2 = 0.0;
  for (int b = 0; b < nb; ++b) bnorm2 += X[b] * X[b];
  const double scale = 1.0 / std::sqrt(bnorm2);

  const int ng = std::max(1024, 4 * K + 8);
  std::vector<double> kap(ng), sg(ng);
  for (int n = 0; n < ng; ++n) {
    sg[n] = -L + 2.0 * L * n / ng;
    kap[n] = cd.curve.curvature(sg[n]);
  }
  auto eval = [&](const double* coef, double s) {
    double v = coef[0] / std::sqrt(2.0 * L);
    for (int k = 1; k <= K; ++k) {
      const double a = kPi * k * s / L;
      v += (coef[k] * std::cos(a) + coef[K + k] * std::sin(a)) / std::sqrt(L);
    }
    return v;
  };
  auto eval_ds = [&](const double* coef, double s) {
    double v = 0.0;
    for (int k = 1; k <= K; ++k) {
      const double om = kPi * k / L;
      const double a = om * s;
      v += om * (-coef[k] * std::sin(a) + coef[K + k] * std::cos(a)) /
           std::sqrt(L);
    }
    return v;
  };

  int n_star = 0;
  double best = -1.0;
  for (int n = 0; n < ng; ++n) {
    const double v = std::abs(eval(X.data(), sg[n]));
    if (v > best) {
      best = v;
      n_star = n;
    }
  }
  const double s_star = sg[n_star];

  mode.ray_t.resize(nn);
  mode.ray_u.resize(nn);
  for (int i = 0; i < nn; ++i) {
    mode.ray_t[i] = tn[i];
    mode.ray_u[i] = std::abs(eval(X.data() + i * nb, s_star)) * scale;
  }

  // element-midpoint quadrature of the boundary-integrated densities
  std::vector<double> c_mid(nb), d_mid(nb);
  const int nel = static_cast<int>(tn.size()) - 1;
  for (int e = 0; e < nel; ++e) {
    if (e + 1 >= nn && e >= nn) break;
    const double dt = tn[e + 1] - tn[e];
    const double tm = 0.5 * (tn[e] + tn[e + 1]);
    for (int b = 0; b < nb; ++b) {
      const double lo = X[e * nb + b];
      const double hi = (e + 1 < nn) ? X[(e + 1) * nb + b] : 0.0;  // Dirichlet cap
      c_mid[b] = 0.5 * (lo + hi) * scale;
      d_mid[b] = (hi - lo) / dt * scale;
    }
    double iu2 = 0.0, ig2 = 0.0;
    for (int n = 0; n < ng; ++n) {
      const double a = 1.0 - tm * kap[n];
      const double u = eval(c_mid.data(), sg[n]);
      const double ut = eval(d_mid.data(), sg[n]);
      const double us = eval_ds(c_mid.data(), sg[n]);
      iu2 += u * u * a;
      ig2 += (ut * ut + us * us / (a * a)) * a;
    }
    const double ds = 2.0 * L / ng;
    mode.qt.push_back(tm);
    mode.qw.push_back(dt);
    mode.fu2.push_back(iu2 * ds);
    mode.fgrad2.push_back(ig2 * ds);
  }
  return mode;
}

}  // namespace

EigenMode mode_profile(const SpectrumResult& spec, int index) {
  if (index < 0 || index >= static_cast<int>(spec.eigs.size()))
    throw std::out_of_range("mode_profile: index out of range");
  const EigenRecord& rec = spec.eigs[index];
  if (rec.method == "collar") {
    if (!spec.collar) throw std::logic_error("mode_profile: missing collar data");
    return collar_profile(spec, index);
  }
  if (spec.domain_id == "disk") return disk_profile(spec, index);
  throw std::invalid_argument(
      "mode_profile: only disk and collar modes carry profiles");
}

}  // namespace robinlab::robin2d
