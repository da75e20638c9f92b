#pragma once
#include <Eigen/Dense>
#include <cmath>
#include <vector>

// One-dimensional Robin model operators: the half-line operator
// -d^2/dtau^2 with u'(0) = -u(0), its truncations to (0,T) with a Dirichlet
// or Neumann cap at tau = T, and the curvature-weighted operator
// H_{h,beta} = -(1-sqrt(h) beta tau)^{-1} d/dtau((1-sqrt(h) beta tau) d/dtau)
// acting in L^2((0,T); (1-sqrt(h) beta tau) dtau) with T = h^{rho-1/2}.

namespace robinlab::model1d {

inline constexpr double kDefaultRho = 7.0 / 16.0;

enum class Cap { dirichlet, neumann };

struct HalfLineSpectrum {
  double point_eigenvalue = -1.0;
  double essential_threshold = 0.0;  // essential spectrum [0, inf)
  // normalized eigenfunction u_1(tau) = sqrt(2) exp(-tau)
  double eigenfunction(double tau) const { return std::sqrt(2.0) * std::exp(-tau); }
};

HalfLineSpectrum halfline_spectrum();

struct IntervalProblem {
  double T = 5.0;
  Cap cap = Cap::dirichlet;
};

// The unique negative eigenvalue lambda_1 = -mu^2.
// Dirichlet cap: tanh(mu T) = mu with mu in (0,1).
// Neumann cap:   mu = coth(mu T) with mu > 1 (note lambda_1 < -1).
// Bisection to 1e-14 plus Newton polish.
double interval_negative_eig(const IntervalProblem& prob);

// lambda_n = l^2 for n = 2..n_max, ascending.  Roots of tan(lT) = l
// (Dirichlet cap, l in ((n-1)pi/T, (2n-1)pi/2T)) or cot(lT) = -l
// (Neumann cap, l in ((2n-3)pi/2T, (n-1)pi/T)).
std::vector<double> interval_positive_eigs(const IntervalProblem& prob, int n_max);

struct WeightedProblem {
  double h = 1e-3;
  double beta = 1.0;
  double rho = kDefaultRho;
  Cap cap = Cap::neumann;
  int grid_size = 2000;  // P1 elements

  double T() const { return std::pow(h, rho - 0.5); }
  void validate() const;
};

struct WeightedEigs {
  Eigen::VectorXd values;        // Richardson-extrapolated from N and 2N grids
  Eigen::VectorXd err_estimate;  // |lambda_2N - lambda_N| / 3
  Eigen::VectorXd values_raw;    // from the 2N grid
  Eigen::MatrixXd vectors;       // nodal values on the N grid, u(0) > 0
  std::vector<double> grid;      // nodes tau_0..tau_N
};

WeightedEigs weighted_eigs(const WeightedProblem& prob, int n_eigs,
                           bool want_vectors = true);

struct Quasimode {
  std::vector<double> grid;
  Eigen::VectorXd values;  // c_h chi(tau/T) (1 + beta^2 h (tau^2/4 - 1/8)) u_1
  double mu_app = 0.0;     // -1 - beta sqrt(h) - beta^2 h / 2
  double c_h = 1.0;        // weighted-norm normalization constant
};

Quasimode quasimode(const WeightedProblem& prob);

// quintic smoothstep cutoff: 1 on [-1/2,1/2], 0 outside (-1,1)
double cutoff(double x);

struct ResidualResult {
  double norm = 0.0;         // ||(H - mu_app) v_h||_{h,beta}, discretized
  double norm_coarse = 0.0;  // same on the half-resolution grid
  bool resolution_limited = false;
};

ResidualResult quasimode_residual(const WeightedProblem& prob);

struct GapResult {
  double lambda2 = 0.0;       // second eigenvalue of H_{h,beta}
  double deflated_min = 0.0;  // min Rayleigh quotient B-orthogonal to v_h
  double scale = 0.0;         // h^{1-2rho}
  double lambda2_scaled = 0.0;
  double deflated_scaled = 0.0;
};

GapResult gap_check(const WeightedProblem& prob);

// P1 pencil for the weighted form; exposed for the residual and for tests.
struct Discretization {
  std::vector<double> grid;                    // all nodes
  std::vector<double> a_diag, a_off;           // form matrix (bc applied)
  std::vector<double> b_diag, b_off;           // weighted mass (bc applied)
  bool dirichlet_cap = false;                  // last node eliminated if true
};

Discretization assemble(const WeightedProblem& prob, int n_elems);

}  // namespace robinlab::model1d
