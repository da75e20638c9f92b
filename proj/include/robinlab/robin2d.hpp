#pragma once
#include <Eigen/Dense>
#include <cmath>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "robinlab/geometry.hpp"

// Eigenvalues of T_h = -h^2 Laplace with boundary condition
// du/dnu = h^{-1/2} u.  Disks and annuli are solved exactly per angular
// mode through modified Bessel root finding; general smooth domains through
// a boundary-collar Galerkin solver (Fourier in s, P1 in t) realizing
// Dirichlet/Neumann bracketing at the inner collar edge.

namespace robinlab::robin2d {

enum class InnerBC { dirichlet, neumann };

std::string inner_bc_name(InnerBC bc);

struct EigenRecord {
  double lambda = 0.0;
  int mode = 0;              // angular mode m, or dominant Fourier |k|
  std::string method;        // "bessel-exact" | "collar"
  std::string inner_bc = "-";
  int Ns = 0, Nt = 0;
  double err_est = 0.0;
};

// Eigenvector payload kept by collar runs so that profiles can be extracted
// later.  Vectors are node-major in the full trig layout
// [const, cos 1..K, sin 1..K] on the fine t mesh, aligned with `eigs`.
struct CollarData {
  geometry::Curve curve = geometry::Curve::make_circle(1.0);
  double h = 0.0;
  double delta = 0.0;
  int K = 0;
  InnerBC inner = InnerBC::dirichlet;
  std::vector<double> t_nodes;
  std::vector<Eigen::VectorXd> vectors;
};

struct SpectrumResult {
  std::vector<EigenRecord> eigs;  // sorted ascending by lambda
  double h = 0.0;
  double window = 0.0;
  std::string domain_id;
  nlohmann::json problem_echo;
  std::shared_ptr<const CollarData> collar;  // collar runs only
};

// Per-mode Robin eigenvalue on a disk of given radius: the unique w < 0 with
// sqrt(-w) I_m'(sqrt(-w) r) / I_m(sqrt(-w) r) = h^{-1/2}, returned as
// lambda = h^2 w.  Empty when the mode carries no negative eigenvalue
// (m >= r h^{-1/2}).
std::optional<double> disk_mode_eig(double h, int m, double radius);

// All eigenvalues below `window` (<= 0), modes m >= 1 duplicated.
SpectrumResult disk_spectrum(double h, double radius, double window = 0.0);

// Annulus r0 < |x| < 1 with the Robin condition on both circles.  Roots of
// the 2x2 boundary determinant per mode, located by sign scan + bisection.
SpectrumResult annulus_spectrum(double h, double r0, double window = 0.0,
                                int scan_points = 4000);

struct CollarDiscretization {
  double rho = 7.0 / 16.0;
  double delta = 0.0;   // collar depth; 0 means h^rho
  int Ns = 32;          // angular modes 0..Ns-1 (trig basis size 2 Ns - 1)
  int Nt = 200;         // P1 elements across the collar
  InnerBC inner = InnerBC::dirichlet;
  double grading = 3.0; // geometric mesh stretch; 0 = uniform
  bool richardson = true;  // solve at Nt and 2 Nt, extrapolate
  bool force_coupled = false;    // cross-validation: skip the per-mode shortcut
  bool force_full_basis = false; // cross-validation: skip the parity split

  double depth(double h) const { return delta > 0.0 ? delta : std::pow(h, rho); }
  void validate(const geometry::Curve& curve, double h) const;
};

SpectrumResult collar_spectrum(const geometry::Curve& curve, double h,
                               const CollarDiscretization& disc,
                               double window = 0.0);

// Eigenfunction data prepared for the decay checks: a normal-ray profile
// plus t-quadrature of the angular-integrated densities.  Normalized to
// ||u||_{L2(Gamma)} = 1.
struct EigenMode {
  double h = 0.0;
  double w = 0.0;  // lambda / h^2
  int mode = 0;
  std::string method;
  std::string note;              // e.g. "collar-restricted"
  double depth = 0.0;            // deepest sampled t

  std::vector<double> ray_t;     // normal-ray samples from the boundary
  std::vector<double> ray_u;     // |u| along the ray (disk: sup over angle)

  std::vector<double> qt, qw;    // t-quadrature nodes and weights
  std::vector<double> fu2;       // at qt: integral of |u|^2 over the boundary direction (with metric)
  std::vector<double> fgrad2;    // same for |grad u|^2
};

EigenMode mode_profile(const SpectrumResult& spec, int index);

namespace detail {
// scaled boundary determinant whose zeros in x = sqrt(-w) are the annulus
// eigenvalues of mode m (exposed for tests)
double annulus_det(double h, int m, double r0, double x);
}

}  // namespace robinlab::robin2d
