#pragma once
#include <array>
#include <complex>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

namespace robinlab::geometry {

using Vec2 = std::array<double, 2>;
using cplx = std::complex<double>;

enum class CurveKind { circle, ellipse, custom_fourier };

std::string kind_name(CurveKind k);

// Point in tubular coordinates: arc length s in [-L, L), normal distance
// t >= 0 into the domain.  Valid only below the injectivity bound
// t < 1/max|kappa|.
struct TubularPoint {
  double s = 0.0;
  double t = 0.0;
};

// Smooth closed planar boundary, arc-length parameterized, counter-clockwise
// with outward normal nu.  |Gamma| = 2L.  Curvature is held spectrally:
// kappa(s) = sum_j c_j exp(i j pi s / L) over lags j, with c_{-j} = conj(c_j);
// only j >= 0 is stored.  Immutable after construction.
class Curve {
 public:
  static Curve make_circle(double radius);
  static Curve make_ellipse(double a, double b);
  // Closed curve from total half-perimeter and curvature coefficients.
  // Requires integral of kappa to be 2*pi and the reconstructed position to
  // close up (checked, throws otherwise).
  static Curve make_fourier(double L, std::span<const cplx> kappa_coeffs);

  CurveKind kind() const { return kind_; }
  double half_perimeter() const { return L_; }
  double perimeter() const { return 2.0 * L_; }

  double curvature(double s) const;
  std::span<const cplx> curvature_coeffs() const { return kap_hat_; }
  double max_curvature() const { return kap_max_; }
  double min_curvature() const { return kap_min_; }
  bool constant_curvature() const;
  // Largest t for which the collar map stays injective: 1/max|kappa|.
  double injectivity_bound() const;

  // a(s,t) = 1 - t*kappa(s); throws if the collar is too deep (a <= 0).
  double metric(double s, double t) const;

  Vec2 boundary_point(double s) const;   // M(s)
  Vec2 outward_normal(double s) const;   // nu(s)
  Vec2 embed(const TubularPoint& p) const;  // M(s) - t nu(s)

  std::span<const Vec2> embedding_samples() const { return samples_; }

  nlohmann::json to_json() const;
  static Curve from_json(const nlohmann::json& j);

 private:
  Curve() = default;
  void finalize();  // samples, extrema, invariant checks

  CurveKind kind_ = CurveKind::circle;
  double L_ = 0.0;
  double pa_ = 0.0, pb_ = 0.0;  // circle: pa_ = radius; ellipse: semi-axes
  std::vector<cplx> kap_hat_;   // lags 0..J
  double kap_max_ = 0.0, kap_min_ = 0.0;

  // ellipse: theta(s) on uniform s-knots (cubic Hermite, d(theta)/ds stored)
  std::vector<double> th_, dth_;
  // custom curves: position + tangent on uniform s-knots
  std::vector<Vec2> pos_, tan_;

  std::vector<Vec2> samples_;

  double spline_theta(double s) const;
  Vec2 spline_pos(double s, Vec2* tangent) const;
};

}  // namespace robinlab::geometry
