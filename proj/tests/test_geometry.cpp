#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "robinlab/geometry.hpp"

using robinlab::geometry::Curve;
using robinlab::geometry::TubularPoint;
using robinlab::geometry::Vec2;

namespace {

constexpr double kPi = std::numbers::pi;

// Gauss-Kummer series for the ellipse perimeter: an oracle independent of
// the arc-length quadrature.  P = pi (a+b) sum_n (binom(1/2,n) q^n)^2 with
// q = ((a-b)/(a+b))^2.
double ellipse_perimeter_series(double a, double b) {
  const double q = std::pow((a - b) / (a + b), 2);
  double coef = 1.0;  // binom(1/2, 0)
  double acc = 1.0;
  double qn = 1.0;
  for (int n = 1; n <= 60; ++n) {
    coef *= (1.5 - n) / n;  // binom(1/2,n) = binom(1/2,n-1) * (1/2-n+1)/n
    qn *= q;
    acc += coef * coef * qn;
  }
  return kPi * (a + b) * acc;
}

double total_curvature(const Curve& c) {
  const int n = 20000;
  double acc = 0.0;
  const double L = c.half_perimeter();
  for (int i = 0; i < n; ++i) acc += c.curvature(-L + 2.0 * L * i / n);
  return acc * 2.0 * L / n;
}

// brute-force distance to the boundary on a fine sampling
double dist_to_boundary(const Curve& c, const Vec2& p, int n = 400000) {
  double best = 1e300;
  const double L = c.half_perimeter();
  for (int i = 0; i < n; ++i) {
    const Vec2 q = c.boundary_point(-L + 2.0 * L * i / n);
    best = std::min(best, std::hypot(p[0] - q[0], p[1] - q[1]));
  }
  return best;
}

}  // namespace

TEST_CASE("circle basics") {
  const Curve c = Curve::make_circle(1.0);
  CHECK(c.half_perimeter() == doctest::Approx(kPi).epsilon(1e-14));
  CHECK(c.curvature(0.3) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(c.curvature_coeffs().size() == 1);

  const Curve c2 = Curve::make_circle(2.0);
  CHECK(c2.half_perimeter() == doctest::Approx(2.0 * kPi).epsilon(1e-14));
  CHECK(c2.curvature(-1.0) == doctest::Approx(0.5).epsilon(1e-14));

  CHECK(total_curvature(c) == doctest::Approx(2.0 * kPi).epsilon(1e-12));
  CHECK_THROWS(Curve::make_circle(0.0));
  CHECK_THROWS(Curve::make_circle(-2.0));
}

TEST_CASE("circle embedding and metric") {
  const Curve c = Curve::make_circle(1.0);
  const Vec2 m0 = c.embed({0.0, 0.0});
  CHECK(m0[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(m0[1] == doctest::Approx(0.0).epsilon(1e-14));
  const Vec2 mid = c.embed({0.0, 0.5});
  CHECK(std::hypot(mid[0], mid[1]) == doctest::Approx(0.5).epsilon(1e-13));

  CHECK(c.metric(0.7, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(c.metric(0.7, 0.25) == doctest::Approx(0.75).epsilon(1e-13));
  CHECK_THROWS(c.metric(0.0, 1.5));
  CHECK_THROWS(c.embed({0.0, 1.5}));
}

TEST_CASE("ellipse arc length and curvature") {
  const Curve e = Curve::make_ellipse(2.0, 1.0);
  CHECK(e.perimeter() ==
        doctest::Approx(ellipse_perimeter_series(2.0, 1.0)).epsilon(1e-11));
  // spot value from the adaptive quadrature, frozen
  CHECK(e.perimeter() == doctest::Approx(9.688448).epsilon(1e-6));

  // closed form at theta = 0 and pi/2: a/b^2 and b/a^2
  CHECK(e.max_curvature() == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(e.min_curvature() == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(total_curvature(e) == doctest::Approx(2.0 * kPi).epsilon(1e-10));

  // curvature extremes sit at s = 0 and at the quarter perimeter
  CHECK(e.curvature(0.0) == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(e.curvature(0.5 * e.half_perimeter()) ==
        doctest::Approx(0.25).epsilon(1e-10));
}

TEST_CASE("degenerate ellipse matches the circle") {
  const Curve e = Curve::make_ellipse(1.0, 1.0);
  const Curve c = Curve::make_circle(1.0);
  CHECK(e.half_perimeter() == doctest::Approx(c.half_perimeter()).epsilon(1e-13));
  for (double s : {-2.0, 0.0, 0.4, 1.9}) {
    CHECK(e.curvature(s) == doctest::Approx(1.0).epsilon(1e-11));
    const Vec2 pe = e.boundary_point(s), pc = c.boundary_point(s);
    CHECK(pe[0] == doctest::Approx(pc[0]).epsilon(1e-10));
    CHECK(pe[1] == doctest::Approx(pc[1]).epsilon(1e-10));
  }
}

TEST_CASE("tubular map reproduces distance to the boundary") {
  const Curve e = Curve::make_ellipse(2.0, 1.0);
  const Vec2 p = e.embed({0.0, 0.1});
  CHECK(dist_to_boundary(e, p) == doctest::Approx(0.1).epsilon(1e-7));

  const Vec2 p2 = e.embed({3.1, 0.2});
  CHECK(dist_to_boundary(e, p2) == doctest::Approx(0.2).epsilon(1e-7));

  // metric at the flat end: kappa = 2 at s=0, t=0.4 -> a = 0.2
  CHECK(e.metric(0.0, 0.4) == doctest::Approx(0.2).epsilon(1e-9));
}

TEST_CASE("json round trip") {
  const Curve e = Curve::make_ellipse(2.0, 1.0);
  const auto j = e.to_json();
  CHECK(j.at("kind") == "ellipse");
  CHECK(j.at("kappa_fourier").size() == e.curvature_coeffs().size());
  const Curve e2 = Curve::from_json(j);
  CHECK(e2.half_perimeter() == doctest::Approx(e.half_perimeter()).epsilon(1e-14));
  CHECK(e2.curvature(1.0) == doctest::Approx(e.curvature(1.0)).epsilon(1e-12));
}

TEST_CASE("custom fourier curve: circle coefficients close up") {
  using robinlab::geometry::cplx;
  std::vector<cplx> coeffs{cplx(1.0, 0.0)};  // kappa == 1, L = pi
  const Curve c = Curve::make_fourier(kPi, coeffs);
  CHECK(c.curvature(0.2) == doctest::Approx(1.0).epsilon(1e-13));
  const Vec2 p = c.embed({1.0, 0.3});
  const Curve ref = Curve::make_circle(1.0);
  // same circle up to rigid motion: check distance to boundary only
  CHECK(dist_to_boundary(c, p, 100000) == doctest::Approx(0.3).epsilon(1e-6));
  (void)ref;

  // a perturbed zero lag violates total curvature
  std::vector<cplx> bad{cplx(1.01, 0.0)};
  CHECK_THROWS(Curve::make_fourier(kPi, bad));
  // nonzero higher lag alone closes only if the position integrals vanish;
  // a strong lag-1 term does not close up
  std::vector<cplx> open{cplx(1.0, 0.0), cplx(0.3, 0.0)};
  CHECK_THROWS(Curve::make_fourier(kPi, open));
}
