#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "robinlab/robin2d.hpp"

using namespace robinlab;
using namespace robinlab::robin2d;
using geometry::Curve;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("disk mode eigenvalues against high-precision references") {
  // frozen from an independent 30-digit evaluation of the Robin condition
  CHECK(disk_mode_eig(0.01, 0, 1.0).value() ==
        doctest::Approx(-0.01105280891930237166).epsilon(1e-13));
  CHECK(disk_mode_eig(0.01, 5, 1.0).value() ==
        doctest::Approx(-0.008277555159784928274).epsilon(1e-13));
  CHECK(disk_mode_eig(0.01, 9, 1.0).value() ==
        doctest::Approx(-0.0020915584655133690446).epsilon(1e-13));
  CHECK(disk_mode_eig(1e-4, 50, 1.0).value() ==
        doctest::Approx(-7.5752808788339013137e-5).epsilon(1e-13));
  CHECK(disk_mode_eig(0.01, 3, 2.0).value() ==
        doctest::Approx(-0.010275969489198004593).epsilon(1e-13));
}

TEST_CASE("mode existence threshold m < r h^{-1/2}") {
  const double h = 0.01;  // h^{-1/2} = 10 exactly
  CHECK(disk_mode_eig(h, 9, 1.0).has_value());
  CHECK_FALSE(disk_mode_eig(h, 10, 1.0).has_value());
  CHECK_FALSE(disk_mode_eig(h, 11, 1.0).has_value());
  // the leading-order expansion: lambda ~ -h - h^{3/2} kappa, kappa = 1
  const double l0 = disk_mode_eig(h, 0, 1.0).value();
  CHECK(std::abs(l0 - (-h - std::pow(h, 1.5))) < 2e-4);
}

TEST_CASE("disk spectrum: multiplicity and counting") {
  const double h = 0.01;
  const auto spec = disk_spectrum(h, 1.0, 0.0);
  // strict threshold: modes 0..9, each m >= 1 counted twice
  CHECK(spec.eigs.size() == 19);
  for (std::size_t i = 0; i + 1 < spec.eigs.size(); ++i)
    CHECK(spec.eigs[i].lambda <= spec.eigs[i + 1].lambda);
  // every m >= 1 appears exactly twice
  std::map<int, int> mult;
  for (const auto& r : spec.eigs) mult[r.mode]++;
  for (const auto& [m, c] : mult) CHECK(c == (m == 0 ? 1 : 2));

  // counting stays within O(1) of 2 h^{-1/2} along a sweep
  for (int j = 6; j <= 12; ++j) {
    const double hj = std::pow(2.0, -j);
    const auto s = disk_spectrum(hj, 1.0, 0.0);
    CHECK(std::abs(double(s.eigs.size()) - 2.0 / std::sqrt(hj)) <= 3.0);
  }
}

TEST_CASE("annulus determinant roots") {
  const double h = 0.01, r0 = 0.5;
  const auto spec = annulus_spectrum(h, r0, 0.0);
  // the inner circle supports m < r0 h^{-1/2} = 5, so modes 0..4 carry two
  // distinct roots; higher modes carry the outer branch only.  The outer
  // threshold is set by the annulus DtN and reaches slightly past
  // h^{-1/2} = 10 (m = 10 has a marginal root at lambda ~ -1e-7).
  std::map<int, int> roots;  // records per mode (m >= 1 doubled)
  for (const auto& r : spec.eigs) roots[r.mode]++;
  for (int m = 0; m <= 4; ++m) CHECK(roots[m] == (m == 0 ? 2 : 4));
  for (int m = 5; m <= 10; ++m) CHECK(roots[m] == 2);
  // counting matches |Gamma|/pi h^{-1/2} = 2(1+r0) h^{-1/2} = 30 exactly here
  CHECK(spec.eigs.size() == 30);

  // inner-boundary branch sits near -h + 2 h^{3/2} (kappa = -1/r0 = -2),
  // outer branch near -h - h^{3/2}
  const double inner = -h - std::pow(h, 1.5) / r0 * -1.0;  // -h + 2 h^{3/2}
  const double outer = -h - std::pow(h, 1.5);
  bool saw_inner = false, saw_outer = false;
  for (const auto& r : spec.eigs) {
    if (r.mode != 0) continue;
    if (std::abs(r.lambda - inner) < 4e-4) saw_inner = true;
    if (std::abs(r.lambda - outer) < 4e-4) saw_outer = true;
  }
  CHECK(saw_inner);
  CHECK(saw_outer);
}

TEST_CASE("annulus outer branch approaches the disk as r0 -> 0") {
  const double h = 0.01;
  for (int m : {1, 2}) {
    const double disk = disk_mode_eig(h, m, 1.0).value();
    // locate the annulus root nearest the disk value
    const auto spec = annulus_spectrum(h, 1e-3, 0.0, 20000);
    double best = 1e300;
    for (const auto& r : spec.eigs)
      if (r.mode == m) best = std::min(best, std::abs(r.lambda - disk));
    CHECK(best < 1e-8);
  }
}

TEST_CASE("collar brackets the exact disk eigenvalues") {
  const double h = 1e-2;
  CollarDiscretization dn, dd;
  dn.inner = InnerBC::neumann;
  dd.inner = InnerBC::dirichlet;
  dn.delta = dd.delta = 0.75;
  dn.Ns = dd.Ns = 8;
  dn.Nt = dd.Nt = 200;
  const Curve disk = Curve::make_circle(1.0);
  const auto sn = collar_spectrum(disk, h, dn);
  const auto sd = collar_spectrum(disk, h, dd);
  const auto ex = disk_spectrum(h, 1.0, 0.0);
  REQUIRE(sn.eigs.size() >= 10);
  REQUIRE(sd.eigs.size() >= 10);
  for (int n = 0; n < 10; ++n) {
    CHECK(sn.eigs[n].lambda <= ex.eigs[n].lambda + 1e-12);
    CHECK(ex.eigs[n].lambda <= sd.eigs[n].lambda + 1e-12);
    CHECK(std::abs(sn.eigs[n].lambda - ex.eigs[n].lambda) < 2e-4 * h);
    CHECK(std::abs(sd.eigs[n].lambda - ex.eigs[n].lambda) < 2e-4 * h);
  }
}

TEST_CASE("coupled path agrees with the per-mode path on the circle") {
  const double h = 1e-2;
  CollarDiscretization base;
  base.inner = InnerBC::dirichlet;
  base.delta = 0.5;
  base.Ns = 6;
  base.Nt = 96;
  base.richardson = false;
  const Curve disk = Curve::make_circle(1.0);
  const auto fast = collar_spectrum(disk, h, base);

  CollarDiscretization forced = base;
  forced.force_coupled = true;
  const auto coupled = collar_spectrum(disk, h, forced);

  CollarDiscretization full = forced;
  full.force_full_basis = true;
  const auto fullb = collar_spectrum(disk, h, full);

  REQUIRE(fast.eigs.size() == coupled.eigs.size());
  REQUIRE(fast.eigs.size() == fullb.eigs.size());
  for (std::size_t i = 0; i < fast.eigs.size(); ++i) {
    CHECK(coupled.eigs[i].lambda ==
          doctest::Approx(fast.eigs[i].lambda).epsilon(1e-9));
    CHECK(fullb.eigs[i].lambda ==
          doctest::Approx(fast.eigs[i].lambda).epsilon(1e-9));
  }
}

TEST_CASE("ellipse collar: bracketing sides and Weyl count") {
  const double h = 8e-3;
  const Curve ell = Curve::make_ellipse(2.0, 1.0);
  CollarDiscretization dn;
  dn.inner = InnerBC::neumann;
  dn.delta = 0.2;
  dn.Ns = 40;
  dn.Nt = 64;
  dn.richardson = false;
  CollarDiscretization dd = dn;
  dd.inner = InnerBC::dirichlet;
  const auto sn = collar_spectrum(ell, h, dn);
  const auto sd = collar_spectrum(ell, h, dd);
  REQUIRE(sn.eigs.size() >= sd.eigs.size());
  for (std::size_t n = 0; n < sd.eigs.size(); ++n)
    CHECK(sn.eigs[n].lambda <= sd.eigs[n].lambda + 1e-12);
  // count within O(1) of (|Gamma|/pi) h^{-1/2}
  const double pred = ell.perimeter() / kPi / std::sqrt(h);
  CHECK(std::abs(double(sd.eigs.size()) - pred) < 6.0);
}

TEST_CASE("disk profiles: boundary normalization and monotonicity") {
  const double h = 1e-3;
  const auto spec = disk_spectrum(h, 1.0, 0.0);
  const EigenMode mode = mode_profile(spec, 0);
  CHECK(mode.mode == 0);
  // I_0 profile decreases away from the boundary
  for (std::size_t i = 0; i + 1 < mode.ray_u.size(); ++i)
    CHECK(mode.ray_u[i] >= mode.ray_u[i + 1]);
  // normalization: integral of fu2 at t=0 equals 1 by construction; check
  // the boundary value equals (2 pi)^{-1/2}
  CHECK(mode.ray_u[0] == doctest::Approx(1.0 / std::sqrt(2.0 * kPi)).epsilon(1e-12));
  // decay scale: value at t = 5 sqrt(h) below e^{-4} of the boundary value
  const double t5 = 5.0 * std::sqrt(h);
  double v5 = 0.0;
  for (std::size_t i = 0; i < mode.ray_t.size(); ++i)
    if (mode.ray_t[i] >= t5) { v5 = mode.ray_u[i]; break; }
  CHECK(v5 < std::exp(-4.0) * mode.ray_u[0]);
}
