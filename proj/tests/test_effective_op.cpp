#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "robinlab/effective_op.hpp"
#include "robinlab/trig_conv.hpp"

using namespace robinlab;
using effective::EffectiveOperator;
using geometry::Curve;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("fourier mode eigenvalues") {
  const auto e = effective::fourier_mode_eigs(kPi, 5);
  CHECK(e[0] == 0.0);
  CHECK(e[1] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(e[2] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(e[3] == doctest::Approx(4.0).epsilon(1e-15));
  const auto e2 = effective::fourier_mode_eigs(2.0 * kPi, 5);
  CHECK(e2[3] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(e2[4] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("constant curvature gives the diagonal closed form") {
  const Curve c = Curve::make_circle(1.0);
  const double h = 1e-4;
  const EffectiveOperator op(c, h, 0.0, 16);
  const double sh = std::sqrt(h);
  CHECK(op.matrix()(0, 0) == doctest::Approx(-1.0 - 0.5 * sh).epsilon(1e-13));
  for (int k = 1; k <= 16; ++k) {
    CHECK(op.matrix()(k, k) ==
          doctest::Approx(sh * k * k - 1.0 - 0.5 * sh).epsilon(1e-13));
    CHECK(op.matrix()(16 + k, 16 + k) == doctest::Approx(op.matrix()(k, k)));
  }
  // off-diagonals vanish
  CHECK(op.matrix().cwiseAbs().sum() -
            op.matrix().diagonal().cwiseAbs().sum() ==
        doctest::Approx(0.0).epsilon(1e-12));

  const auto ev = op.eigenvalues(3);
  CHECK(ev[0] == doctest::Approx(-1.005).epsilon(1e-12));
  CHECK(ev[1] == doctest::Approx(sh - 1.0 - 0.5 * sh).epsilon(1e-10));
  CHECK(ev[2] == doctest::Approx(ev[1]).epsilon(1e-12));

  // zero-mode entry with the constant shift
  const double cc = 2.0;
  const EffectiveOperator opc(c, h, cc, 16);
  CHECK(opc.matrix()(0, 0) ==
        doctest::Approx(-1.0 - 0.5 * sh + cc * std::pow(h, 7.0 / 8.0))
            .epsilon(1e-13));
}

TEST_CASE("assembled potential matches direct quadrature") {
  const Curve e = Curve::make_ellipse(2.0, 1.0);
  const double h = 1e-3, c = 1.5;
  const int K = 6;
  const EffectiveOperator op(e, h, c, K);
  const double L = e.half_perimeter();
  const double sh = std::sqrt(h);
  const double shift = c * std::pow(h, 7.0 / 8.0);

  // direct quadrature of <V phi_i, phi_j> on a fine grid
  const int ng = 20000;
  auto basis = [&](int b, double s) {
    if (b == 0) return 1.0 / std::sqrt(2.0 * L);
    if (b <= K) return std::cos(b * kPi * s / L) / std::sqrt(L);
    return std::sin((b - K) * kPi * s / L) / std::sqrt(L);
  };
  Eigen::MatrixXd ref = Eigen::MatrixXd::Zero(2 * K + 1, 2 * K + 1);
  for (int g = 0; g < ng; ++g) {
    const double s = -L + 2.0 * L * g / ng;
    const double kap = e.curvature(s);
    const double V = -kap - 0.5 * sh * kap * kap + shift;
    for (int i = 0; i < 2 * K + 1; ++i)
      for (int j = i; j < 2 * K + 1; ++j)
        ref(i, j) += V * basis(i, s) * basis(j, s) * (2.0 * L / ng);
  }
  for (int i = 0; i < 2 * K + 1; ++i)
    for (int j = i; j < 2 * K + 1; ++j) {
      double kin = 0.0;
      if (i == j && i > 0) {
        const int k = i <= K ? i : i - K;
        kin = (sh + c * std::pow(h, 0.75)) * std::pow(kPi * k / L, 2);
      }
      CHECK(op.matrix()(i, j) - kin == doctest::Approx(ref(i, j)).epsilon(5e-7));
    }
}

TEST_CASE("truncation convergence on the ellipse") {
  const Curve e = Curve::make_ellipse(2.0, 1.0);
  const double h = 1e-3;
  const EffectiveOperator a(e, h, 0.0, 64);
  const EffectiveOperator b(e, h, 0.0, 128);
  CHECK(a.truncation_adequate());
  CHECK(b.truncation_adequate());
  const auto ea = a.eigenvalues(12);
  const auto eb = b.eigenvalues(12);
  for (int i = 0; i < 12; ++i)
    CHECK(ea[i] == doctest::Approx(eb[i]).epsilon(1e-12));

  // potential-range bound for the ground state at h = 1e-4
  const EffectiveOperator g(e, 1e-4, 0.0, 64);
  const double l1 = g.eigenvalues(1)[0];
  const double kmax = e.max_curvature(), kmin = e.min_curvature();
  CHECK(l1 >= -kmax - 0.5 * std::sqrt(1e-4) * kmax * kmax);
  CHECK(l1 <= -kmin);
}

TEST_CASE("c-monotonicity and pairing") {
  const Curve e = Curve::make_ellipse(2.0, 1.0);
  const double h = 4e-3, c = 2.0;
  const EffectiveOperator lo(e, h, -c, 48);
  const EffectiveOperator hi(e, h, +c, 48);
  const auto el = lo.eigenvalues(20);
  const auto eh = hi.eigenvalues(20);
  const double shift = 2.0 * c * std::pow(h, 7.0 / 8.0);
  for (int n = 0; n < 20; ++n) CHECK(el[n] <= eh[n] + shift + 1e-12);

  // mirror symmetry: near-degenerate pairs for small k on the circle
  const Curve circ = Curve::make_circle(1.0);
  const EffectiveOperator oc(circ, h, 0.0, 16);
  const auto ec = oc.eigenvalues(7);
  CHECK(ec[1] == doctest::Approx(ec[2]).epsilon(1e-13));
  CHECK(ec[3] == doctest::Approx(ec[4]).epsilon(1e-13));
}
