#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "robinlab/model1d.hpp"

using namespace robinlab::model1d;

namespace {
constexpr double kPi = std::numbers::pi;

// independent bisection oracle on a pole-free form, for cross-checks
template <class F>
double bisect(F&& f, double lo, double hi) {
  double flo = f(lo);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (flo * fm <= 0.0) hi = mid;
    else { lo = mid; flo = fm; }
  }
  return 0.5 * (lo + hi);
}
}  // namespace

TEST_CASE("half line spectrum") {
  const auto hs = halfline_spectrum();
  CHECK(hs.point_eigenvalue == -1.0);
  CHECK(hs.essential_threshold == 0.0);
  CHECK(hs.eigenfunction(0.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  // normalization: int_0^inf 2 e^{-2 tau} = 1
  double acc = 0.0;
  const int n = 200000;
  const double T = 40.0;
  for (int i = 0; i < n; ++i) {
    const double tau = T * (i + 0.5) / n;
    acc += hs.eigenfunction(tau) * hs.eigenfunction(tau) * T / n;
  }
  CHECK(acc == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("negative interval eigenvalue, both caps") {
  for (double T : {2.0, 5.0, 10.0}) {
    const double lD = interval_negative_eig({T, Cap::dirichlet});
    const double lN = interval_negative_eig({T, Cap::neumann});
    // Dirichlet: lambda -> -1 from above, -1 + 4(1+o(1)) e^{-2T}
    CHECK(lD > -1.0);
    // Neumann cap relaxes the form domain: lambda_N < lambda_D, and the
    // root of mu = coth(mu T) gives mu > 1, hence lambda_N < -1
    CHECK(lN < -1.0);
    CHECK(lN < lD);
  }
  const double l5 = interval_negative_eig({5.0, Cap::dirichlet});
  CHECK(std::abs((l5 + 1.0) / (4.0 * std::exp(-10.0)) - 1.0) < 0.01);
  const double l10 = interval_negative_eig({10.0, Cap::dirichlet});
  CHECK(std::abs((l10 + 1.0) / (4.0 * std::exp(-20.0)) - 1.0) < 1e-3);
  // Neumann magnitude mirrors it with the opposite sign of the correction
  const double n5 = interval_negative_eig({5.0, Cap::neumann});
  CHECK(std::abs((n5 + 1.0) / (-4.0 * std::exp(-10.0)) - 1.0) < 0.01);

  CHECK_THROWS(interval_negative_eig({0.9, Cap::dirichlet}));
}

TEST_CASE("positive interval eigenvalues: transcendental roots and brackets") {
  const double T = 5.0;
  const auto lamN = interval_positive_eigs({T, Cap::neumann}, 10);
  const auto lamD = interval_positive_eigs({T, Cap::dirichlet}, 10);
  REQUIRE(lamN.size() == 9);
  REQUIRE(lamD.size() == 9);

  // n = 2 Neumann root: cot(5 l) = -l inside I_0 = (pi/10, pi/5)
  const double l0 = bisect(
      [T](double l) { return std::cos(l * T) + l * std::sin(l * T); },
      kPi / (2 * T) + 1e-9, kPi / T - 1e-9);
  CHECK(std::sqrt(lamN[0]) == doctest::Approx(l0).epsilon(1e-12));
  CHECK(lamN[0] > kPi * kPi / 100.0);
  CHECK(lamN[0] < kPi * kPi / 25.0);

  for (int i = 0; i + 1 < 9; ++i) {
    CHECK(lamN[i] < lamN[i + 1]);
    CHECK(lamD[i] < lamD[i + 1]);
  }
  // Neumann cap below Dirichlet cap, every index
  for (int i = 0; i < 9; ++i) CHECK(lamN[i] < lamD[i]);

  for (double Tv : {2.0, 5.0, 10.0}) {
    const auto lN = interval_positive_eigs({Tv, Cap::neumann}, 10);
    const auto lD = interval_positive_eigs({Tv, Cap::dirichlet}, 10);
    for (int n = 2; n <= 10; ++n) {
      const double lo = std::pow((2 * n - 3) * kPi / (2 * Tv), 2);
      const double hi = std::pow((n - 1) * kPi / Tv, 2);
      // Neumann roots fill ((2n-3)pi/2T, (n-1)pi/T); the Dirichlet roots
      // interlace one half-band higher: ((n-1)pi/T, (2n-1)pi/2T)
      CHECK(lN[n - 2] > lo);
      CHECK(lN[n - 2] < hi);
      CHECK(lD[n - 2] > hi);
      CHECK(lD[n - 2] < std::pow((2 * n - 1) * kPi / (2 * Tv), 2));
    }
  }
}

TEST_CASE("weighted operator reduces to the interval at beta = 0") {
  WeightedProblem p;
  p.h = 1e-3;
  p.beta = 0.0;
  p.cap = Cap::dirichlet;
  p.grid_size = 1200;
  const auto we = weighted_eigs(p, 4);
  const double T = p.T();
  const double l1 = interval_negative_eig({T, Cap::dirichlet});
  const auto lpos = interval_positive_eigs({T, Cap::dirichlet}, 4);
  CHECK(we.values[0] == doctest::Approx(l1).epsilon(1e-9));
  for (int n = 1; n < 4; ++n) {
    CHECK(std::abs(we.values[n] - lpos[n - 1]) <
          20.0 * std::max(we.err_estimate[n], 1e-12) + 1e-9);
  }
  // eigenvector sign convention
  CHECK(we.vectors(0, 0) > 0.0);
}

TEST_CASE("weighted eigenvalues track the unweighted interval within h^rho") {
  // |lambda_{n,h}(beta) - lambda_n^T| <= (1 + lambda_n^T) h^rho
  for (double h : {1e-2, 1e-3, 1e-4}) {
    for (double beta : {-1.0, 1.0}) {
      for (Cap cap : {Cap::dirichlet, Cap::neumann}) {
        WeightedProblem p;
        p.h = h;
        p.beta = beta;
        p.cap = cap;
        p.grid_size = 1500;
        const auto we = weighted_eigs(p, 5, false);
        const double T = p.T();
        const double l1 = interval_negative_eig({T, cap});
        const auto lpos = interval_positive_eigs({T, cap}, 5);
        const double hr = std::pow(h, p.rho);
        CHECK(std::abs(we.values[0] - l1) <= (1.0 + std::abs(l1)) * hr);
        for (int n = 2; n <= 5; ++n)
          CHECK(std::abs(we.values[n - 1] - lpos[n - 2]) <=
                (1.0 + lpos[n - 2]) * hr);
      }
    }
  }
}

TEST_CASE("quasimode structure") {
  WeightedProblem p;
  p.h = 0.01;
  p.beta = 1.0;
  const Quasimode q = quasimode(p);
  CHECK(q.mu_app == doctest::Approx(-1.105).epsilon(1e-12));

  // beta = 0: u_app is u_1 up to the cutoff and normalization
  WeightedProblem p0 = p;
  p0.beta = 0.0;
  const Quasimode q0 = quasimode(p0);
  CHECK(q0.mu_app == doctest::Approx(-1.0).epsilon(1e-15));
  const double ratio = q0.values[1] / q0.values[0];
  CHECK(ratio == doctest::Approx(std::exp(-q0.grid[1])).epsilon(1e-10));

  // normalization constant stays close to 1 but carries the truncation
  // tail e^{-T(h)}; with T = h^{rho-1/2} this decays only slowly at
  // bench scales (T in [1.3, 2.1] here)
  for (double h : {1e-2, 1e-3, 1e-4, 1e-5}) {
    WeightedProblem ph;
    ph.h = h;
    ph.beta = 1.0;
    const Quasimode qh = quasimode(ph);
    CHECK(qh.c_h > 1.0);
    CHECK(qh.c_h < 1.25);
  }
}

TEST_CASE("gap check at beta = 0 reproduces lambda_2") {
  WeightedProblem p;
  p.h = 1e-3;
  p.beta = 0.0;
  p.cap = Cap::neumann;
  const GapResult g = gap_check(p);
  // v_h is the ground state up to the cutoff; at T = h^{rho-1/2} ~ 1.5 the
  // cutoff mixes in a visible excited component, so the deflated minimum
  // sits between lambda_1 and lambda_2, near the latter
  const auto lpos = interval_positive_eigs({p.T(), Cap::neumann}, 2);
  CHECK(g.lambda2 == doctest::Approx(lpos[0]).epsilon(1e-2));
  CHECK(g.deflated_min > 0.5 * lpos[0]);
  CHECK(g.deflated_min < lpos[0] * (1.0 + 1e-9));
  CHECK(g.deflated_scaled > 0.0);
}
