#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "robinlab/robin2d.hpp"
#include "robinlab/steklov.hpp"

using namespace robinlab;
using namespace robinlab::steklov;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("dtn disk eigenvalues") {
  // harmonic extension r^m e^{im theta} has normal derivative m u
  CHECK(dtn_disk_eig(0.0, 3) == 3.0);
  CHECK(dtn_disk_eig(0.0, 0) == 0.0);

  // w -> -infinity: mu ~ sqrt(-w)
  CHECK(dtn_disk_eig(-1e4, 2) / 100.0 == doctest::Approx(1.0).epsilon(1e-2));

  // strictly decreasing in w on the resolvent segment
  double prev = 1e300;
  for (double w : {-50.0, -10.0, -1.0, 0.0, 0.5, 2.0, 5.0}) {
    const double mu = dtn_disk_eig(w, 2);
    CHECK(mu < prev);
    prev = mu;
  }

  // rejected beyond the first Dirichlet eigenvalue
  CHECK_THROWS(dtn_disk_eig(5.79, 0));
  CHECK_THROWS(dtn_disk_eig(2.404825557695773 * 2.404825557695773, 0));
}

TEST_CASE("robin eigenpairs sit at the defining DtN level") {
  // the boundary trace of a Robin eigenfunction is a DtN eigenfunction
  // with eigenvalue h^{-1/2}; the two code paths must agree
  for (double h : {1e-2, 1e-3}) {
    for (int m : {0, 2, 5}) {
      const auto lam = robin2d::disk_mode_eig(h, m, 1.0);
      REQUIRE(lam.has_value());
      const double w = *lam / (h * h);
      CHECK(dtn_disk_eig(w, m) * std::sqrt(h) == doctest::Approx(1.0).epsilon(1e-11));
    }
  }
}

TEST_CASE("robin to steklov map") {
  const double h = 1e-2;
  CHECK(robin_to_steklov(h, -h) == 0.0);
  CHECK(robin_to_steklov(h, 0.0) == doctest::Approx(1.0 / std::sqrt(h)).epsilon(1e-14));
  CHECK_THROWS_AS(robin_to_steklov(h, -h * 1.001), std::domain_error);
  // monotone in lambda
  double prev = -1.0;
  for (double lam : {-h, -0.5 * h, -0.25 * h, 0.0}) {
    const double mu = robin_to_steklov(h, lam);
    CHECK(mu >= prev);
    prev = mu;
  }
}

TEST_CASE("weyl counting on the disk") {
  const double h = 1e-2;
  const auto spec = robin2d::disk_spectrum(h, 1.0, 0.0);
  const auto wc = weyl_count(spec, 0.0);
  CHECK(wc.count == 19);
  CHECK(wc.prediction == doctest::Approx(20.0).epsilon(1e-12));
  CHECK(std::abs(wc.deviation) <= 3.0);

  // counting identity: N(T_h, 0) = #{(m, sign) : mu_m(0) < h^{-1/2}}
  int dtn_count = 0;
  for (int m = 0; m <= 12; ++m)
    if (dtn_disk_eig(0.0, m) < 1.0 / std::sqrt(h)) dtn_count += (m == 0 ? 1 : 2);
  CHECK(dtn_count == wc.count);

  // threshold lambda h with lambda = -0.75 halves the predicted count
  const auto wc75 = weyl_count(spec, -0.75 * h);
  CHECK(wc75.prediction == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(std::abs(wc75.deviation) <= 2.0);

  CHECK_THROWS(weyl_count(spec, 1.0));  // above the window
}

TEST_CASE("rozenblum pairing is exact on the disk") {
  std::vector<double> mu;
  for (int m = 0; m <= 60; ++m) {
    mu.push_back(dtn_disk_eig(0.0, m));
    if (m >= 1) mu.push_back(mu.back());
  }
  std::sort(mu.begin(), mu.end());
  const auto rep = rozenblum_check(kPi, mu, 1, 50);
  CHECK(rep.max_pair_gap == 0.0);  // bitwise-equal duplicates
  // pi k / L rounds once on the way in and once on the way out
  CHECK(rep.max_linear_dev <= 1e-12);
  CHECK_THROWS(rozenblum_check(kPi, mu, 1, 100));  // list too short
}
