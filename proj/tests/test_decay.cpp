#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "robinlab/decay.hpp"
#include "robinlab/robin2d.hpp"

using namespace robinlab;
using robin2d::EigenMode;

namespace {

// synthetic pure exponential u = e^{-t/sqrt(h)}: the fit must return the
// rate exactly (up to line-fit roundoff)
EigenMode synthetic_exp(double h) {
  EigenMode m;
  m.h = h;
  m.w = -2.0 / h;  // comfortably below -M/h for any M < 1
  m.method = "synthetic";
  m.depth = 10.0 * std::sqrt(h);
  for (int i = 0; i < 400; ++i) {
    const double t = m.depth * i / 399.0;
    m.ray_t.push_back(t);
    m.ray_u.push_back(std::exp(-t / std::sqrt(h)));
  }
  return m;
}

}  // namespace

TEST_CASE("pure exponential is fitted exactly") {
  const double h = 1e-3;
  const auto mode = synthetic_exp(h);
  const auto rf = decay::fit_decay_rate(mode, h);
  CHECK(rf.rate_scaled == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rf.samples >= 10);
}

TEST_CASE("disk edge-mode rates match the Bessel decay") {
  // the local decay rate of I_m(x r) in t = 1 - r is sqrt(x^2 + m^2/r^2),
  // which is h^{-1/2}(1 + O(sqrt(h))) for every edge mode; for m = 0 it
  // coincides with sqrt(-w).  The fit window picks up the algebraic
  // prefactor of I_m, a bias of order sqrt(h) that is visible at h = 1e-2.
  for (double h : {1e-3, 1e-4}) {
    const auto spec = robin2d::disk_spectrum(h, 1.0, 0.0);
    for (int idx : {0, 3}) {
      const auto mode = robin2d::mode_profile(spec, idx);
      const auto rf = decay::fit_decay_rate(mode, h);
      const double m = mode.mode;
      const double rate = std::sqrt(-mode.w + m * m);
      CHECK(std::abs(rf.rate - rate) / rate < 0.02);
      CHECK(rf.rate_scaled > 0.0);
      CHECK(rf.rate_scaled <= 1.05);
    }
  }
  {
    const double h = 1e-2;
    const auto spec = robin2d::disk_spectrum(h, 1.0, 0.0);
    const auto mode = robin2d::mode_profile(spec, 0);
    const auto rf = decay::fit_decay_rate(mode, h);
    CHECK(rf.rate_scaled > 0.9);
    CHECK(rf.rate_scaled <= 1.05);
  }
}

TEST_CASE("high angular mode rate follows sqrt(-w + m^2), not sqrt(-w)") {
  const double h = 1e-3;
  const int m = static_cast<int>(0.5 / std::sqrt(h));
  const auto spec = robin2d::disk_spectrum(h, 1.0, 0.0);
  int idx = -1;
  for (std::size_t i = 0; i < spec.eigs.size(); ++i)
    if (spec.eigs[i].mode == m) { idx = static_cast<int>(i); break; }
  REQUIRE(idx >= 0);
  const auto mode = robin2d::mode_profile(spec, idx);
  const auto rf = decay::fit_decay_rate(mode, h);
  const double rate = std::sqrt(-mode.w + double(m) * m);
  CHECK(std::abs(rf.rate - rate) / rate < 0.02);
  // the angular momentum barrier steepens the profile well beyond sqrt(-w)
  CHECK(std::abs(rf.rate - std::sqrt(-mode.w)) / std::sqrt(-mode.w) > 0.10);
  CHECK(rf.rate_scaled <= 1.05);
}

TEST_CASE("agmon ratio: hypothesis, unweighted limit, monotonicity") {
  const double h = 1e-3;
  const auto spec = robin2d::disk_spectrum(h, 1.0, 0.0);
  const auto mode = robin2d::mode_profile(spec, 0);

  // alpha = 0: ratio reduces to 1 + h |grad u|^2 / |u|^2
  const double r0 = decay::agmon_ratio(mode, h, 0.0, 0.81);
  double num = 0, den = 0;
  for (std::size_t i = 0; i < mode.qt.size(); ++i) {
    num += mode.qw[i] * mode.fgrad2[i];
    den += mode.qw[i] * mode.fu2[i];
  }
  CHECK(r0 == doctest::Approx(1.0 + h * num / den).epsilon(1e-12));

  // monotone increasing in alpha
  double prev = 0.0;
  for (double a : {0.0, 0.3, 0.6, 0.81}) {
    const double r = decay::agmon_ratio(mode, h, a, 0.81);
    CHECK(r >= prev);
    prev = r;
  }

  // hypothesis rejection: a mode with w too close to zero
  EigenMode shallow = mode;
  shallow.w = -0.5 / h;
  CHECK_THROWS(decay::agmon_ratio(shallow, h, 0.5, 0.81));
}

TEST_CASE("agmon ratio bounded on the admissible side, grows past sqrt(M)") {
  const double M = 0.81, alpha = 0.81;
  double ratio_fine = 0, ratio_coarse = 0, neg_fine = 0, neg_coarse = 0;
  for (double h : {1e-2, 1e-4}) {
    const auto spec = robin2d::disk_spectrum(h, 1.0, 0.0);
    const auto mode = robin2d::mode_profile(spec, 0);
    const double r = decay::agmon_ratio(mode, h, alpha, M);
    const double rn = decay::agmon_ratio(mode, h, 1.2 * std::sqrt(M), M);
    if (h == 1e-2) { ratio_coarse = r; neg_coarse = rn; }
    else { ratio_fine = r; neg_fine = rn; }
  }
  // admissible alpha: ratio stays O(1) across two decades
  CHECK(ratio_fine / ratio_coarse < 3.0);
  CHECK(ratio_coarse / ratio_fine < 3.0);
  // alpha = 1.2 sqrt(M) > 1: the weighted integral blows up along the sweep
  CHECK(neg_fine / neg_coarse > 10.0);
}

TEST_CASE("polynomial bounds") {
  const double h = 1e-3;
  const auto spec = robin2d::disk_spectrum(h, 1.0, 0.0);
  const auto mode = robin2d::mode_profile(spec, 0);
  const double p0 = decay::polynomial_bound_sup(mode, h, 0, 1.0);
  const double p2 = decay::polynomial_bound_sup(mode, h, 2, 1.0);
  const double p4 = decay::polynomial_bound_sup(mode, h, 4, 1.0);
  CHECK(p0 == doctest::Approx(mode.ray_u[0]).epsilon(1e-12));  // max at t=0
  CHECK(std::isfinite(p2));
  CHECK(p4 > p2);  // the constant grows with p
}

TEST_CASE("pointwise prefactor suprema") {
  const double M = 0.81, eps0 = 0.4;
  double prev = -1.0, prev_pert = -1.0;
  bool pert_grows = false;
  for (double h : {1e-2, 1e-3, 1e-4}) {
    const auto spec = robin2d::disk_spectrum(h, 1.0, 0.0);
    const auto mode = robin2d::mode_profile(spec, 0);
    const double s = decay::pointwise_prefactor_sup(mode, h, 0.8, M, eps0);
    // alpha = 0 reduces to sup|u| h^{3/4}
    const double s0 = decay::pointwise_prefactor_sup(mode, h, 0.0, M, eps0);
    CHECK(s0 == doctest::Approx(mode.ray_u[0] * std::pow(h, 0.75)).epsilon(1e-12));
    CHECK(s >= s0);
    CHECK(std::isfinite(s));
    // for these boundary-normalized m=0 modes sup|u| is O(1), so the scaled
    // sup decreases with h; the perturbed exponent h^{0.55} does too (the
    // h^{-3/4} prefactor is not saturated by the lowest mode)
    const double sp = decay::pointwise_prefactor_sup(mode, h, 0.8, M, eps0, 0.55);
    if (prev >= 0.0) CHECK(s < prev);
    if (prev_pert >= 0.0 && sp > prev_pert) pert_grows = true;
    prev = s;
    prev_pert = sp;
  }
  CHECK_FALSE(pert_grows);
}
