#include "robinlab/steklov.hpp"

#include <gsl/gsl_sf_bessel.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "robinlab/bessel.hpp"

namespace robinlab::steklov {

namespace {
constexpr double kJ01 = 2.404825557695773;  // first zero of J_0
}

double dtn_disk_eig(double w, int m) {
  if (m < 0) throw std::invalid_argument("dtn_disk_eig: m must be >= 0");
  if (!(w < kJ01 * kJ01))
    throw std::invalid_argument("dtn_disk_eig: w must lie below lambda_1^D");
  if (w == 0.0) return m;
  if (w < 0.0) return bessel::log_deriv_i(m, std::sqrt(-w));
  const double x = std::sqrt(w);
  const double jm = gsl_sf_bessel_Jn(m, x);
  const double jm1 = gsl_sf_bessel_Jn(m >= 1 ? m - 1 : 1, x);
  if (std::abs(jm) < 1e-14 * (std::abs(jm1) + 1.0))
    throw std::invalid_argument("dtn_disk_eig: w at a Dirichlet pole");
  if (m == 0) return -x * jm1 / jm;  // J_0' = -J_1
  return x * jm1 / jm - m;
}

double robin_to_steklov(double h, double lambda) {
  if (!(h > 0.0)) throw std::invalid_argument("robin_to_steklov: h <= 0");
  if (lambda + h < 0.0)
    throw std::domain_error(
        "robin_to_steklov: lambda below -h is outside the correspondence");
  return std::sqrt(h + lambda) / h;
}

WeylCount weyl_count(const robin2d::SpectrumResult& spec, double threshold) {
  double boundary_len = 0.0;
  const auto& echo = spec.problem_echo;
  const std::string dom = echo.at("domain").get<std::string>();
  if (dom == "disk")
    boundary_len = 2.0 * std::numbers::pi * echo.at("radius").get<double>();
  else if (dom == "annulus")
    boundary_len = 2.0 * std::numbers::pi * (1.0 + echo.at("r0").get<double>());
  else
    boundary_len = 2.0 * echo.at("curve").at("L").get<double>();

  if (threshold > spec.window)
    throw std::invalid_argument(
        "weyl_count: spectrum incomplete above its window");
  const double lam = threshold / spec.h;
  if (!(1.0 + lam > 0.0))
    throw std::invalid_argument("weyl_count: threshold below the spectral floor");
  WeylCount out;
  for (const auto& rec : spec.eigs)
    if (rec.lambda < threshold) ++out.count;
  out.prediction = boundary_len / std::numbers::pi * std::sqrt(1.0 + lam) /
                   std::sqrt(spec.h);
  out.deviation = out.count - out.prediction;
  return out;
}

RozenblumReport rozenblum_check(double L, std::span<const double> mu, int k_min,
                                int k_max) {
  if (k_min < 1 || k_max < k_min)
    throw std::invalid_argument("rozenblum_check: bad k range");
  if (static_cast<int>(mu.size()) < 2 * k_max + 1)
    throw std::invalid_argument("rozenblum_check: mu list too short");
  RozenblumReport rep;
  rep.k_min = k_min;
  rep.k_max = k_max;
  for (int k = k_min; k <= k_max; ++k) {
    const double m2k = mu[2 * k - 1];      // mu_{2k}, list is 0-based
    const double m2k1 = mu[2 * k];         // mu_{2k+1}
    rep.max_pair_gap = std::max(rep.max_pair_gap, std::abs(m2k1 - m2k));
    rep.max_linear_dev =
        std::max(rep.max_linear_dev, std::abs(m2k - std::numbers::pi * k / L));
  }
  return rep;
}

}  // namespace robinlab::steklov
