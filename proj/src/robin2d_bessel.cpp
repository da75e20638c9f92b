#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "robinlab/bessel.hpp"
#include "robinlab/parallel.hpp"
#include "robinlab/robin2d.hpp"

namespace robinlab::robin2d {

namespace {
constexpr double kPi = std::numbers::pi;
}

std::string inner_bc_name(InnerBC bc) {
  return bc == InnerBC::dirichlet ? "dirichlet" : "neumann";
}

std::optional<double> disk_mode_eig(double h, int m, double radius) {
  if (m < 0) throw std::invalid_argument("disk_mode_eig: m must be >= 0");
  if (!(h > 0.0 && h < 1.0)) throw std::invalid_argument("disk_mode_eig: bad h");
  const double target = radius / std::sqrt(h);  // G_m(y) = r h^{-1/2}
  if (!(m < target)) return std::nullopt;       // G_m(0) = m, G_m increasing
  double lo = 0.0, hi = std::sqrt(std::max((target + 2.0) * (target + 2.0) -
                                               double(m) * m, 4.0)) + 2.0;
  while (bessel::log_deriv_i(m, hi) < target) hi *= 2.0;
  double glo = m - target;  // value at y = 0
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double g = bessel::log_deriv_i(m, mid) - target;
    if (g == 0.0) { lo = hi = mid; break; }
    if (glo * g <= 0.0) hi = mid;
    else { lo = mid; glo = g; }
  }
  double y = 0.5 * (lo + hi);
  for (int it = 0; it < 3; ++it) {  // Newton polish via the Riccati identity
    const double G = bessel::log_deriv_i(m, y);
    const double dG = bessel::log_deriv_i_prime(m, y, G);
    if (!(dG > 0.0)) break;
    y -= (G - target) / dG;
  }
  if (!(y > 0.0) || !std::isfinite(y))
    throw std::runtime_error("disk_mode_eig: root polish failed");
  const double x = y / radius;  // sqrt(-w)
  return -h * h * x * x;
}

SpectrumResult disk_spectrum(double h, double radius, double window) {
  if (window > 0.0)
    throw std::invalid_argument("disk_spectrum: only windows <= 0 are supported");
  SpectrumResult res;
  res.h = h;
  res.window = window;
  res.domain_id = "disk";
  res.problem_echo = {{"domain", "disk"},
                      {"radius", radius},
                      {"h", h},
                      {"window", window},
                      {"method", "bessel-exact"}};
  const int m_max = static_cast<int>(std::ceil(radius / std::sqrt(h))) + 2;
  std::vector<std::optional<double>> lam(m_max + 1);
  par::parallel_for(m_max + 1, [&](std::size_t m) {
    lam[m] = disk_mode_eig(h, static_cast<int>(m), radius);
  });
  for (int m = 0; m <= m_max; ++m) {
    if (!lam[m] || !(*lam[m] < window)) continue;
    EigenRecord rec{*lam[m], m, "bessel-exact", "-", 0, 0, 0.0};
    res.eigs.push_back(rec);
    if (m >= 1) res.eigs.push_back(rec);  // e^{+-i m theta} degeneracy
  }
  std::sort(res.eigs.begin(), res.eigs.end(),
            [](const EigenRecord& a, const EigenRecord& b) {
              return a.lambda < b.lambda;
            });
  return res;
}

namespace detail {

double annulus_det(double h, int m, double r0, double x) {
  const double S = 1.0 / std::sqrt(h);
  const double z = x * r0;
  const double Im = bessel::i_scaled(m, x);
  const double Im1 = bessel::i_scaled(m >= 1 ? m - 1 : 1, x);
  const double Km = bessel::k_scaled(m, x);
  const double Km1 = bessel::k_scaled(m >= 1 ? m - 1 : 1, x);
  const double Imz = bessel::i_scaled(m, z);
  const double Im1z = bessel::i_scaled(m >= 1 ? m - 1 : 1, z);
  const double Kmz = bessel::k_scaled(m, z);
  const double Km1z = bessel::k_scaled(m >= 1 ? m - 1 : 1, z);

  // x I_m'(x) = x I_{m-1}(x) - m I_m(x);  x K_m'(x) = -x K_{m-1}(x) - m K_m(x)
  const double xIp = (m == 0) ? x * Im1 : x * Im1 - m * Im;
  const double xKp = (m == 0) ? -x * Km1 : -x * Km1 - m * Km;
  // at the inner radius the derivative is w.r.t. the physical radius:
  // x I_m'(z), with I_m'(z) = I_{m-1}(z) - (m/z) I_m(z)
  const double xIpz = (m == 0) ? x * Im1z : x * Im1z - (m / r0) * Imz;
  const double xKpz = (m == 0) ? -x * Km1z : -x * Km1z - (m / r0) * Kmz;

  const double Ai = xIp - S * Im;        // e^{-x} * (outer row, I column)
  const double Bk = xKp - S * Km;        // e^{+x} * (outer row, K column)
  const double Ci = -xIpz - S * Imz;     // e^{-z} * (inner row, I column)
  const double Dk = -xKpz - S * Kmz;     // e^{+z} * (inner row, K column)
  const double damp = std::exp(-2.0 * x * (1.0 - r0));
  return Ai * Dk - damp * Bk * Ci;
}

}  // namespace detail

SpectrumResult annulus_spectrum(double h, double r0, double window,
                                int scan_points) {
  if (!(r0 > 0.0 && r0 < 1.0))
    throw std::invalid_argument("annulus_spectrum: need 0 < r0 < 1");
  if (window > 0.0)
    throw std::invalid_argument("annulus_spectrum: only windows <= 0 supported");
  SpectrumResult res;
  res.h = h;
  res.window = window;
  res.domain_id = "annulus";
  res.problem_echo = {{"domain", "annulus"}, {"r0", r0},        {"h", h},
                      {"window", window},   {"scan_points", scan_points},
                      {"method", "bessel-exact"}};
  const double S = 1.0 / std::sqrt(h);
  const double x_hi = S + 3.0 * (1.0 + 1.0 / r0);
  const double w_cut = window / (h * h);  // lambda < window <=> x > sqrt(-w_cut)
  const double x_lo_win = std::sqrt(std::max(-w_cut, 0.0));
  const int m_max = static_cast<int>(std::ceil(S)) + 2;

  std::vector<std::vector<double>> roots(m_max + 1);
  par::parallel_for(m_max + 1, [&](std::size_t mm) {
    const int m = static_cast<int>(mm);
    std::vector<double>& out = roots[m];
    double xprev = std::max(x_lo_win, 1e-6);
    double fprev = detail::annulus_det(h, m, r0, xprev);
    for (int i = 1; i <= scan_points; ++i) {
      const double x = std::max(x_lo_win, 1e-6) +
                       (x_hi - std::max(x_lo_win, 1e-6)) * i / scan_points;
      const double f = detail::annulus_det(h, m, r0, x);
      if (fprev == 0.0) out.push_back(xprev);
      else if (fprev * f < 0.0) {
        double lo = xprev, hi = x, flo = fprev;
        for (int it = 0; it < 120 && hi - lo > 1e-13 * hi; ++it) {
          const double mid = 0.5 * (lo + hi);
          const double fm = detail::annulus_det(h, m, r0, mid);
          if (flo * fm <= 0.0) hi = mid;
          else { lo = mid; flo = fm; }
        }
        out.push_back(0.5 * (lo + hi));
      }
      xprev = x;
      fprev = f;
    }
  });
  for (int m = 0; m <= m_max; ++m)
    for (double x : roots[m]) {
      const double lam = -h * h * x * x;
      if (!(lam < window)) continue;
      EigenRecord rec{lam, m, "bessel-exact", "-", 0, 0, 0.0};
      res.eigs.push_back(rec);
      if (m >= 1) res.eigs.push_back(rec);
    }
  std::sort(res.eigs.begin(), res.eigs.end(),
            [](const EigenRecord& a, const EigenRecord& b) {
              return a.lambda < b.lambda;
            });
  return res;
}

}  // namespace robinlab::robin2d
