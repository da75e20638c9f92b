#include "robinlab/decay.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "robinlab/fit.hpp"

namespace robinlab::decay {

RateFit fit_decay_rate(const robin2d::EigenMode& mode, double h,
                       double window_lo_factor, double window_hi_factor) {
  const double sh = std::sqrt(h);
  const double lo = window_lo_factor * sh;
  const double hi = std::min(window_hi_factor * sh, mode.depth);
  std::vector<double> ts, ls;
  for (std::size_t i = 0; i < mode.ray_t.size(); ++i) {
    const double t = mode.ray_t[i];
    const double u = mode.ray_u[i];
    if (t < lo || t > hi) continue;
    if (!(u > 1e-300)) continue;  // underflow window truncated
    ts.push_back(t);
    ls.push_back(std::log(u));
  }
  if (ts.size() < 10)
    throw std::runtime_error("fit_decay_rate: fewer than 10 usable samples");
  const fit::LineFit lf = fit::fit_line(ts, ls);
  RateFit out;
  out.rate = -lf.slope;
  out.rate_scaled = out.rate * sh;
  out.residual_rms = lf.residual_rms;
  out.samples = static_cast<int>(ts.size());
  out.window_lo = lo;
  out.window_hi = hi;
  return out;
}

double agmon_ratio(const robin2d::EigenMode& mode, double h, double alpha,
                   double M) {
  if (!(M > 0.0 && M < 1.0))
    throw std::invalid_argument("agmon_ratio: M must be in (0,1)");
  if (!(mode.w < -M / h))
    throw std::invalid_argument(
        "agmon_ratio: hypothesis w < -M/h violated for this mode");
  const double sh = std::sqrt(h);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < mode.qt.size(); ++i) {
    const double wgt = mode.qw[i];
    const double e = std::exp(2.0 * alpha * mode.qt[i] / sh);
    num += wgt * (mode.fu2[i] + h * mode.fgrad2[i]) * e;
    den += wgt * mode.fu2[i];
  }
  if (!(den > 0.0)) throw std::runtime_error("agmon_ratio: zero mass");
  return num / den;
}

double polynomial_bound_sup(const robin2d::EigenMode& mode, double h, int p,
                            double epsilon) {
  if (p < 0) throw std::invalid_argument("polynomial_bound_sup: p >= 0 required");
  if (!(mode.w <= epsilon))
    throw std::invalid_argument("polynomial_bound_sup: requires w <= epsilon");
  double sup = 0.0;
  for (std::size_t i = 0; i < mode.ray_t.size(); ++i) {
    const double d2h = mode.ray_t[i] * mode.ray_t[i] / h;
    sup = std::max(sup, mode.ray_u[i] * std::pow(d2h, p));
  }
  return sup;
}

double pointwise_prefactor_sup(const robin2d::EigenMode& mode, double h,
                               double alpha, double M, double eps0,
                               double prefactor_exponent) {
  if (!(mode.w < -M / h))
    throw std::invalid_argument(
        "pointwise_prefactor_sup: hypothesis w < -M/h violated");
  const double sh = std::sqrt(h);
  const double pref = std::pow(h, prefactor_exponent);
  double sup = 0.0;
  for (std::size_t i = 0; i < mode.ray_t.size(); ++i) {
    const double d = std::min(mode.ray_t[i], eps0);
    sup = std::max(sup, mode.ray_u[i] * pref * std::exp(alpha * d / sh));
  }
  return sup;
}

nlohmann::json DecayReport::to_json() const {
  nlohmann::json j;
  j["h"] = h;
  j["mode"] = mode;
  j["w"] = w;
  j["method"] = method;
  j["rate"] = rate.rate;
  j["rate_scaled"] = rate.rate_scaled;
  j["rate_samples"] = rate.samples;
  j["agmon_ratio"] = agmon;
  nlohmann::json ps = nlohmann::json::object();
  for (const auto& [p, v] : poly_sup) ps[std::to_string(p)] = v;
  j["poly_sup"] = ps;
  j["pointwise_sup"] = pointwise;
  return j;
}

}  // namespace robinlab::decay
