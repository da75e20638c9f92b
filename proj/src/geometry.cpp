#include "robinlab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace robinlab::geometry {

namespace {

constexpr double kPi = std::numbers::pi;

// 10-point Gauss-Legendre on [-1,1]
constexpr int kGn = 10;
constexpr double kGx[kGn] = {
    -0.9739065285171717, -0.8650633666889845, -0.6794095682990244,
    -0.4333953941292472, -0.1488743389816312, 0.1488743389816312,
    0.4333953941292472,  0.6794095682990244,  0.8650633666889845,
    0.9739065285171717};
constexpr double kGw[kGn] = {
    0.0666713443086881, 0.1494513491505806, 0.2190863625159820,
    0.2692667193099963, 0.2955242247147529, 0.2955242247147529,
    0.2692667193099963, 0.2190863625159820, 0.1494513491505806,
    0.0666713443086881};

template <class F>
double gauss10(F&& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double acc = 0.0;
  for (int i = 0; i < kGn; ++i) acc += kGw[i] * f(c + h * kGx[i]);
  return acc * h;
}

constexpr int kPanels = 4096;   // arc-length quadrature panels
constexpr int kKnots = 4096;    // spline knots over one period
constexpr int kSamples = 1024;  // stored embedding samples
constexpr int kDft = 8192;      // curvature DFT grid
constexpr int kMaxLag = 1536;

double ellipse_speed(double a, double b, double th) {
  const double st = std::sin(th), ct = std::cos(th);
  return std::sqrt(a * a * st * st + b * b * ct * ct);
}

double ellipse_kappa_theta(double a, double b, double th) {
  const double st = std::sin(th), ct = std::cos(th);
  const double q = a * a * st * st + b * b * ct * ct;
  return a * b / (q * std::sqrt(q));
}

// cubic Hermite on uniform knots, periodic continuation
// DFT of real periodic samples; keeps lags 0..maxlag, trims the tail of
// negligible coefficients.
std::vector<cplx> dft_nonneg_lags(const std::vector<double>& f, int maxlag) {
  const int n = static_cast<int>(f.size());
  maxlag = std::min(maxlag, n / 2 - 1);
  std::vector<cplx> out(maxlag + 1);
  for (int j = 0; j <= maxlag; ++j) {
    const double w = -2.0 * kPi * j / n;
    double re = 0.0, im = 0.0;
    for (int k = 0; k < n; ++k) {
      re += f[k] * std::cos(w * k);
      im += f[k] * std::sin(w * k);
    }
    out[j] = cplx(re / n, im / n);
  }
  const double scale = std::abs(out[0]) + 1.0;
  int last = maxlag;
  while (last > 0 && std::abs(out[last]) < 1e-15 * scale) --last;
  out.resize(last + 1);
  return out;
}

double hermite(const std::vector<double>& f, const std::vector<double>& d,
               double period, double x, double jump_per_period) {
  const int n = static_cast<int>(f.size());
  const double dx = period / n;
  double wraps = std::floor(x / period);
  double xv = x - wraps * period;
  int i = std::min(static_cast<int>(xv / dx), n - 1);
  const double u = (xv - i * dx) / dx;
  const int ip = (i + 1) % n;
  const double jump = (i + 1 == n) ? jump_per_period : 0.0;
  const double u2 = u * u, u3 = u2 * u;
  const double h00 = 2 * u3 - 3 * u2 + 1, h10 = u3 - 2 * u2 + u;
  const double h01 = -2 * u3 + 3 * u2, h11 = u3 - u2;
  double val = h00 * f[i] + h10 * dx * d[i] + h01 * (f[ip] + jump) +
               h11 * dx * d[ip];
  return val + wraps * jump_per_period;
}

}  // namespace

std::string kind_name(CurveKind k) {
  switch (k) {
    case CurveKind::circle: return "circle";
    case CurveKind::ellipse: return "ellipse";
    case CurveKind::custom_fourier: return "custom-fourier";
  }
  return "?";
}

bool Curve::constant_curvature() const {
  for (std::size_t j = 1; j < kap_hat_.size(); ++j)
    if (std::abs(kap_hat_[j]) > 1e-13 * (std::abs(kap_hat_[0]) + 1.0))
      return false;
  return true;
}

double Curve::injectivity_bound() const {
  const double m = std::max(std::abs(kap_max_), std::abs(kap_min_));
  return m > 0 ? 1.0 / m : std::numeric_limits<double>::infinity();
}

double Curve::curvature(double s) const {
  if (kind_ == CurveKind::circle) return 1.0 / pa_;
  const double w = kPi * s / L_;
  double acc = kap_hat_[0].real();
  for (std::size_t j = 1; j < kap_hat_.size(); ++j) {
    const double c = std::cos(j * w), sn = std::sin(j * w);
    acc += 2.0 * (kap_hat_[j].real() * c - kap_hat_[j].imag() * sn);
  }
  return acc;
}

double Curve::metric(double s, double t) const {
  const double a = 1.0 - t * curvature(s);
  if (a <= 0.0)
    throw std::domain_error("Curve::metric: collar too deep, 1 - t*kappa <= 0");
  return a;
}

double Curve::spline_theta(double s) const {
  return hermite(th_, dth_, 2.0 * L_, s, 2.0 * kPi);
}

Vec2 Curve::spline_pos(double s, Vec2* tangent) const {
  const int n = static_cast<int>(pos_.size());
  const double period = 2.0 * L_;
  const double dx = period / n;
  double xv = s - std::floor(s / period) * period;
  int i = std::min(static_cast<int>(xv / dx), n - 1);
  const double u = (xv - i * dx) / dx;
  const int ip = (i + 1) % n;
  const double u2 = u * u, u3 = u2 * u;
  const double h00 = 2 * u3 - 3 * u2 + 1, h10 = u3 - 2 * u2 + u;
  const double h01 = -2 * u3 + 3 * u2, h11 = u3 - u2;
  Vec2 out;
  for (int c = 0; c < 2; ++c)
    out[c] = h00 * pos_[i][c] + h10 * dx * tan_[i][c] + h01 * pos_[ip][c] +
             h11 * dx * tan_[ip][c];
  if (tangent) {
    const double g00 = (6 * u2 - 6 * u) / dx, g10 = 3 * u2 - 4 * u + 1;
    const double g01 = (-6 * u2 + 6 * u) / dx, g11 = 3 * u2 - 2 * u;
    for (int c = 0; c < 2; ++c)
      (*tangent)[c] = g00 * pos_[i][c] + g10 * tan_[i][c] +
                      g01 * pos_[ip][c] + g11 * tan_[ip][c];
  }
  return out;
}

Vec2 Curve::boundary_point(double s) const {
  switch (kind_) {
    case CurveKind::circle:
      return {pa_ * std::cos(s / pa_), pa_ * std::sin(s / pa_)};
    case CurveKind::ellipse: {
      const double th = spline_theta(s);
      return {pa_ * std::cos(th), pb_ * std::sin(th)};
    }
    case CurveKind::custom_fourier:
      return spline_pos(s, nullptr);
  }
  return {};
}

Vec2 Curve::outward_normal(double s) const {
  switch (kind_) {
    case CurveKind::circle:
      return {std::cos(s / pa_), std::sin(s / pa_)};
    case CurveKind::ellipse: {
      const double th = spline_theta(s);
      const double sp = ellipse_speed(pa_, pb_, th);
      return {pb_ * std::cos(th) / sp, pa_ * std::sin(th) / sp};
    }
    case CurveKind::custom_fourier: {
      Vec2 tg;
      spline_pos(s, &tg);
      const double n = std::hypot(tg[0], tg[1]);
      return {tg[1] / n, -tg[0] / n};  // interior on the left, CCW
    }
  }
  return {};
}

Vec2 Curve::embed(const TubularPoint& p) const {
  if (p.t < 0.0)
    throw std::domain_error("Curve::embed: t must be >= 0");
  if (p.t >= injectivity_bound())
    throw std::domain_error("Curve::embed: t beyond injectivity bound");
  const Vec2 m = boundary_point(p.s);
  const Vec2 nu = outward_normal(p.s);
  return {m[0] - p.t * nu[0], m[1] - p.t * nu[1]};
}

void Curve::finalize() {
  if (std::abs(2.0 * L_ * kap_hat_[0].real() - 2.0 * kPi) > 1e-10)
    throw std::runtime_error("Curve: total curvature must equal 2*pi");
  // curvature extrema: dense scan, then golden-section refinement
  const int n = 16384;
  double best_max = -1e300, best_min = 1e300;
  double s_max = 0, s_min = 0;
  for (int i = 0; i < n; ++i) {
    const double s = (2.0 * L_ * i) / n - L_;
    const double k = curvature(s);
    if (k > best_max) { best_max = k; s_max = s; }
    if (k < best_min) { best_min = k; s_min = s; }
  }
  const double ds = 2.0 * L_ / n;
  auto refine = [&](double s0, int sign) {
    double a = s0 - ds, b = s0 + ds;
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - gr * (b - a), d = a + gr * (b - a);
    for (int it = 0; it < 80; ++it) {
      if (sign * curvature(c) > sign * curvature(d)) b = d;
      else a = c;
      c = b - gr * (b - a);
      d = a + gr * (b - a);
    }
    return curvature(0.5 * (a + b));
  };
  kap_max_ = refine(s_max, +1);
  kap_min_ = refine(s_min, -1);

  samples_.resize(kSamples);
  for (int i = 0; i < kSamples; ++i)
    samples_[i] = boundary_point((2.0 * L_ * i) / kSamples - L_);
}

Curve Curve::make_circle(double radius) {
  if (!(radius > 0.0))
    throw std::invalid_argument("make_circle: radius must be positive");
  Curve c;
  c.kind_ = CurveKind::circle;
  c.pa_ = radius;
  c.L_ = kPi * radius;
  c.kap_hat_ = {cplx(1.0 / radius, 0.0)};
  c.finalize();
  return c;
}

Curve Curve::make_ellipse(double a, double b) {
  if (!(a >= b && b > 0.0))
    throw std::invalid_argument("make_ellipse: need a >= b > 0");
  Curve c;
  c.kind_ = CurveKind::ellipse;
  c.pa_ = a;
  c.pb_ = b;

  // arc length s(theta) at panel edges, full and half resolution
  auto perimeter_at = [&](int panels) {
    double acc = 0.0;
    for (int i = 0; i < panels; ++i)
      acc += gauss10([&](double th) { return ellipse_speed(a, b, th); },
                     2.0 * kPi * i / panels, 2.0 * kPi * (i + 1) / panels);
    return acc;
  };
  std::vector<double> cum(kPanels + 1, 0.0);
  for (int i = 0; i < kPanels; ++i)
    cum[i + 1] = cum[i] +
                 gauss10([&](double th) { return ellipse_speed(a, b, th); },
                         2.0 * kPi * i / kPanels, 2.0 * kPi * (i + 1) / kPanels);
  const double per = cum[kPanels];
  if (std::abs(per - perimeter_at(kPanels / 2)) > 1e-12 * per)
    throw std::runtime_error("make_ellipse: arc-length quadrature did not converge");
  c.L_ = 0.5 * per;

  // invert s(theta) on uniform s-knots
  c.th_.resize(kKnots);
  c.dth_.resize(kKnots);
  const double dth_panel = 2.0 * kPi / kPanels;
  int panel = 0;
  for (int i = 0; i < kKnots; ++i) {
    const double target = per * i / kKnots;
    while (panel + 1 < kPanels && cum[panel + 1] < target) ++panel;
    double th = dth_panel * (panel + (target - cum[panel]) /
                                         std::max(cum[panel + 1] - cum[panel], 1e-300));
    for (int it = 0; it < 6; ++it) {
      const double s_here =
          cum[panel] + gauss10([&](double t) { return ellipse_speed(a, b, t); },
                               dth_panel * panel, th);
      th -= (s_here - target) / ellipse_speed(a, b, th);
    }
    c.th_[i] = th;
    c.dth_[i] = 1.0 / ellipse_speed(a, b, th);
  }

  // curvature samples on uniform s grid -> Fourier coefficients
  std::vector<double> ks(kDft);
  for (int i = 0; i < kDft; ++i) {
    const double s = per * i / kDft;
    ks[i] = ellipse_kappa_theta(a, b, c.spline_theta(s));
  }
  c.kap_hat_ = dft_nonneg_lags(ks, kMaxLag);
  c.finalize();
  return c;
}

Curve Curve::make_fourier(double L, std::span<const cplx> kappa_coeffs) {
  if (!(L > 0.0)) throw std::invalid_argument("make_fourier: L must be positive");
  if (kappa_coeffs.empty())
    throw std::invalid_argument("make_fourier: need at least the zero lag");
  Curve c;
  c.kind_ = CurveKind::custom_fourier;
  c.L_ = L;
  c.kap_hat_.assign(kappa_coeffs.begin(), kappa_coeffs.end());
  if (std::abs(2.0 * L * c.kap_hat_[0].real() - 2.0 * kPi) > 1e-10)
    throw std::invalid_argument("make_fourier: integral of kappa must be 2*pi");

  // tangent angle phi(s) = pi/2 + int_0^s kappa; integrate position
  auto phi = [&](double s) {
    double acc = 0.5 * kPi + c.kap_hat_[0].real() * s;
    for (std::size_t j = 1; j < c.kap_hat_.size(); ++j) {
      const cplx cj = c.kap_hat_[j];
      const double w = j * kPi / L;
      // 2 Re( c_j (e^{iws} - 1)/(iw) )
      acc += 2.0 / w *
             (cj.real() * std::sin(w * s) + cj.imag() * (std::cos(w * s) - 1.0));
    }
    return acc;
  };
  const int n = kKnots;
  c.pos_.resize(n);
  c.tan_.resize(n);
  Vec2 p = {0.0, 0.0};
  const double ds = 2.0 * L / n;
  for (int i = 0; i < n; ++i) {
    c.pos_[i] = p;
    const double s0 = i * ds;
    c.tan_[i] = {std::cos(phi(s0)), std::sin(phi(s0))};
    p[0] += gauss10([&](double s) { return std::cos(phi(s)); }, s0, s0 + ds);
    p[1] += gauss10([&](double s) { return std::sin(phi(s)); }, s0, s0 + ds);
  }
  if (std::hypot(p[0] - c.pos_[0][0], p[1] - c.pos_[0][1]) > 1e-8 * std::max(L, 1.0))
    throw std::invalid_argument("make_fourier: curve does not close up");
  c.finalize();
  return c;
}

nlohmann::json Curve::to_json() const {
  nlohmann::json j;
  j["kind"] = kind_name(kind_);
  nlohmann::json params = nlohmann::json::object();
  if (kind_ == CurveKind::circle) params["radius"] = pa_;
  if (kind_ == CurveKind::ellipse) {
    params["a"] = pa_;
    params["b"] = pb_;
  }
  j["params"] = params;
  j["L"] = L_;
  nlohmann::json kf = nlohmann::json::array();
  for (const auto& ck : kap_hat_) kf.push_back({ck.real(), ck.imag()});
  j["kappa_fourier"] = kf;
  return j;
}

Curve Curve::from_json(const nlohmann::json& j) {
  const std::string kind = j.at("kind");
  if (kind == "circle") return make_circle(j.at("params").at("radius"));
  if (kind == "ellipse")
    return make_ellipse(j.at("params").at("a"), j.at("params").at("b"));
  if (kind == "custom-fourier") {
    std::vector<cplx> coeffs;
    for (const auto& e : j.at("kappa_fourier"))
      coeffs.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
    return make_fourier(j.at("L"), coeffs);
  }
  throw std::invalid_argument("Curve::from_json: unknown kind " + kind);
}

}  // namespace robinlab::geometry
