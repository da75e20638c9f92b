#include <cmath>
#include <fstream>
#include <map>

#include "experiments_detail.hpp"
#include "robinlab/csv.hpp"
#include "robinlab/decay.hpp"
#include "robinlab/robin2d.hpp"

// Decay suite on the m = 0 disk modes: fitted exponential rate, Agmon
// energy ratio with a sharpness control, polynomial interior bounds and the
// pointwise prefactor.

namespace robinlab::experiments::detail {

namespace {

void decay_run(const ExperimentConfig& cfg) {
  csv::Table t;
  t.header = {"h",     "mode",  "w",     "rate", "rate_scaled", "agmon",
              "agmon_neg", "poly0", "poly2", "poly4", "pointwise", "pointwise_pert"};
  const double M = cfg.extra.value("M", 0.81);
  const double alpha = cfg.extra.value("alpha", 0.81);
  const double alpha_neg = cfg.extra.value("alpha_negative", 1.2 * std::sqrt(M));
  const double eps0 = cfg.extra.value("eps0", 0.4);

  for (double h : cfg.h_list) {
    const auto spec = robin2d::disk_spectrum(h, 1.0, 0.0);
    int idx = 0;  // lowest eigenvalue is the m = 0 edge mode
    const auto mode = robin2d::mode_profile(spec, idx);
    const auto rf = decay::fit_decay_rate(mode, h);
    const double ag = decay::agmon_ratio(mode, h, alpha, M);
    const double agn = decay::agmon_ratio(mode, h, alpha_neg, M);
    const double p0 = decay::polynomial_bound_sup(mode, h, 0, 1.0);
    const double p2 = decay::polynomial_bound_sup(mode, h, 2, 1.0);
    const double p4 = decay::polynomial_bound_sup(mode, h, 4, 1.0);
    const double pw = decay::pointwise_prefactor_sup(mode, h, 0.8, M, eps0);
    const double pwp =
        decay::pointwise_prefactor_sup(mode, h, 0.8, M, eps0, 0.55);
    t.rows.push_back({csv::fmt(h), csv::fmt(mode.mode), csv::fmt(mode.w),
                      csv::fmt(rf.rate), csv::fmt(rf.rate_scaled), csv::fmt(ag),
                      csv::fmt(agn), csv::fmt(p0), csv::fmt(p2), csv::fmt(p4),
                      csv::fmt(pw), csv::fmt(pwp)});

    // plot-ready profile
    csv::Table prof;
    prof.header = {"t", "abs_u", "log_abs_u"};
    for (std::size_t i = 0; i < mode.ray_t.size(); ++i) {
      if (!(mode.ray_u[i] > 0.0)) continue;
      prof.rows.push_back({csv::fmt(mode.ray_t[i]), csv::fmt(mode.ray_u[i]),
                           csv::fmt(std::log(mode.ray_u[i]))});
    }
    prof.write(artifact_path(cfg, "decay_profile_h" + csv::fmt(h) + ".csv"));

    decay::DecayReport rep;
    rep.h = h;
    rep.mode = mode.mode;
    rep.w = mode.w;
    rep.method = mode.method;
    rep.rate = rf;
    rep.agmon = ag;
    rep.poly_sup = {{0, p0}, {2, p2}, {4, p4}};
    rep.pointwise = pw;
    std::ofstream jf(artifact_path(cfg, "decay_report_h" + csv::fmt(h) + ".json"));
    jf << rep.to_json().dump(2) << "\n";
  }
  t.write(artifact_path(cfg, "decay_suite.csv"));
}

Summary decay_eval(const ExperimentConfig& cfg) {
  const csv::Table t = csv::Table::read(artifact_path(cfg, "decay_suite.csv"));
  Summary s;
  s.experiment = cfg.experiment;

  double rmin = 1e300, rmax = 0.0;
  double agmin = 1e300, agmax = 0.0;
  double p2min = 1e300, p2max = 0.0;
  std::map<double, double> agn;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const double rs = t.num(r, "rate_scaled");
    rmin = std::min(rmin, rs);
    rmax = std::max(rmax, rs);
    const double ag = t.num(r, "agmon");
    agmin = std::min(agmin, ag);
    agmax = std::max(agmax, ag);
    const double p2 = t.num(r, "poly2");
    p2min = std::min(p2min, p2);
    p2max = std::max(p2max, p2);
    agn[t.num(r, "h")] = t.num(r, "agmon_neg");
  }
  const double rate_lo = tol(cfg, "rate_scaled_min");
  const double rate_hi = tol(cfg, "rate_scaled_max");
  s.criteria.push_back(
      {"rate_scaled_min", rmin, rate_lo, 0.0, rmin >= rate_lo});
  s.criteria.push_back(
      {"rate_scaled_max", rmax, rate_hi, 0.0, rmax <= rate_hi});
  const double stab = tol(cfg, "stability");
  s.criteria.push_back({"agmon_stability", agmax / agmin, 1.0, stab,
                        agmax / agmin <= stab});
  s.criteria.push_back({"poly2_stability", p2max / p2min, 1.0, stab,
                        p2max / p2min <= stab});
  // negative control: the ratio at alpha = 1.2 sqrt(M) must blow up along
  // the sweep.  The map is keyed by h ascending, so begin() is the finest h.
  const double fine = agn.begin()->second;
  const double coarse = agn.rbegin()->second;
  const double growth = coarse > 0.0 ? fine / coarse : 0.0;
  const double gmin = tol(cfg, "negative_control_growth");
  s.criteria.push_back(
      {"agmon_negative_control_growth", growth, gmin, 0.0, growth >= gmin});
  return s;
}

}  // namespace

void register_decay(std::vector<Impl>& out) {
  Impl i;
  i.exp.id = "decay-suite";
  i.exp.run = [](const ExperimentConfig& c) {
    decay_run(c);
    return decay_eval(c);
  };
  i.exp.evaluate_from_artifacts = decay_eval;
  i.defaults.experiment = i.exp.id;
  i.defaults.h_list = {1e-2, 1e-3, 1e-4};
  i.defaults.extra = {{"M", 0.81}, {"alpha", 0.81}, {"eps0", 0.4}};
  i.defaults.tolerances = {{"rate_scaled_min", 0.9},
                           {"rate_scaled_max", 1.05},
                           {"stability", 3.0},
                           {"negative_control_growth", 10.0}};
  out.push_back(std::move(i));
}

}  // namespace robinlab::experiments::detail
