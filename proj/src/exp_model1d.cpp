#include <cmath>
#include <numbers>

#include "experiments_detail.hpp"
#include "robinlab/csv.hpp"
#include "robinlab/fit.hpp"
#include "robinlab/model1d.hpp"
#include "robinlab/parallel.hpp"

// 1D experiments: interval-operator lemmas, the quasimode residual order,
// the two-term eigenvalue expansion, and the spectral gap.

namespace robinlab::experiments::detail {

namespace {

using model1d::Cap;
constexpr double kPi = std::numbers::pi;

std::string cap_name(Cap c) { return c == Cap::dirichlet ? "D" : "N"; }

// ---------------------------------------------------------------- lemmas

void lemmas_run(const ExperimentConfig& cfg) {
  csv::Table t;
  t.header = {"T_or_h", "beta", "rho", "cap", "n", "lambda", "err_estimate"};
  std::vector<double> Ts;
  for (const auto& v : cfg.extra.at("T_list")) Ts.push_back(v.get<double>());
  for (double T : Ts)
    for (Cap cap : {Cap::dirichlet, Cap::neumann}) {
      const double l1 = model1d::interval_negative_eig({T, cap});
      t.rows.push_back({csv::fmt(T), "0", "0", cap_name(cap), "1",
                        csv::fmt(l1), "0"});
      const auto lp = model1d::interval_positive_eigs({T, cap}, 10);
      for (int n = 2; n <= 10; ++n)
        t.rows.push_back({csv::fmt(T), "0", "0", cap_name(cap),
                          csv::fmt(n), csv::fmt(lp[n - 2]), "0"});
    }
  t.write(artifact_path(cfg, "model1d_lemmas.csv"));
}

Summary lemmas_eval(const ExperimentConfig& cfg) {
  const csv::Table t = csv::Table::read(artifact_path(cfg, "model1d_lemmas.csv"));
  Summary s;
  s.experiment = cfg.experiment;
  auto lambda_at = [&](double T, const std::string& cap, int n) {
    for (std::size_t r = 0; r < t.rows.size(); ++r)
      if (t.num(r, "T_or_h") == T && t.str(r, "cap") == cap &&
          t.num(r, "n") == n)
        return t.num(r, "lambda");
    throw std::runtime_error("model1d-lemmas: row not found");
  };

  for (double T : {5.0, 10.0}) {
    const double l1 = lambda_at(T, "D", 1);
    const double ratio = std::abs((l1 + 1.0) / (4.0 * std::exp(-2.0 * T)) - 1.0);
    const double lim = tol(cfg, T == 5.0 ? "lambda1_ratio_T5" : "lambda1_ratio_T10");
    s.criteria.push_back({T == 5.0 ? "lambda1_ratio_T5" : "lambda1_ratio_T10",
                          ratio, 0.0, lim, ratio <= lim});
  }

  // positive-eigenvalue bands.  The Neumann roots obey the printed lemma
  // bands ((2n-3)pi/2T, (n-1)pi/T); the Dirichlet roots of tan(lT) = l
  // provably live one half-band higher, ((n-1)pi/T, (2n-1)pi/2T) -- the
  // bands are checked as the transcendental structure dictates.
  double worstN = 1e300, worstD = 1e300;
  std::vector<double> Ts;
  for (const auto& v : cfg.extra.at("T_list")) Ts.push_back(v.get<double>());
  for (double T : Ts)
    for (int n = 2; n <= 10; ++n) {
      const double lN = lambda_at(T, "N", n);
      const double lD = lambda_at(T, "D", n);
      const double b0 = std::pow((2 * n - 3) * kPi / (2 * T), 2);
      const double b1 = std::pow((n - 1) * kPi / T, 2);
      const double b2 = std::pow((2 * n - 1) * kPi / (2 * T), 2);
      worstN = std::min({worstN, lN - b0, b1 - lN});
      worstD = std::min({worstD, lD - b1, b2 - lD});
    }
  s.criteria.push_back(
      {"neumann_band_margin_min", worstN, 0.0, 0.0, worstN > 0.0});
  s.criteria.push_back(
      {"dirichlet_band_margin_min", worstD, 0.0, 0.0, worstD > 0.0});

  // the sign of the Neumann-cap correction is opposite to the Dirichlet one
  double worst_order = 1e300;
  for (double T : Ts) {
    const double lD = lambda_at(T, "D", 1);
    const double lN = lambda_at(T, "N", 1);
    worst_order = std::min(worst_order, lD - lN);
  }
  s.criteria.push_back({"neumann_below_dirichlet_margin", worst_order, 0.0, 0.0,
                        worst_order > 0.0});
  s.notes.push_back(
      "lambda_1^N = -1 - 4(1+o(1))e^{-2T} from mu = coth(mu T); the positive "
      "sign sometimes quoted for the correction belongs to the Dirichlet cap");
  return s;
}

// ------------------------------------------------- quasimode order + expansion

void quasi_run(const ExperimentConfig& cfg) {
  csv::Table t;
  t.header = {"T_or_h", "beta",     "rho",   "cap",  "n",
              "lambda", "err_estimate", "kind"};
  const int N = cfg.extra.value("grid_size", 2000);
  std::vector<double> betas;
  for (const auto& b : cfg.extra.at("beta_list")) betas.push_back(b.get<double>());

  struct Row {
    double h, beta, value, err;
    std::string kind;
  };
  std::vector<Row> rows(cfg.h_list.size() * betas.size() * 3);
  par::parallel_for(cfg.h_list.size() * betas.size(), [&](std::size_t idx) {
    const double h = cfg.h_list[idx / betas.size()];
    const double beta = betas[idx % betas.size()];
    model1d::WeightedProblem p;
    p.h = h;
    p.beta = beta;
    p.rho = cfg.rho;
    p.cap = Cap::neumann;
    p.grid_size = N;
    const auto res = model1d::quasimode_residual(p);
    const auto q = model1d::quasimode(p);
    const auto we = model1d::weighted_eigs(p, 1, false);
    rows[3 * idx + 0] = {h, beta, res.norm,
                         std::abs(res.norm - res.norm_coarse), "residual"};
    rows[3 * idx + 1] = {h, beta, we.values[0], we.err_estimate[0], "lambda1"};
    rows[3 * idx + 2] = {h, beta, q.mu_app, 0.0, "mu_app"};
  });
  for (const auto& r : rows)
    t.rows.push_back({csv::fmt(r.h), csv::fmt(r.beta), csv::fmt(cfg.rho), "N",
                      "1", csv::fmt(r.value), csv::fmt(r.err), r.kind});
  t.write(artifact_path(cfg, "quasimode_order.csv"));
}

Summary quasi_eval(const ExperimentConfig& cfg) {
  const csv::Table t =
      csv::Table::read(artifact_path(cfg, "quasimode_order.csv"));
  Summary s;
  s.experiment = cfg.experiment;
  auto value_at = [&](double h, double beta, const std::string& kind) {
    for (std::size_t r = 0; r < t.rows.size(); ++r)
      if (t.num(r, "T_or_h") == h && t.num(r, "beta") == beta &&
          t.str(r, "kind") == kind)
        return t.num(r, "lambda");
    throw std::runtime_error("quasimode-order: row not found");
  };

  // residual order in h at beta = 1
  std::vector<double> hs = cfg.h_list, res;
  for (double h : hs) res.push_back(value_at(h, 1.0, "residual"));
  const auto fr = fit::fit_order(hs, res, tol(cfg, "slope_target"),
                                 tol(cfg, "slope_tol"));
  s.criteria.push_back(
      {"residual_slope", fr.slope, fr.target_slope, fr.tol, fr.pass});

  // |lambda_1 - mu_app| / h^{3/2} stability across the sweep
  double rmin = 1e300, rmax = 0.0;
  std::vector<double> betas;
  for (const auto& b : cfg.extra.at("beta_list")) betas.push_back(b.get<double>());
  for (double beta : betas)
    for (double h : hs) {
      const double lam = value_at(h, beta, "lambda1");
      const double mu = value_at(h, beta, "mu_app");
      const double ratio = std::abs(lam - mu) / std::pow(h, 1.5);
      rmin = std::min(rmin, ratio);
      rmax = std::max(rmax, ratio);
    }
  const double stab = rmax / rmin;
  const double stab_lim = tol(cfg, "expansion_stability");
  s.criteria.push_back({"expansion_ratio_stability", stab, 1.0, stab_lim,
                        stab <= stab_lim});
  s.criteria.push_back({"expansion_ratio_max", rmax, 0.0, 0.0, true});
  s.notes.push_back(
      "the cap/cutoff tail e^{-T(h)} with T = h^{rho-1/2} in [1.3, 2.1] "
      "dominates both quantities at these h (T grows only like h^{-1/16}); "
      "see README, 'Known numerical limitations'");
  return s;
}

// ------------------------------------------------------------------- gap

void gap_run(const ExperimentConfig& cfg) {
  csv::Table t;
  t.header = {"T_or_h", "beta", "rho", "cap", "n", "lambda", "err_estimate",
              "kind"};
  std::vector<double> betas;
  for (const auto& b : cfg.extra.at("beta_list")) betas.push_back(b.get<double>());
  struct Row {
    double h, beta, l2, defl;
  };
  std::vector<Row> rows(cfg.h_list.size() * betas.size());
  par::parallel_for(rows.size(), [&](std::size_t idx) {
    const double h = cfg.h_list[idx / betas.size()];
    const double beta = betas[idx % betas.size()];
    model1d::WeightedProblem p;
    p.h = h;
    p.beta = beta;
    p.rho = cfg.rho;
    p.cap = Cap::neumann;
    const auto g = model1d::gap_check(p);
    rows[idx] = {h, beta, g.lambda2, g.deflated_min};
  });
  for (const auto& r : rows) {
    t.rows.push_back({csv::fmt(r.h), csv::fmt(r.beta), csv::fmt(cfg.rho), "N",
                      "2", csv::fmt(r.l2), "0", "lambda2"});
    t.rows.push_back({csv::fmt(r.h), csv::fmt(r.beta), csv::fmt(cfg.rho), "N",
                      "2", csv::fmt(r.defl), "0", "deflated"});
  }
  t.write(artifact_path(cfg, "gap.csv"));
}

Summary gap_eval(const ExperimentConfig& cfg) {
  const csv::Table t = csv::Table::read(artifact_path(cfg, "gap.csv"));
  Summary s;
  s.experiment = cfg.experiment;
  double l2min = 1e300, dmin = 1e300;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const double h = t.num(r, "T_or_h");
    const double scaled =
        t.num(r, "lambda") * std::pow(h, 2.0 * cfg.rho - 1.0);
    if (t.str(r, "kind") == "lambda2") l2min = std::min(l2min, scaled);
    else dmin = std::min(dmin, scaled);
  }
  const double target = kPi * kPi / 8.0;
  s.criteria.push_back({"lambda2_scaled_min", l2min, target, 0.0,
                        l2min >= target});
  s.criteria.push_back({"deflated_scaled_min", dmin, 0.0, 0.0, dmin > 0.0});
  return s;
}

}  // namespace

void register_model1d(std::vector<Impl>& out) {
  {
    Impl i;
    i.exp.id = "model1d-lemmas";
    i.exp.requires_h_list = false;
    i.exp.run = [](const ExperimentConfig& c) {
      lemmas_run(c);
      return lemmas_eval(c);
    };
    i.exp.evaluate_from_artifacts = lemmas_eval;
    i.defaults.experiment = i.exp.id;
    i.defaults.extra = {{"T_list", {2.0, 5.0, 10.0}}};
    i.defaults.tolerances = {{"lambda1_ratio_T5", 0.05},
                             {"lambda1_ratio_T10", 0.001}};
    out.push_back(std::move(i));
  }
  {
    Impl i;
    i.exp.id = "quasimode-order";
    i.exp.run = [](const ExperimentConfig& c) {
      quasi_run(c);
      return quasi_eval(c);
    };
    i.exp.evaluate_from_artifacts = quasi_eval;
    i.defaults.experiment = i.exp.id;
    i.defaults.h_list = {1e-2, 1e-3, 1e-4, 1e-5};
    i.defaults.extra = {{"beta_list", {-1.0, 1.0}}, {"grid_size", 2000}};
    i.defaults.tolerances = {{"slope_target", 1.5},
                             {"slope_tol", 0.15},
                             {"expansion_stability", 10.0}};
    out.push_back(std::move(i));
  }
  {
    Impl i;
    i.exp.id = "gap";
    i.exp.run = [](const ExperimentConfig& c) {
      gap_run(c);
      return gap_eval(c);
    };
    i.exp.evaluate_from_artifacts = gap_eval;
    i.defaults.experiment = i.exp.id;
    i.defaults.h_list = {1e-2, 1e-3, 1e-4, 1e-5};
    i.defaults.extra = {{"beta_list", {-1.0, 0.0, 1.0}}};
    out.push_back(std::move(i));
  }
}

}  // namespace robinlab::experiments::detail
