#include "robinlab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "experiments_detail.hpp"

namespace robinlab::experiments {

bool Summary::all_pass() const {
  for (const auto& c : criteria)
    if (!c.pass) return false;
  return !partial;
}

nlohmann::json Summary::to_json() const {
  nlohmann::json j;
  j["experiment"] = experiment;
  nlohmann::json cs = nlohmann::json::array();
  for (const auto& c : criteria)
    cs.push_back({{"name", c.name},
                  {"value", c.value},
                  {"target", c.target},
                  {"tol", c.tol},
                  {"pass", c.pass}});
  j["criteria"] = cs;
  j["partial"] = partial;
  j["notes"] = notes;
  return j;
}

Summary Summary::from_json(const nlohmann::json& j) {
  Summary s;
  s.experiment = j.at("experiment");
  for (const auto& c : j.at("criteria"))
    s.criteria.push_back({c.at("name"), c.at("value"), c.at("target"),
                          c.at("tol"), c.at("pass")});
  s.partial = j.value("partial", false);
  for (const auto& n : j.value("notes", nlohmann::json::array()))
    s.notes.push_back(n.get<std::string>());
  return s;
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
  ExperimentConfig c;
  c.experiment = j.at("experiment");
  for (const auto& h : j.value("h_list", nlohmann::json::array()))
    c.h_list.push_back(h.get<double>());
  for (const auto& d : j.value("domains", nlohmann::json::array()))
    c.domains.push_back(d.get<std::string>());
  c.rho = j.value("rho", 7.0 / 16.0);
  for (const auto& v : j.value("c_search", nlohmann::json::array()))
    c.c_search.push_back(v.get<double>());
  if (j.contains("tolerances"))
    for (const auto& [k, v] : j.at("tolerances").items())
      c.tolerances[k] = v.get<double>();
  c.output_dir = j.value("output_dir", std::string("."));
  c.extra = j.value("extra", nlohmann::json::object());
  return c;
}

static nlohmann::json config_to_json(const ExperimentConfig& c) {
  nlohmann::json j;
  j["experiment"] = c.experiment;
  j["h_list"] = c.h_list;
  j["domains"] = c.domains;
  j["rho"] = c.rho;
  j["c_search"] = c.c_search;
  j["tolerances"] = c.tolerances;
  j["output_dir"] = c.output_dir;
  j["extra"] = c.extra;
  return j;
}

void ExperimentConfig::validate() const {
  find_experiment(experiment);  // throws on unknown id
  for (std::size_t i = 0; i + 1 < h_list.size(); ++i) {
    if (!(h_list[i] > 0.0) || !(h_list[i + 1] > 0.0))
      throw std::invalid_argument("config: h values must be positive");
    const double ratio = h_list[i + 1] / h_list[i];
    if (ratio > 0.5 + 1e-12)
      throw std::invalid_argument(
          "config: h list must be geometric with ratio <= 1/2");
  }
  if (!(rho > 1.0 / 3.0 && rho < 0.5))
    throw std::invalid_argument("config: rho must be in (1/3,1/2)");
}

namespace {

const std::vector<detail::Impl>& registry() {
  static const std::vector<detail::Impl> impls = [] {
    std::vector<detail::Impl> v;
    detail::register_model1d(v);
    detail::register_disk(v);
    detail::register_collar(v);
    detail::register_decay(v);
    return v;
  }();
  return impls;
}

}  // namespace

const std::vector<std::string>& experiment_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> v;
    for (const auto& i : registry()) v.push_back(i.exp.id);
    return v;
  }();
  return ids;
}

const Experiment& find_experiment(const std::string& id) {
  for (const auto& i : registry())
    if (i.exp.id == id) return i.exp;
  throw std::invalid_argument("unknown experiment: " + id);
}

ExperimentConfig default_config(const std::string& id) {
  for (const auto& i : registry())
    if (i.exp.id == id) return i.defaults;
  throw std::invalid_argument("unknown experiment: " + id);
}

Summary run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const Experiment& exp = find_experiment(cfg.experiment);
  if (exp.requires_h_list && cfg.h_list.empty())
    throw std::invalid_argument(cfg.experiment + ": h list must not be empty");
  std::filesystem::create_directories(cfg.output_dir);
  const Summary s = exp.run(cfg);
  nlohmann::json j = s.to_json();
  j["config"] = config_to_json(cfg);
  std::ofstream f(detail::artifact_path(cfg, cfg.experiment + "_summary.json"));
  f << j.dump(2) << "\n";
  return s;
}

bool check_summary(const std::string& summary_path) {
  std::ifstream f(summary_path);
  if (!f) throw std::runtime_error("check: cannot open " + summary_path);
  nlohmann::json j;
  f >> j;
  const Summary stored = Summary::from_json(j);
  const ExperimentConfig cfg = ExperimentConfig::from_json(j.at("config"));
  const Summary redone =
      find_experiment(cfg.experiment).evaluate_from_artifacts(cfg);
  if (stored.criteria.size() != redone.criteria.size()) return false;
  for (std::size_t i = 0; i < stored.criteria.size(); ++i) {
    const auto& a = stored.criteria[i];
    const auto& b = redone.criteria[i];
    if (a.name != b.name || a.pass != b.pass) return false;
    const double scale = std::max({std::abs(a.value), std::abs(b.value), 1.0});
    if (std::abs(a.value - b.value) > 1e-12 * scale) return false;
  }
  return true;
}

namespace detail {

std::string artifact_path(const ExperimentConfig& cfg, const std::string& name) {
  return (std::filesystem::path(cfg.output_dir) / name).string();
}

double tol(const ExperimentConfig& cfg, const std::string& key) {
  const auto it = cfg.tolerances.find(key);
  if (it == cfg.tolerances.end())
    throw std::invalid_argument(cfg.experiment + ": missing tolerance '" + key +
                                "' (all tolerances must be explicit)");
  return it->second;
}

}  // namespace detail

}  // namespace robinlab::experiments
