#pragma once
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

// Batch experiment driver.  Each experiment reads an ExperimentConfig,
// writes CSV artifacts into the output directory, and produces a Summary
// whose criteria are recomputed *from the CSV files* so that `check` can
// audit a finished run from its artifacts alone.

namespace robinlab::experiments {

struct Criterion {
  std::string name;
  double value = 0.0;
  double target = 0.0;
  double tol = 0.0;
  bool pass = false;
};

struct Summary {
  std::string experiment;
  std::vector<Criterion> criteria;
  bool partial = false;  // some grid points failed; see notes
  std::vector<std::string> notes;

  bool all_pass() const;
  nlohmann::json to_json() const;
  static Summary from_json(const nlohmann::json& j);
};

struct ExperimentConfig {
  std::string experiment;
  std::vector<double> h_list;
  std::vector<std::string> domains;
  double rho = 7.0 / 16.0;
  std::vector<double> c_search;
  std::map<std::string, double> tolerances;
  std::string output_dir = ".";
  nlohmann::json extra;  // experiment-specific knobs

  static ExperimentConfig from_json(const nlohmann::json& j);
  void validate() const;
};

// Registered experiment: run computes artifacts and returns the summary;
// evaluate recomputes the summary from previously written artifacts.
struct Experiment {
  std::string id;
  bool requires_h_list = true;
  std::function<Summary(const ExperimentConfig&)> run;
  std::function<Summary(const ExperimentConfig&)> evaluate_from_artifacts;
};

const std::vector<std::string>& experiment_ids();
const Experiment& find_experiment(const std::string& id);

// Built-in configs mirroring configs/*.json; used by the acceptance suite.
ExperimentConfig default_config(const std::string& id);

Summary run_experiment(const ExperimentConfig& cfg);

// `check`: recompute the summary from CSV artifacts and compare.
bool check_summary(const std::string& summary_path);

}  // namespace robinlab::experiments
