#include <cstdio>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "robinlab/experiments.hpp"

// robinlab run <config.json>      execute an experiment, write artifacts
// robinlab check <summary.json>   recompute criteria from the CSV artifacts
// robinlab list-experiments       available experiment ids
//
// ROBINLAB_THREADS caps the worker count; ROBINLAB_SERIAL=1 forces the
// serial reference path.

using namespace robinlab;

int main(int argc, char** argv) {
  CLI::App app{"semiclassical Robin spectral laboratory"};
  app.require_subcommand(1);

  std::string config_path;
  auto* run = app.add_subcommand("run", "run an experiment from a config file");
  run->add_option("config", config_path, "JSON experiment config")->required();

  std::string summary_path;
  auto* check = app.add_subcommand("check", "audit a summary against its artifacts");
  check->add_option("summary", summary_path, "summary JSON written by run")
      ->required();

  auto* list = app.add_subcommand("list-experiments", "print experiment ids");

  CLI11_PARSE(app, argc, argv);

  try {
    if (list->parsed()) {
      for (const auto& id : experiments::experiment_ids())
        std::printf("%s\n", id.c_str());
      return 0;
    }
    if (run->parsed()) {
      std::ifstream f(config_path);
      if (!f) {
        std::fprintf(stderr, "cannot open %s\n", config_path.c_str());
        return 2;
      }
      nlohmann::json j;
      f >> j;
      const auto cfg = experiments::ExperimentConfig::from_json(j);
      const auto summary = experiments::run_experiment(cfg);
      for (const auto& c : summary.criteria)
        std::printf("[%s] %s: value=%.6g target=%.6g tol=%.6g\n",
                    c.pass ? "PASS" : "FAIL", c.name.c_str(), c.value, c.target,
                    c.tol);
      for (const auto& n : summary.notes) std::printf("note: %s\n", n.c_str());
      std::printf("%s: %s\n", summary.experiment.c_str(),
                  summary.all_pass() ? "all criteria pass" : "criteria FAILED");
      return summary.all_pass() ? 0 : 1;
    }
    if (check->parsed()) {
      const bool ok = experiments::check_summary(summary_path);
      std::printf("%s\n", ok ? "summary matches artifacts"
                             : "summary does NOT match artifacts");
      return ok ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
