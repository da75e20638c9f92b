#pragma once
#include <string>
#include <vector>

#include "robinlab/experiments.hpp"

namespace robinlab::experiments::detail {

struct Impl {
  Experiment exp;
  ExperimentConfig defaults;
};

void register_model1d(std::vector<Impl>& out);  // model1d-lemmas, quasimode-order, gap
void register_disk(std::vector<Impl>& out);     // disk-theorem-main, weyl, steklov-correspondence, rozenblum, annulus
void register_collar(std::vector<Impl>& out);   // bracketing, effective-sandwich
void register_decay(std::vector<Impl>& out);    // decay-suite

// shared helpers
std::string artifact_path(const ExperimentConfig& cfg, const std::string& name);
double tol(const ExperimentConfig& cfg, const std::string& key);

}  // namespace robinlab::experiments::detail
