#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "robinlab/geometry.hpp"
#include "robinlab/parallel.hpp"
#include "robinlab/robin2d.hpp"

// The serial reference path must produce bitwise-identical spectra: every
// parallel kernel writes only to slots addressed by its own index.

using namespace robinlab;

TEST_CASE("parallel_for covers every index once") {
  std::vector<int> hits(1000, 0);
  par::ScopedMode m(par::Mode::openmp);
  par::parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
  for (int h : hits) CHECK(h == 1);
}

TEST_CASE("disk spectrum identical in serial and openmp") {
  const double h = 1e-3;
  robin2d::SpectrumResult a, b;
  {
    par::ScopedMode m(par::Mode::serial);
    a = robin2d::disk_spectrum(h, 1.0, 0.0);
  }
  {
    par::ScopedMode m(par::Mode::openmp);
    b = robin2d::disk_spectrum(h, 1.0, 0.0);
  }
  REQUIRE(a.eigs.size() == b.eigs.size());
  for (std::size_t i = 0; i < a.eigs.size(); ++i) {
    CHECK(a.eigs[i].lambda == b.eigs[i].lambda);  // bitwise
    CHECK(a.eigs[i].mode == b.eigs[i].mode);
  }
}

TEST_CASE("collar spectrum identical in serial and openmp") {
  const auto ell = geometry::Curve::make_ellipse(2.0, 1.0);
  const double h = 1e-2;
  robin2d::CollarDiscretization d;
  d.inner = robin2d::InnerBC::dirichlet;
  d.delta = 0.2;
  d.Ns = 24;
  d.Nt = 48;
  d.richardson = false;
  robin2d::SpectrumResult a, b;
  {
    par::ScopedMode m(par::Mode::serial);
    a = robin2d::collar_spectrum(ell, h, d);
  }
  {
    par::ScopedMode m(par::Mode::openmp);
    b = robin2d::collar_spectrum(ell, h, d);
  }
  REQUIRE(a.eigs.size() == b.eigs.size());
  for (std::size_t i = 0; i < a.eigs.size(); ++i)
    CHECK(a.eigs[i].lambda == b.eigs[i].lambda);  // bitwise
}

TEST_CASE("annulus scan identical in serial and openmp") {
  robin2d::SpectrumResult a, b;
  {
    par::ScopedMode m(par::Mode::serial);
    a = robin2d::annulus_spectrum(1e-2, 0.5, 0.0);
  }
  {
    par::ScopedMode m(par::Mode::openmp);
    b = robin2d::annulus_spectrum(1e-2, 0.5, 0.0);
  }
  REQUIRE(a.eigs.size() == b.eigs.size());
  for (std::size_t i = 0; i < a.eigs.size(); ++i)
    CHECK(a.eigs[i].lambda == b.eigs[i].lambda);
}
