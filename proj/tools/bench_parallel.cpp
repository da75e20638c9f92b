#include <omp.h>

#include <cmath>
#include <cstdio>

#include "robinlab/geometry.hpp"
#include "robinlab/parallel.hpp"
#include "robinlab/robin2d.hpp"

// Times the OpenMP kernels against the serial reference path and checks
// that both produce identical spectra.  Kernels covered: the collar
// assembly (inverse-metric Fourier tables dominate) and the per-mode disk
// enumeration.

using namespace robinlab;

namespace {

template <class F>
double timed(F&& f) {
  const double t0 = omp_get_wtime();
  f();
  return omp_get_wtime() - t0;
}

double max_dev(const robin2d::SpectrumResult& a,
               const robin2d::SpectrumResult& b) {
  if (a.eigs.size() != b.eigs.size()) return 1e300;
  double d = 0.0;
  for (std::size_t i = 0; i < a.eigs.size(); ++i)
    d = std::max(d, std::abs(a.eigs[i].lambda - b.eigs[i].lambda));
  return d;
}

}  // namespace

int main() {
  std::printf("threads available: %d\n", omp_get_max_threads());

  {
    const auto disk = geometry::Curve::make_circle(1.0);
    const double h = 2.5e-3;
    robin2d::SpectrumResult ser, par_;
    double ts, tp;
    {
      par::ScopedMode m(par::Mode::serial);
      ts = timed([&] { ser = robin2d::disk_spectrum(h, 1.0, 0.0); });
    }
    {
      par::ScopedMode m(par::Mode::openmp);
      tp = timed([&] { par_ = robin2d::disk_spectrum(h, 1.0, 0.0); });
    }
    std::printf("disk spectrum h=%g:    serial %7.3fs  openmp %7.3fs  speedup %.2fx  dev %.1e\n",
                h, ts, tp, ts / tp, max_dev(ser, par_));
  }

  {
    const auto ell = geometry::Curve::make_ellipse(2.0, 1.0);
    const double h = 4e-3;
    robin2d::CollarDiscretization d;
    d.inner = robin2d::InnerBC::dirichlet;
    d.delta = 0.24;
    d.Ns = 40;
    d.Nt = 96;
    d.richardson = false;
    robin2d::SpectrumResult ser, par_;
    double ts, tp;
    {
      par::ScopedMode m(par::Mode::serial);
      ts = timed([&] { ser = robin2d::collar_spectrum(ell, h, d); });
    }
    {
      par::ScopedMode m(par::Mode::openmp);
      tp = timed([&] { par_ = robin2d::collar_spectrum(ell, h, d); });
    }
    std::printf("ellipse collar h=%g: serial %7.3fs  openmp %7.3fs  speedup %.2fx  dev %.1e\n",
                h, ts, tp, ts / tp, max_dev(ser, par_));
  }

  {
    const auto disk = geometry::Curve::make_circle(1.0);
    const double h = 1e-2;
    robin2d::CollarDiscretization d;
    d.inner = robin2d::InnerBC::neumann;
    d.delta = 0.7;
    d.Ns = 32;
    d.Nt = 400;
    robin2d::SpectrumResult ser, par_;
    double ts, tp;
    {
      par::ScopedMode m(par::Mode::serial);
      ts = timed([&] { ser = robin2d::collar_spectrum(disk, h, d); });
    }
    {
      par::ScopedMode m(par::Mode::openmp);
      tp = timed([&] { par_ = robin2d::collar_spectrum(disk, h, d); });
    }
    std::printf("disk collar h=%g:     serial %7.3fs  openmp %7.3fs  speedup %.2fx  dev %.1e\n",
                h, ts, tp, ts / tp, max_dev(ser, par_));
  }
  return 0;
}
