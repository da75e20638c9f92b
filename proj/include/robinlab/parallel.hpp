#pragma once
#include <cstddef>
#include <cstdlib>
#include <omp.h>

// Parallel execution policy shared by all kernels.  Every OpenMP loop in the
// library goes through parallel_for so that the serial reference path stays
// available for testing (results must be bitwise identical: each worker only
// writes to slots addressed by its own index).
//
// ROBINLAB_THREADS=<n> caps the worker count; ROBINLAB_SERIAL=1 forces the
// serial path globally.

namespace robinlab::par {

enum class Mode { serial, openmp };

inline Mode& mode() {
  static Mode m = [] {
    const char* s = std::getenv("ROBINLAB_SERIAL");
    return (s && s[0] == '1') ? Mode::serial : Mode::openmp;
  }();
  return m;
}

inline void set_mode(Mode m) { mode() = m; }

inline int thread_count() {
  if (mode() == Mode::serial) return 1;
  if (const char* s = std::getenv("ROBINLAB_THREADS")) {
    int n = std::atoi(s);
    if (n >= 1) return n;
  }
  return omp_get_max_threads();
}

template <class F>
void parallel_for(std::size_t n, F&& f) {
  if (mode() == Mode::serial || n < 2) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  const int nt = thread_count();
#pragma omp parallel for schedule(dynamic) num_threads(nt)
  for (long long i = 0; i < static_cast<long long>(n); ++i)
    f(static_cast<std::size_t>(i));
}

// RAII guard used by tests and the benchmark to flip the mode locally.
struct ScopedMode {
  Mode saved;
  explicit ScopedMode(Mode m) : saved(mode()) { set_mode(m); }
  ~ScopedMode() { set_mode(saved); }
};

}  // namespace robinlab::par
