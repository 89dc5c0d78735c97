#ifndef STARDYN_PARALLEL_HPP
#define STARDYN_PARALLEL_HPP

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace stardyn::par {

enum class Mode { serial, openmp };

inline const char* mode_name(Mode m) { return m == Mode::serial ? "serial" : "openmp"; }

inline Mode default_mode() {
#ifdef _OPENMP
  return Mode::openmp;
#else
  return Mode::serial;
#endif
}

inline int worker_count(Mode m) {
#ifdef _OPENMP
  if (m == Mode::openmp) return omp_get_max_threads();
#endif
  (void)m;
  return 1;
}

/// Runs f(i) for i in [0, n).  Iterations must be independent; results go into
/// pre-sized slots so the serial path is the reference semantics of the
/// parallel one.
template <typename F>
void for_each_index(std::size_t n, Mode mode, F&& f) {
#ifdef _OPENMP
  if (mode == Mode::openmp) {
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < long(n); ++i) f(std::size_t(i));
    return;
  }
#endif
  (void)mode;
  for (std::size_t i = 0; i < n; ++i) f(i);
}

}  // namespace stardyn::par

#endif
