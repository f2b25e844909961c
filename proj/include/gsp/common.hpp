#pragma once

#include <complex>
#include <cstdint>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace gsp {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846264338327950288;

inline constexpr cplx iunit{0.0, 1.0};

/// Number of worker threads: min(GSP_THREADS, hardware), at least 1.
int max_threads();

/// Runs fn(i) for i in [0, count). Work is distributed over threads but each
/// output index is computed by exactly one invocation, so results do not
/// depend on the thread count.
void parallel_for(std::int64_t count, const std::function<void(std::int64_t)>& fn);

// splitmix64: counter-based generator used for all Monte Carlo streams.
// Realization i of a run seeded with s draws from stream(s, i), which makes
// ensembles reproducible independently of how the loop is scheduled.
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t s) : state(s) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  // uniform in (0, 1]
  double next_unit() {
    return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;
  }
  // standard normal pair, Box-Muller
  void next_normal_pair(double& a, double& b) {
    double u1 = next_unit();
    double u2 = next_unit();
    double r = std::sqrt(-2.0 * std::log(u1));
    a = r * std::cos(2.0 * pi * u2);
    b = r * std::sin(2.0 * pi * u2);
  }
  // circularly symmetric complex normal, E|z|^2 = 1, E z^2 = 0
  cplx next_cnormal() {
    double a, b;
    next_normal_pair(a, b);
    return cplx(a, b) / std::sqrt(2.0);
  }
};

inline SplitMix64 stream(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 mix(seed ^ 0x6A09E667F3BCC909ull);
  mix.state += 0x9E3779B97F4A7C15ull * (index + 1);
  mix.next();
  return mix;
}

struct GspError : std::runtime_error {
  explicit GspError(const std::string& what) : std::runtime_error(what) {}
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw GspError(what);
}

}  // namespace gsp
