#pragma once

#include <Eigen/Core>
#include <iosfwd>
#include <string>

#include "gsp/common.hpp"

namespace gsp {

/// Periodic discretization of R^d, d = 1 or 2 (d = 2 with the same n and L
/// per axis). Positions x_j = -L + j h with h = 2L/n; frequencies are stored
/// in centered order, xi_k = (k - n/2) * (pi/L) for storage index k in [0,n).
/// h * freq_step * n = 2 pi, which makes the discrete Parseval identity exact.
struct Grid {
  int n = 0;
  double L = 0.0;
  int dim = 1;

  Grid() = default;
  Grid(int n_, double L_, int dim_ = 1) : n(n_), L(L_), dim(dim_) {
    require(n > 0 && n % 2 == 0, "grid: n must be even and positive");
    require(L > 0.0, "grid: L must be positive");
    require(dim == 1 || dim == 2, "grid: dim must be 1 or 2");
  }

  double h() const { return 2.0 * L / n; }
  double freq_step() const { return pi / L; }
  double x(int j) const { return -L + h() * j; }
  double xi(int k) const { return (k - n / 2) * freq_step(); }
  std::int64_t size() const { return dim == 1 ? n : std::int64_t(n) * n; }
  double cell() const { return dim == 1 ? h() : h() * h(); }
  double freq_cell() const {
    return dim == 1 ? freq_step() : freq_step() * freq_step();
  }

  bool operator==(const Grid& o) const {
    return n == o.n && L == o.L && dim == o.dim;
  }
};

struct GridFunction {
  Grid grid;
  Eigen::VectorXcd v;

  GridFunction() = default;
  explicit GridFunction(const Grid& g) : grid(g), v(Eigen::VectorXcd::Zero(g.size())) {}
  GridFunction(const Grid& g, Eigen::VectorXcd vals) : grid(g), v(std::move(vals)) {
    require(v.size() == g.size(), "grid function: length mismatch");
  }

  // dim-2 flattening is row-major: index = a*n + b for coordinates (x(a), x(b))
  cplx& at(int a, int b) { return v[std::int64_t(a) * grid.n + b]; }
  cplx at(int a, int b) const { return v[std::int64_t(a) * grid.n + b]; }
};

/// Samples a scalar function of one variable (d = 1) on the grid nodes.
GridFunction sample_function(const Grid& g, const std::function<cplx(double)>& f);
/// Samples f(x0, x1) on a d = 2 grid.
GridFunction sample_function2(const Grid& g,
                              const std::function<cplx(double, double)>& f);

/// F(xi_k) = (2pi)^{-d/2} h^d sum_j f(x_j) e^{-i<x_j, xi_k>}.
/// Unitary: ||fourier(f)||_2 = ||f||_2 exactly in the discrete model.
GridFunction fourier(const GridFunction& f);
GridFunction inverse_fourier(const GridFunction& F);

/// Circular convolution; satisfies fourier(f*g) = (2pi)^{d/2} fourier(f) fourier(g).
GridFunction convolve(const GridFunction& f, const GridFunction& g);

/// Circular shift by a grid-aligned offset (x0 must be a multiple of h).
GridFunction translate(const GridFunction& f, double x0);
GridFunction translate2(const GridFunction& f, double x0, double x1);
/// Pointwise phase e^{i <x, xi0>}; xi0 must be a multiple of the frequency step.
GridFunction modulate(const GridFunction& f, double xi0);
GridFunction modulate2(const GridFunction& f, double xi0, double xi1);

/// L2 pairing h^d sum f conj(g); conjugate linear in the second argument.
cplx inner(const GridFunction& f, const GridFunction& g);
double norm2(const GridFunction& f);

/// Largest |f| over nodes within 2h of the torus edge, relative to max |f|.
/// Functions placed on the torus are expected to keep this below ~1e-12.
double boundary_mass(const GridFunction& f);

int aligned_offset(const Grid& g, double x0);       // x0 / h, must be integral
int aligned_freq_index(const Grid& g, double xi0);  // xi0 / freq_step

// serialization: CSV (coordinates, re, im) and a little-endian binary dump
// (int64 dim, int64 n, float64 L, interleaved re/im float64 payload).
void write_csv(const GridFunction& f, std::ostream& os);
void write_binary(const GridFunction& f, std::ostream& os);
GridFunction read_binary(std::istream& is);

namespace detail {
// Unnormalized DFT sum_j f_j e^{-+ 2 pi i jk/n} along each axis, in place.
// sign = -1 forward, +1 backward. Used by the grid transforms and by the
// batched Monte Carlo paths; FFTW plans are cached and execution is
// thread-safe.
void dft_core(cplx* data, int n, int dim, int sign);
}  // namespace detail

}  // namespace gsp
