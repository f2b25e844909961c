#pragma once

#include "gsp/covariance.hpp"

namespace gsp {

/// Weyl symbol on the refined phase-space grid of a d = 1 signal grid:
/// row s in [0, 2n) is the half-step position x = -L + s h/2, column m in
/// [0, n) is the frequency xi_m. The half-step x-grid makes the midpoint
/// (x + y)/2 of every node pair land exactly on a symbol row.
struct WeylSymbol {
  Grid grid;  // the underlying d = 1 signal grid
  Eigen::MatrixXcd vals;  // 2n x n

  WeylSymbol() = default;
  explicit WeylSymbol(const Grid& g)
      : grid(g), vals(Eigen::MatrixXcd::Zero(2 * g.n, g.n)) {
    require(g.dim == 1, "weyl symbol: d = 1 grids");
  }

  double x(int s) const { return -grid.L + 0.5 * grid.h() * s; }
  double xi(int m) const { return grid.xi(m); }
};

WeylSymbol sample_symbol(const Grid& g,
                         const std::function<cplx(double, double)>& a);
/// 1 (x) mult: the symbol of the Fourier multiplier operator mult[k].
WeylSymbol tensor_symbol(const Grid& g, const Eigen::VectorXd& mult);

/// Time-frequency distribution on (x, xi). x_count is n for STFT output and
/// 2n (half-step rows) for the cross-Wigner transform.
struct TfDistribution {
  Grid grid;
  int x_count = 0;
  Eigen::MatrixXcd vals;  // x_count x n
};

/// Kernel matrix of the Weyl operator of a:
/// k(x,y) = (2pi)^{-1/2} (F2^{-1} a)((x+y)/2, x-y), evaluated exactly on the
/// discrete model. Antipodal node pairs (|x-y| = L on the torus) take the
/// average over the two torus midpoints, which keeps real symbols mapping to
/// Hermitian kernels.
Eigen::MatrixXcd weyl_quantize(const WeylSymbol& a);

/// Two-sided inverse of weyl_quantize on the discrete model:
/// a = (2pi)^{1/2} F2(k o T) with the kernel refined to the half-step grid by
/// band-limited interpolation.
WeylSymbol symbol_from_operator(const Grid& g, const Eigen::MatrixXcd& k);

/// Cross-Wigner distribution W(g, f) evaluated on the refined x-grid
/// (refined = true, 2n rows) or restricted to the base grid (n rows).
/// The refined version satisfies the pairing identity
///   (a^w f, g) = (2pi)^{-1/2} ps_inner(a, cross_wigner(g, f))
/// exactly for every symbol a.
TfDistribution cross_wigner(const GridFunction& g_fn, const GridFunction& f_fn,
                            bool refined = true);

/// Phase-space inner product over the refined symbol grid,
/// (h/2) freq_step sum A conj(B).
cplx ps_inner(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B, const Grid& g);

/// V_phi u (x_j, xi_m) = (2pi)^{-1/2} (u, M_xi T_x phi).
TfDistribution stft(const GridFunction& u, const GridFunction& phi);
/// Inverse STFT; requires ||phi||_2 = 1. Exact on the discrete model.
GridFunction stft_inverse(const TfDistribution& V, const GridFunction& phi);

/// L2-normalized Gaussian window exp(-x^2/2) on the grid.
GridFunction gaussian_window(const Grid& g);

enum class MixedNorm { P2Q2, PInfQ1, PInfQInf };

/// Riemann-sum estimator of the modulation norm ||(V_Phi u) omega||_{L^{p,q}}
/// for a d = 1 grid function; omega(x, xi).
double mod_norm(const GridFunction& u, MixedNorm pq,
                const std::function<double(double, double)>& omega);

/// Same estimator for functions of two variables. Accepts an isotropic d = 2
/// GridFunction; omega(x1, x2, xi1, xi2).
double mod_norm2(const GridFunction& u, MixedNorm pq,
                 const std::function<double(double, double, double, double)>& omega);

/// Modulation-norm estimator for a Weyl symbol on its anisotropic
/// (half-step x) x (frequency) torus.
double mod_norm_symbol(const WeylSymbol& a, MixedNorm pq,
                       const std::function<double(double, double, double, double)>& omega);

namespace detail {
void dft_core2(cplx* data, int n1, int n2, int sign);  // rectangular 2-d DFT
}

}  // namespace gsp
