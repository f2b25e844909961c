#pragma once

#include "gsp/ensemble.hpp"
#include "gsp/measures.hpp"

namespace gsp {

enum class SolveMethod { WssRn, CommutingSpectral, GeneralInverse, DouglasPinv, Oracle };

const char* method_name(SolveMethod m);

/// Solved filter F for K_u = F (K_u + K_w), kernel view, plus diagnostics.
struct FilterSolution {
  Grid grid;
  Eigen::MatrixXcd F;  // kernel view: (F phi)(x_j) = h sum_k F[j,k] phi(x_k)
  SolveMethod method = SolveMethod::GeneralInverse;
  double residual = 0.0;        // ||K_u - F (K_u + K_w)||_2, operator norm
  double residual_rel = 0.0;    // residual / ||K_u||_2
  double spectral_floor = 0.0;  // lambda_min(K_u + K_w), physical operator units
  bool range_ok = true;
  double norm_sup = 0.0;  // sup ||K_u f|| / ||(K_u+K_w) f|| over the non-null space

  /// F as a plain vector map u_hat = F_vec v (the kernel matrix times h).
  Eigen::MatrixXcd vector_map() const { return grid.h() * F; }
};

std::string solution_json(const FilterSolution& s);

/// WSS route: F is the circulant operator with frequency multiplier
/// rn_filter(mu_u, mu_w).
FilterSolution solve_wss(const SpectralMeasure& mu_u, const SpectralMeasure& mu_w);

/// Commuting route: diagonalizes N = K_u + i K_w (normal when the pair
/// commutes) and applies f(z) = Re z / (Re z + Im z) on Re z > tau, else 0.
/// tau < 0 selects the default 1e-12 * lambda_max(K_u + K_w).
FilterSolution solve_commuting(const CovarianceOperator& ku,
                               const CovarianceOperator& kw, double tau = -1.0);

/// General route: F = K_u (K_u + K_w)^{-1}; requires a strictly positive
/// spectral floor lambda_min(K_u+K_w) >= eps (default 1e-10 ||K_u+K_w||).
/// Throws when the floor is violated, directing the caller to solve_douglas.
FilterSolution solve_general(const CovarianceOperator& ku,
                             const CovarianceOperator& kw, double eps = -1.0);

/// Douglas route for singular K_u + K_w: F = K_u (K_u + K_w)^+ under the
/// range condition rank([K_u+K_w | K_u]) = rank(K_u+K_w) at svd_tol
/// (default 1e-10 * sigma_max). Throws when the range condition fails.
/// Verifies ran F* within ran(K_u+K_w), ker F* = ker K_u, and reports
/// norm_sup.
FilterSolution solve_douglas(const CovarianceOperator& ku,
                             const CovarianceOperator& kw, double svd_tol = -1.0);

/// ||K_u - F (K_u + K_w)||_2: the operator form of the orthogonality
/// principle (cross-covariance of the residual with the observation).
double residual_orthogonality(const FilterSolution& f, const CovarianceOperator& ku,
                              const CovarianceOperator& kw);

/// Monte Carlo orthogonality: max-entry of the empirical cross-covariance of
/// u - Fv with v over N paired realizations.
double mc_orthogonality(const FilterSolution& f, const CovarianceOperator& ku,
                        const CovarianceOperator& kw, std::int64_t N,
                        std::uint64_t seed);

/// J(phi) = ((K_u - F K_v F^H) phi, phi), the error of filter F at phi.
/// For an (approximately) exact solution the equivalent forms
/// ((I-F) K_u phi, phi) and (F K_w phi, phi) are checked to 1e-9 * scale.
double mse(const FilterSolution& f, const CovarianceOperator& ku,
           const CovarianceOperator& kw, const GridFunction& phi);

/// Brute-force LMMSE estimate: N paired draws, empirical normal equations
/// F C_v = C_uv solved by a self-contained Gaussian elimination (no shared
/// code path with the analytic solvers). Converges to F at O(N^{-1/2}).
FilterSolution lmmse_oracle(const CovarianceOperator& ku,
                            const CovarianceOperator& kw, std::int64_t N,
                            std::uint64_t seed);

/// Empirical mean-square error (1/N) sum |(u_i - F v_i, phi)|^2 and its
/// standard error, from a fresh ensemble pair.
struct McMse {
  double value = 0.0;
  double stderr_ = 0.0;
};
McMse mc_mse(const Eigen::MatrixXcd& f_vector_map, const CovarianceOperator& ku,
             const CovarianceOperator& kw, const GridFunction& phi,
             std::int64_t N, std::uint64_t seed);

double spectral_norm(const Eigen::MatrixXcd& m);

}  // namespace gsp
