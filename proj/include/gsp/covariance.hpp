#pragma once

#include <Eigen/Dense>

#include "gsp/measures.hpp"

namespace gsp {

/// Hermitian PSD operator on grid functions, stored in kernel view: the
/// matrix holds kernel values k(x_j, x_k) and the action is
/// (K phi)(x_j) = h^d sum_k m[j,k] phi(x_k).
struct CovarianceOperator {
  Grid grid;
  Eigen::MatrixXcd m;
  bool wss = false;
  bool psd_checked = false;

  CovarianceOperator() = default;
  CovarianceOperator(const Grid& g, Eigen::MatrixXcd mat, bool wss_ = false)
      : grid(g), m(std::move(mat)), wss(wss_) {
    require(m.rows() == grid.size() && m.cols() == grid.size(),
            "covariance: shape mismatch");
  }

  GridFunction apply(const GridFunction& phi) const {
    require(phi.grid == grid, "covariance apply: grids differ");
    return GridFunction(grid, grid.cell() * (m * phi.v));
  }

  double scale() const { return m.cwiseAbs().maxCoeff(); }
};

/// (K phi)(x) = p phi(x); kernel view is (p/h) * Id.
CovarianceOperator white_noise_cov(const Grid& g, double p);
/// Spectral multiplier p xi^{2 alpha}: covariance of the alpha-th derivative
/// of white noise with power p.
CovarianceOperator derivative_noise_cov(const Grid& g, double p, int alpha);
/// Circulant operator with frequency multiplier weights / freq_step.
CovarianceOperator wss_cov(const SpectralMeasure& mu);
/// Circulant operator acting as the Fourier multiplier mult[k] (kernel view).
CovarianceOperator multiplier_operator(const Grid& g, const Eigen::VectorXd& mult);

/// Composition K1 (K2 phi) in kernel view: h * m1 * m2.
Eigen::MatrixXcd compose(const Grid& g, const Eigen::MatrixXcd& m1,
                         const Eigen::MatrixXcd& m2);

double hermiticity_defect(const Eigen::MatrixXcd& m);
/// Smallest eigenvalue over the spectral norm; checks lambda_min >= -tol.
void check_psd(CovarianceOperator& c, double tol = 1e-10);

/// max |m[j,k] - m[j+1,k+1]| (cyclic): zero for translation invariant kernels.
double circulant_defect(const Eigen::MatrixXcd& m);

}  // namespace gsp
