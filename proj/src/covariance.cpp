#include "gsp/covariance.hpp"

#include <Eigen/Eigenvalues>

namespace gsp {

CovarianceOperator multiplier_operator(const Grid& g, const Eigen::VectorXd& mult) {
  require(g.dim == 1, "multiplier_operator: d = 1 grids");
  require(mult.size() == g.n, "multiplier_operator: length mismatch");
  // kernel profile kappa(x) = (2pi)^{-1} dxi sum_k mult[k] e^{i x xi_k}
  GridFunction w(g);
  for (int k = 0; k < g.n; ++k) w.v[k] = mult[k];
  GridFunction kappa = inverse_fourier(w);
  kappa.v *= std::pow(2.0 * pi, -0.5);
  Eigen::MatrixXcd m(g.n, g.n);
  for (int j = 0; j < g.n; ++j)
    for (int k = 0; k < g.n; ++k) m(j, k) = kappa.v[((j - k) % g.n + g.n) % g.n];
  return CovarianceOperator(g, std::move(m), true);
}

CovarianceOperator white_noise_cov(const Grid& g, double p) {
  require(p > 0.0, "white_noise_cov: p must be > 0");
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(g.size(), g.size()) * (p / g.h());
  CovarianceOperator c(g, std::move(m), true);
  c.psd_checked = true;
  return c;
}

CovarianceOperator derivative_noise_cov(const Grid& g, double p, int alpha) {
  require(p > 0.0, "derivative_noise_cov: p must be > 0");
  require(alpha >= 0, "derivative_noise_cov: alpha must be >= 0");
  Eigen::VectorXd mult(g.n);
  for (int k = 0; k < g.n; ++k) mult[k] = p * std::pow(g.xi(k), 2 * alpha);
  return multiplier_operator(g, mult);
}

CovarianceOperator wss_cov(const SpectralMeasure& mu) {
  mu.validate();
  const Grid& g = mu.grid;
  Eigen::VectorXd mult = mu.weights / g.freq_step();
  return multiplier_operator(g, mult);
}

Eigen::MatrixXcd compose(const Grid& g, const Eigen::MatrixXcd& m1,
                         const Eigen::MatrixXcd& m2) {
  return g.cell() * (m1 * m2);
}

double hermiticity_defect(const Eigen::MatrixXcd& m) {
  double scale = m.cwiseAbs().maxCoeff();
  double d = (m - m.adjoint()).cwiseAbs().maxCoeff();
  return scale > 0 ? d / scale : 0.0;
}

void check_psd(CovarianceOperator& c, double tol) {
  require(hermiticity_defect(c.m) <= 1e-12, "covariance: not Hermitian");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(c.m, Eigen::EigenvaluesOnly);
  double lo = es.eigenvalues().minCoeff();
  double hi = std::max(std::abs(es.eigenvalues().maxCoeff()), std::abs(lo));
  require(lo >= -tol * std::max(hi, 1e-300), "covariance: not PSD");
  c.psd_checked = true;
}

double circulant_defect(const Eigen::MatrixXcd& m) {
  const int n = int(m.rows());
  double d = 0.0;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      d = std::max(d, std::abs(m(j, k) - m((j + 1) % n, (k + 1) % n)));
  double scale = m.cwiseAbs().maxCoeff();
  return scale > 0 ? d / scale : 0.0;
}

}  // namespace gsp
