#include "gsp/ensemble.hpp"

#include <Eigen/Eigenvalues>

namespace gsp {

namespace {

Eigen::VectorXd circulant_eigenvalues(const CovarianceOperator& c) {
  const int n = c.grid.n;
  // lambda_m = sum_delta kappa(delta h) e^{-i delta h xi_m}, kappa from column 0
  std::vector<cplx> row(n);
  for (int d = 0; d < n; ++d) row[d] = c.m(d, 0);
  detail::dft_core(row.data(), n, 1, -1);
  Eigen::VectorXd lam(n);
  for (int m = 0; m < n; ++m) {
    int k = m - n / 2;
    lam[m] = row[((k % n) + n) % n].real();
  }
  return lam;
}

void clip_spectrum(Eigen::VectorXd& lam, double scale) {
  for (int i = 0; i < lam.size(); ++i) {
    if (lam[i] < 0.0) {
      require(lam[i] >= -1e-10 * std::max(scale, 1e-300),
              "sample: covariance is not PSD");
      lam[i] = 0.0;
    }
  }
}

}  // namespace

GspEnsemble sample(const CovarianceOperator& c, std::int64_t N, std::uint64_t seed) {
  require(c.grid.dim == 1, "sample: d = 1 grids");
  require(N > 0, "sample: N must be positive");
  require(hermiticity_defect(c.m) <= 1e-12, "sample: covariance not Hermitian");
  const int n = c.grid.n;
  GspEnsemble ens;
  ens.grid = c.grid;
  ens.seed = seed;
  ens.samples.resize(N, n);

  if (circulant_defect(c.m) <= 1e-13) {
    Eigen::VectorXd lam = circulant_eigenvalues(c);
    clip_spectrum(lam, lam.cwiseAbs().maxCoeff());
    Eigen::VectorXd amp = lam.cwiseSqrt() / std::sqrt(double(n));
    parallel_for(N, [&](std::int64_t i) {
      SplitMix64 rng = stream(seed, std::uint64_t(i));
      std::vector<cplx> coef(n, cplx(0, 0));
      for (int m = 0; m < n; ++m) {
        cplx z = rng.next_cnormal();
        int k = m - n / 2;
        double sgn = (k % 2 == 0) ? 1.0 : -1.0;
        coef[((k % n) + n) % n] = amp[m] * z * sgn;
      }
      detail::dft_core(coef.data(), n, 1, +1);
      for (int j = 0; j < n; ++j) ens.samples(i, j) = coef[j];
    });
    return ens;
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(c.m);
  Eigen::VectorXd lam = es.eigenvalues();
  clip_spectrum(lam, lam.cwiseAbs().maxCoeff());
  Eigen::MatrixXcd B = es.eigenvectors() * lam.cwiseSqrt().asDiagonal();
  parallel_for(N, [&](std::int64_t i) {
    SplitMix64 rng = stream(seed, std::uint64_t(i));
    Eigen::VectorXcd z(n);
    for (int m = 0; m < n; ++m) z[m] = rng.next_cnormal();
    ens.samples.row(i) = (B * z).transpose();
  });
  return ens;
}

Eigen::VectorXcd pair(const GspEnsemble& ens, const GridFunction& phi) {
  require(phi.grid == ens.grid, "pair: grids differ");
  return ens.grid.h() * (ens.samples * phi.v.conjugate());
}

CovarianceOperator empirical_covariance(const GspEnsemble& ens) {
  const double N = double(ens.count());
  Eigen::MatrixXcd m =
      (ens.samples.transpose() * ens.samples.conjugate()) / N;
  m = cplx(0.5, 0.0) * (m + m.adjoint()).eval();
  CovarianceOperator c(ens.grid, std::move(m));
  return c;
}

Eigen::MatrixXcd empirical_cross_covariance(const GspEnsemble& u,
                                            const GspEnsemble& w) {
  require(u.count() == w.count(), "cross covariance: sizes differ");
  return (u.samples.transpose() * w.samples.conjugate()) / double(u.count());
}

Eigen::MatrixXcd empirical_pseudo_covariance(const GspEnsemble& ens) {
  return (ens.samples.transpose() * ens.samples) / double(ens.count());
}

}  // namespace gsp
