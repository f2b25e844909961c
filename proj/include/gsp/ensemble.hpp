#pragma once

#include "gsp/covariance.hpp"

namespace gsp {

/// N realizations of a zero-mean circularly symmetric Gaussian ensemble with
/// prescribed covariance; samples(i, j) is realization i at node x_j, so that
/// E[u u^H] equals the kernel-view covariance matrix and E[u u^T] = 0.
struct GspEnsemble {
  Grid grid;
  Eigen::MatrixXcd samples;  // N x n
  std::uint64_t seed = 0;

  std::int64_t count() const { return samples.rows(); }
};

/// Draws N realizations. Realization i derives its draws from stream(seed, i),
/// so the result is a pure function of (C, N, seed) and does not depend on
/// the degree of parallelism. Coloring uses the eigendecomposition of the
/// kernel matrix with eigenvalues in [-1e-10 ||C||, 0) clipped to zero;
/// exactly circulant kernels take an equivalent Fourier-basis factorization.
GspEnsemble sample(const CovarianceOperator& c, std::int64_t N, std::uint64_t seed);

/// Sample-wise pairing (u_i, phi) = h sum_j u_ij conj(phi_j).
Eigen::VectorXcd pair(const GspEnsemble& ens, const GridFunction& phi);

CovarianceOperator empirical_covariance(const GspEnsemble& ens);
/// (1/N) sum_i u_i conj(w_i)^T for two ensembles of equal size.
Eigen::MatrixXcd empirical_cross_covariance(const GspEnsemble& u,
                                            const GspEnsemble& w);
/// (1/N) sum_i u_i u_i^T; vanishes for circularly symmetric ensembles.
Eigen::MatrixXcd empirical_pseudo_covariance(const GspEnsemble& ens);

}  // namespace gsp
