#pragma once

#include <iosfwd>

#include "gsp/grid.hpp"

namespace gsp {

/// Non-negative tempered Radon measure on the frequency grid. weights[k] is
/// the mass attached to frequency node xi_k: density * freq_step plus any
/// atoms snapped to the node. The temperedness exponent s is metadata only.
struct SpectralMeasure {
  Grid grid;
  Eigen::VectorXd weights;
  double s = 0.0;

  SpectralMeasure() = default;
  explicit SpectralMeasure(const Grid& g, double s_ = 0.0)
      : grid(g), weights(Eigen::VectorXd::Zero(g.size())), s(s_) {
    require(g.dim == 1, "spectral measure: d = 1 grids");
  }

  double total_mass() const { return weights.sum(); }
  void validate() const {
    require(weights.size() == grid.size(), "measure: length mismatch");
    require((weights.array() >= 0.0).all(), "measure: negative weights");
  }
};

// built-in constructors, also reachable by name via measure_from_spec
SpectralMeasure lebesgue_measure(const Grid& g, double p);
SpectralMeasure atom_measure(const Grid& g, double xi, double mass);
SpectralMeasure band_measure(const Grid& g, double lo, double hi, double p);
SpectralMeasure power_law_measure(const Grid& g, int alpha, double p);
SpectralMeasure sobolev_measure(const Grid& g, double s);

/// Parses "lebesgue p" | "atom xi m" | "band lo hi p" | "power-law alpha p" |
/// "sobolev s", or a sum of such terms joined by " + ".
SpectralMeasure measure_from_spec(const Grid& g, const std::string& spec);
/// CSV rows "index,weight" or "frequency,weight" (frequencies snapped to nodes).
SpectralMeasure measure_from_csv(const Grid& g, std::istream& is);

SpectralMeasure add(const SpectralMeasure& a, const SpectralMeasure& b);
SpectralMeasure scale(const SpectralMeasure& a, double c);

/// kappa(x_j) = (2pi)^{-d} sum_k e^{i x_j xi_k} weights[k]; the covariance
/// kernel profile of the WSS process with spectrum mu.
GridFunction autocovariance(const SpectralMeasure& mu);

/// (sum_k |fourier(f)[k]|^2 weights[k])^{1/2}
double fl2_norm(const GridFunction& f, const SpectralMeasure& mu);

/// Frequency response of the optimal filter, f_hat = d mu_u / d(mu_u + mu_w)
/// on the support mask {weights_u > tau}, zero elsewhere.
struct WienerFilter {
  Grid grid;
  Eigen::VectorXd fhat;
  Eigen::Array<bool, Eigen::Dynamic, 1> support;
};

/// tau < 0 requests the default 1e-14 * max(weights_u + weights_w).
WienerFilter rn_filter(const SpectralMeasure& mu_u, const SpectralMeasure& mu_w,
                       double tau = -1.0);

/// J(phi) of the WSS error formula, evaluated as sum fhat |phi_hat|^2 w_w.
/// The equivalent expression sum (1 - fhat) |phi_hat|^2 w_u is checked to
/// agree within 1e-10 * scale.
double wss_mse(const WienerFilter& f, const GridFunction& phi,
               const SpectralMeasure& mu_u, const SpectralMeasure& mu_w);

/// Test-function-free error of the optimal filter for WSS stochastic
/// processes (finite measures): (2pi)^{-d} sum fhat w_w, constant over x.
/// j1 = sum (1 - fhat) w_u and j2 = sum fhat w_w are the two halves of the
/// signal-loss / noise-leakage split; they are equal for the optimal filter.
struct StationaryError {
  double value = 0.0;
  double j1 = 0.0;
  double j2 = 0.0;
};
StationaryError stationary_process_error(const WienerFilter& f,
                                         const SpectralMeasure& mu_u,
                                         const SpectralMeasure& mu_w);

}  // namespace gsp
