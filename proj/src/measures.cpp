#include "gsp/measures.hpp"

#include <algorithm>
#include <istream>
#include <sstream>

namespace gsp {

SpectralMeasure lebesgue_measure(const Grid& g, double p) {
  require(p >= 0.0, "lebesgue: p must be >= 0");
  SpectralMeasure mu(g);
  mu.weights.setConstant(p * g.freq_step());
  return mu;
}

SpectralMeasure atom_measure(const Grid& g, double xi, double mass) {
  require(mass >= 0.0, "atom: mass must be >= 0");
  SpectralMeasure mu(g, 0.0);
  // snap to the nearest frequency node
  double q = xi / g.freq_step() + g.n / 2;
  int k = int(std::llround(q));
  k = std::clamp(k, 0, g.n - 1);
  mu.weights[k] += mass;
  return mu;
}

SpectralMeasure band_measure(const Grid& g, double lo, double hi, double p) {
  require(p >= 0.0 && lo <= hi, "band: need p >= 0 and lo <= hi");
  SpectralMeasure mu(g);
  for (int k = 0; k < g.n; ++k) {
    double xi = g.xi(k);
    if (xi >= lo && xi <= hi) mu.weights[k] = p * g.freq_step();
  }
  return mu;
}

SpectralMeasure power_law_measure(const Grid& g, int alpha, double p) {
  require(p >= 0.0 && alpha >= 0, "power-law: need p >= 0 and alpha >= 0");
  SpectralMeasure mu(g, 2.0 * alpha + 2.0);
  for (int k = 0; k < g.n; ++k)
    mu.weights[k] = p * std::pow(g.xi(k), 2 * alpha) * g.freq_step();
  return mu;
}

SpectralMeasure sobolev_measure(const Grid& g, double s) {
  SpectralMeasure mu(g, std::max(0.0, 2.0 * s + 2.0));
  for (int k = 0; k < g.n; ++k) {
    double xi = g.xi(k);
    mu.weights[k] = std::pow(1.0 + xi * xi, s) * g.freq_step();
  }
  return mu;
}

SpectralMeasure add(const SpectralMeasure& a, const SpectralMeasure& b) {
  require(a.grid == b.grid, "measure add: grids differ");
  SpectralMeasure out(a.grid, std::max(a.s, b.s));
  out.weights = a.weights + b.weights;
  return out;
}

SpectralMeasure scale(const SpectralMeasure& a, double c) {
  require(c >= 0.0, "measure scale: c must be >= 0");
  SpectralMeasure out(a.grid, a.s);
  out.weights = c * a.weights;
  return out;
}

SpectralMeasure measure_from_spec(const Grid& g, const std::string& spec) {
  SpectralMeasure out(g);
  std::string term;
  std::stringstream all(spec);
  bool any = false;
  std::string token;
  std::vector<std::string> terms;
  {
    std::string cur;
    std::stringstream ss(spec);
    while (ss >> token) {
      if (token == "+") {
        terms.push_back(cur);
        cur.clear();
      } else {
        cur += (cur.empty() ? "" : " ") + token;
      }
    }
    if (!cur.empty()) terms.push_back(cur);
  }
  for (const auto& t : terms) {
    std::stringstream ss(t);
    std::string name;
    ss >> name;
    SpectralMeasure mu(g);
    if (name == "lebesgue") {
      double p;
      require(bool(ss >> p), "lebesgue needs: p");
      mu = lebesgue_measure(g, p);
    } else if (name == "atom") {
      double xi, m;
      require(bool(ss >> xi >> m), "atom needs: xi mass");
      mu = atom_measure(g, xi, m);
    } else if (name == "band") {
      double lo, hi, p;
      require(bool(ss >> lo >> hi >> p), "band needs: lo hi p");
      mu = band_measure(g, lo, hi, p);
    } else if (name == "power-law") {
      int alpha;
      double p;
      require(bool(ss >> alpha >> p), "power-law needs: alpha p");
      mu = power_law_measure(g, alpha, p);
    } else if (name == "sobolev") {
      double s;
      require(bool(ss >> s), "sobolev needs: s");
      mu = sobolev_measure(g, s);
    } else {
      throw GspError("unknown measure constructor: " + name);
    }
    out = any ? add(out, mu) : mu;
    any = true;
  }
  require(any, "empty measure spec");
  return out;
}

SpectralMeasure measure_from_csv(const Grid& g, std::istream& is) {
  SpectralMeasure mu(g);
  std::string line;
  // header "index,weight" or "freq,weight" selects the first-column meaning;
  // without a header, integral values in [0,n) are read as node indices
  int mode = 0;  // 0 auto, 1 index, 2 frequency
  bool first = true;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (first && std::isalpha(static_cast<unsigned char>(line[0]))) {
      if (line.find("freq") != std::string::npos) mode = 2;
      if (line.find("index") != std::string::npos) mode = 1;
      first = false;
      continue;
    }
    first = false;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::stringstream ss(line);
    double a, w;
    if (!(ss >> a >> w)) continue;
    require(w >= 0.0, "measure csv: negative weight");
    bool as_index = mode == 1 ||
                    (mode == 0 && std::abs(a - std::round(a)) < 1e-12 &&
                     a >= 0 && a < g.n);
    int k = as_index
                ? int(std::llround(a))
                : std::clamp(int(std::llround(a / g.freq_step() + g.n / 2)), 0,
                             g.n - 1);
    require(k >= 0 && k < g.n, "measure csv: node index out of range");
    mu.weights[k] += w;
  }
  return mu;
}

GridFunction autocovariance(const SpectralMeasure& mu) {
  mu.validate();
  const Grid& g = mu.grid;
  // (2pi)^{-d} sum_k e^{i x xi_k} w_k = (2pi)^{-d/2} inverse_fourier(w)
  GridFunction w(g);
  for (int k = 0; k < g.n; ++k) w.v[k] = mu.weights[k] / g.freq_step();
  GridFunction kappa = inverse_fourier(w);
  kappa.v *= std::pow(2.0 * pi, -0.5 * g.dim);
  return kappa;
}

double fl2_norm(const GridFunction& f, const SpectralMeasure& mu) {
  require(f.grid == mu.grid, "fl2_norm: grids differ");
  GridFunction F = fourier(f);
  double acc = 0.0;
  for (int k = 0; k < mu.grid.n; ++k)
    acc += std::norm(F.v[k]) * mu.weights[k];
  return std::sqrt(acc);
}

WienerFilter rn_filter(const SpectralMeasure& mu_u, const SpectralMeasure& mu_w,
                       double tau) {
  require(mu_u.grid == mu_w.grid, "rn_filter: grids differ");
  mu_u.validate();
  mu_w.validate();
  const Grid& g = mu_u.grid;
  if (tau < 0.0) {
    double mx = (mu_u.weights + mu_w.weights).maxCoeff();
    tau = 1e-14 * mx;
  }
  WienerFilter f;
  f.grid = g;
  f.fhat = Eigen::VectorXd::Zero(g.n);
  f.support.setConstant(g.n, false);
  for (int k = 0; k < g.n; ++k) {
    double wu = mu_u.weights[k], ww = mu_w.weights[k];
    if (wu > tau) {
      f.fhat[k] = wu / (wu + ww);
      f.support[k] = true;
    }
  }
  return f;
}

double wss_mse(const WienerFilter& f, const GridFunction& phi,
               const SpectralMeasure& mu_u, const SpectralMeasure& mu_w) {
  require(f.grid == phi.grid && f.grid == mu_u.grid && f.grid == mu_w.grid,
          "wss_mse: grids differ");
  GridFunction F = fourier(phi);
  double j_w = 0.0, j_u = 0.0, scale = 0.0;
  for (int k = 0; k < f.grid.n; ++k) {
    double p2 = std::norm(F.v[k]);
    j_w += f.fhat[k] * p2 * mu_w.weights[k];
    j_u += (1.0 - f.fhat[k]) * p2 * mu_u.weights[k];
    scale += p2 * (mu_u.weights[k] + mu_w.weights[k]);
  }
  require(std::abs(j_w - j_u) <= 1e-10 * std::max(1.0, scale),
          "wss_mse: the two error expressions disagree");
  return j_w;
}

StationaryError stationary_process_error(const WienerFilter& f,
                                         const SpectralMeasure& mu_u,
                                         const SpectralMeasure& mu_w) {
  require(f.grid == mu_u.grid && f.grid == mu_w.grid,
          "stationary_process_error: grids differ");
  StationaryError e;
  double scale = mu_u.total_mass() + mu_w.total_mass();
  for (int k = 0; k < f.grid.n; ++k) {
    e.j1 += (1.0 - f.fhat[k]) * mu_u.weights[k];
    e.j2 += f.fhat[k] * mu_w.weights[k];
  }
  require(std::abs(e.j1 - e.j2) <= 1e-10 * std::max(1.0, scale),
          "stationary_process_error: split terms disagree");
  e.value = std::pow(2.0 * pi, -double(f.grid.dim)) * e.j2;
  return e;
}

}  // namespace gsp
